#include "qlo/growth.hpp"

#include <algorithm>

#include "qlo/errors.hpp"

namespace qlo {
namespace {

void extend_cliques(const IndependenceGraph& g, LetterSet clique, LetterSet candidates,
                    std::vector<LetterSet>& out) {
  for_each_letter(candidates, [&](Generator v) {
    const LetterSet grown = clique | letter_bit(v);
    out.push_back(grown);
    const LetterSet higher = ~(letter_bit(v) | (letter_bit(v) - 1));
    extend_cliques(g, grown, candidates & g.neighbors(v) & higher, out);
  });
}

Trace with_block(const Trace& t, LetterSet block) {
  Trace out = t;
  for_each_letter(block, [&](Generator s) { out.push_back(s); });
  return out;
}

void dfs(const CliqueAutomaton& a, int last, const Trace& t, std::int64_t limit,
         const std::function<void(const Trace&)>& visit) {
  visit(t);
  for (int next : a.next[static_cast<std::size_t>(last)]) {
    const auto i = static_cast<std::size_t>(next);
    if (t.weight_units() + a.units[i] > limit) continue;
    dfs(a, next, with_block(t, a.cliques[i]), limit, visit);
  }
}

void check_cutoff(const Rational& cutoff) {
  if (sgn(cutoff) < 0) throw ValidationError("cutoff must be nonnegative");
}

}  // namespace

BigInt GrowthTable::total() const {
  BigInt sum = 0;
  for (const auto& row : rows) sum += row.count;
  return sum;
}

std::vector<LetterSet> nonempty_cliques(const IndependenceGraph& g) {
  std::vector<LetterSet> out;
  extend_cliques(g, 0, g.all_letters(), out);
  std::sort(out.begin(), out.end());
  return out;
}

CliqueAutomaton clique_automaton(const IndependenceGraph& g) {
  CliqueAutomaton a;
  a.cliques = nonempty_cliques(g);
  const std::size_t n = a.cliques.size();
  a.units.resize(n);
  a.next.resize(n);
  a.prev.resize(n);
  for (std::size_t i = 0; i < n; ++i) a.units[i] = g.set_weight_units(a.cliques[i]);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      bool follows = true;
      for_each_letter(a.cliques[j], [&](Generator s) {
        if ((a.cliques[i] & g.dependents(s)) == 0) follows = false;
      });
      if (follows) {
        a.next[i].push_back(static_cast<int>(j));
        a.prev[j].push_back(static_cast<int>(i));
      }
    }
  }
  return a;
}

void for_each_up_to(const GraphPtr& g, const Rational& cutoff,
                    const std::function<void(const Trace&)>& visit) {
  check_cutoff(cutoff);
  const auto a = clique_automaton(*g);
  const std::int64_t limit = cutoff_units(cutoff, g->scale());
  const Trace e(g);
  visit(e);
  for (std::size_t i = 0; i < a.cliques.size(); ++i) {
    if (a.units[i] > limit) continue;
    dfs(a, static_cast<int>(i), with_block(e, a.cliques[i]), limit, visit);
  }
}

std::vector<Trace> enumerate_up_to(const GraphPtr& g, const Rational& cutoff) {
  check_cutoff(cutoff);
  const auto a = clique_automaton(*g);
  const std::int64_t limit = cutoff_units(cutoff, g->scale());
  const Trace e(g);
  const auto n = static_cast<std::ptrdiff_t>(a.cliques.size());
  // One bucket per first block, merged in clique order.
  std::vector<std::vector<Trace>> buckets(a.cliques.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (a.units[idx] > limit) continue;
    auto& bucket = buckets[idx];
    dfs(a, static_cast<int>(i), with_block(e, a.cliques[idx]), limit,
        [&bucket](const Trace& t) { bucket.push_back(t); });
  }
  std::vector<Trace> out{e};
  for (auto& b : buckets) std::move(b.begin(), b.end(), std::back_inserter(out));
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<BigInt> growth_counts(const IndependenceGraph& g, const Rational& cutoff) {
  check_cutoff(cutoff);
  const auto a = clique_automaton(g);
  const std::int64_t limit = cutoff_units(cutoff, g.scale());
  const std::size_t levels = static_cast<std::size_t>(limit) + 1;
  const auto n = static_cast<std::ptrdiff_t>(a.cliques.size());
  // by_last[k][c]: traces of weight k/scale whose last Foata block is clique c.
  std::vector<std::vector<BigInt>> by_last(levels, std::vector<BigInt>(a.cliques.size()));
  std::vector<BigInt> totals(levels);
  totals[0] = 1;
  for (std::size_t k = 1; k < levels; ++k) {
    const auto level = static_cast<std::int64_t>(k);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < n; ++c) {
      const auto ci = static_cast<std::size_t>(c);
      const std::int64_t u = a.units[ci];
      if (u > level) continue;
      BigInt value = (u == level) ? 1 : 0;
      if (u < level) {
        const auto& source = by_last[k - static_cast<std::size_t>(u)];
        for (int p : a.prev[ci]) value += source[static_cast<std::size_t>(p)];
      }
      by_last[k][ci] = std::move(value);
    }
    for (const auto& v : by_last[k]) totals[k] += v;
  }
  return totals;
}

GrowthTable table_from_counts(const IndependenceGraph& g, const std::vector<BigInt>& counts,
                              const Rational& cutoff) {
  GrowthTable table;
  table.cutoff = cutoff;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) continue;
    table.rows.push_back({g.units_to_rational(static_cast<std::int64_t>(k)), counts[k]});
  }
  return table;
}

GrowthTable growth_table(const IndependenceGraph& g, const Rational& cutoff) {
  return table_from_counts(g, growth_counts(g, cutoff), cutoff);
}

WeightedPolynomial clique_polynomial(const IndependenceGraph& g) {
  WeightedPolynomial c = WeightedPolynomial::one(g.scale());
  for (LetterSet clique : nonempty_cliques(g)) {
    c.add_term(g.set_weight_units(clique), popcount(clique) % 2 == 0 ? 1 : -1);
  }
  return c;
}

InversionReport verify_inversion(const IndependenceGraph& g, const Rational& cutoff) {
  const auto series = invert_series(clique_polynomial(g), cutoff);
  const auto counts = growth_counts(g, cutoff);
  InversionReport report;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const auto units = static_cast<std::int64_t>(k);
    BigInt coeff = series.coefficient(units);
    if (coeff != counts[k]) {
      report.match = false;
      report.first_mismatch = InversionMismatch{g.units_to_rational(units), coeff, counts[k]};
      break;
    }
  }
  return report;
}

bool is_lattice_ordered(const IndependenceGraph& g) { return g.is_complete(); }

namespace serial {

std::vector<Trace> enumerate_up_to(const GraphPtr& g, const Rational& cutoff) {
  std::vector<Trace> out;
  for_each_up_to(g, cutoff, [&out](const Trace& t) { out.push_back(t); });
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<BigInt> growth_counts(const IndependenceGraph& g, const Rational& cutoff) {
  check_cutoff(cutoff);
  const auto a = clique_automaton(g);
  const std::int64_t limit = cutoff_units(cutoff, g.scale());
  const std::size_t levels = static_cast<std::size_t>(limit) + 1;
  std::vector<std::vector<BigInt>> by_last(levels, std::vector<BigInt>(a.cliques.size()));
  for (std::size_t c = 0; c < a.cliques.size(); ++c) {
    if (a.units[c] <= limit) by_last[static_cast<std::size_t>(a.units[c])][c] += 1;
  }
  // Push each level's counts forward along the successor relation.
  std::vector<BigInt> totals(levels);
  totals[0] = 1;
  for (std::size_t k = 1; k < levels; ++k) {
    for (std::size_t c = 0; c < a.cliques.size(); ++c) {
      const BigInt& here = by_last[k][c];
      if (here == 0) continue;
      totals[k] += here;
      for (int nxt : a.next[c]) {
        const std::size_t target = k + static_cast<std::size_t>(a.units[static_cast<std::size_t>(nxt)]);
        if (target < levels) by_last[target][static_cast<std::size_t>(nxt)] += here;
      }
    }
  }
  return totals;
}

}  // namespace serial
}  // namespace qlo

#include "qlo/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <set>

#include "qlo/errors.hpp"

namespace qlo {

double log_bigint(const BigInt& z) {
  long exp = 0;
  double mantissa = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exp) * std::log(2.0);
}

GraphPtr IndependenceGraph::build(std::vector<std::string> names, std::vector<Rational> weights,
                                  const std::vector<std::pair<std::string, std::string>>& edges) {
  if (names.empty()) throw ValidationError("generator list is empty");
  if (names.size() > kMaxGenerators) {
    throw ValidationError("at most 64 generators are supported, got " + std::to_string(names.size()));
  }
  if (weights.size() != names.size()) {
    throw ValidationError("expected one weight per generator");
  }
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw ValidationError("generator name is empty");
    if (!seen.insert(n).second) throw ValidationError("duplicate generator '" + n + "'");
  }

  IndependenceGraph g;
  g.names_ = std::move(names);
  g.adjacency_.assign(g.names_.size(), 0);

  BigInt scale = 1;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    weights[i].canonicalize();
    if (sgn(weights[i]) <= 0) {
      throw ValidationError("nonpositive weight for generator '" + g.names_[i] + "'");
    }
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), weights[i].get_den().get_mpz_t());
  }
  if (!scale.fits_slong_p()) throw ValidationError("weight denominators too large");
  g.scale_ = scale.get_si();
  for (const auto& w : weights) {
    BigInt units = w.get_num() * (scale / w.get_den());
    // Keep lattice arithmetic well clear of int64 overflow.
    if (units > BigInt(1) << 40) throw ValidationError("weight too large on the common lattice");
    g.units_.push_back(units.get_si());
  }
  g.weights_ = std::move(weights);

  for (const auto& [a, b] : edges) {
    auto ia = g.find(a);
    auto ib = g.find(b);
    if (!ia) throw ValidationError("unknown edge endpoint '" + a + "'");
    if (!ib) throw ValidationError("unknown edge endpoint '" + b + "'");
    if (*ia == *ib) throw ValidationError("self-loop on '" + a + "'");
    if (g.commute(*ia, *ib)) throw ValidationError("duplicate edge {" + a + "," + b + "}");
    g.adjacency_[static_cast<std::size_t>(*ia)] |= letter_bit(*ib);
    g.adjacency_[static_cast<std::size_t>(*ib)] |= letter_bit(*ia);
  }
  return std::shared_ptr<const IndependenceGraph>(new IndependenceGraph(std::move(g)));
}

std::optional<Generator> IndependenceGraph::find(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<Generator>(it - names_.begin());
}

std::int64_t IndependenceGraph::min_weight_units() const {
  return *std::min_element(units_.begin(), units_.end());
}

std::int64_t IndependenceGraph::set_weight_units(LetterSet set) const {
  std::int64_t total = 0;
  for_each_letter(set, [&](Generator s) { total += weight_units(s); });
  return total;
}

bool IndependenceGraph::is_clique(LetterSet set) const {
  bool ok = true;
  for_each_letter(set, [&](Generator s) {
    if ((set & ~letter_bit(s) & ~neighbors(s)) != 0) ok = false;
  });
  return ok;
}

bool IndependenceGraph::is_complete() const { return is_clique(all_letters()); }

std::vector<std::pair<Generator, Generator>> IndependenceGraph::edges() const {
  std::vector<std::pair<Generator, Generator>> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) {
      if (commute(static_cast<Generator>(i), static_cast<Generator>(j))) {
        out.emplace_back(static_cast<Generator>(i), static_cast<Generator>(j));
      }
    }
  }
  return out;
}

GraphPtr build_graph(std::vector<std::string> generators, std::vector<Rational> weights,
                     const std::vector<std::pair<std::string, std::string>>& edges) {
  return IndependenceGraph::build(std::move(generators), std::move(weights), edges);
}

std::string default_generator_name(std::size_t index) {
  if (index < 26) return std::string(1, static_cast<char>('a' + index));
  return "s" + std::to_string(index);
}

namespace presets {
namespace {

GraphPtr unit_graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(default_generator_name(i));
  std::vector<std::pair<std::string, std::string>> named;
  for (auto [i, j] : edges) named.emplace_back(names[i], names[j]);
  return build_graph(names, std::vector<Rational>(n, Rational(1)), named);
}

std::size_t parse_count(std::string_view text, std::string_view spec) {
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc() || ptr != text.data() + text.size() || n == 0) {
    throw ValidationError("invalid preset size in '" + std::string(spec) + "'");
  }
  return n;
}

}  // namespace

GraphPtr free_monoid(std::size_t n) { return unit_graph(n, {}); }

GraphPtr free_abelian(std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) edges.emplace_back(i, j);
  return unit_graph(k, edges);
}

GraphPtr path(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return unit_graph(n, edges);
}

GraphPtr cycle(std::size_t n) {
  if (n < 3) throw ValidationError("cycle preset needs at least 3 vertices");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(0, n - 1);
  return unit_graph(n, edges);
}

GraphPtr from_pair_mask(std::size_t n, std::uint64_t pair_mask) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t bit = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++bit)
      if ((pair_mask >> bit) & 1U) edges.emplace_back(i, j);
  return unit_graph(n, edges);
}

GraphPtr parse(std::string_view spec) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ValidationError("preset must look like kind:n, got '" + std::string(spec) + "'");
  }
  auto kind = spec.substr(0, colon);
  auto n = parse_count(spec.substr(colon + 1), spec);
  if (kind == "free") return free_monoid(n);
  if (kind == "abelian") return free_abelian(n);
  if (kind == "path") return path(n);
  if (kind == "cycle") return cycle(n);
  throw ValidationError("unknown preset kind '" + std::string(kind) + "'");
}

}  // namespace presets
}  // namespace qlo

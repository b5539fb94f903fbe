#include "qlo/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "qlo/errors.hpp"

namespace qlo {
namespace {

void record(CheckOutcome& out, bool ok, const std::string& what) {
  ++out.checked;
  if (ok) return;
  if (out.failures++ == 0) out.first_failure = what;
}

CheckOutcome merge(const std::vector<CheckOutcome>& parts) {
  CheckOutcome total;
  for (const auto& p : parts) {
    total.checked += p.checked;
    if (p.failures > 0 && total.failures == 0) total.first_failure = p.first_failure;
    total.failures += p.failures;
  }
  return total;
}

std::string quad(const Trace& a, const Trace& b, const Trace& c, const Trace& d) {
  return to_string(a) + " " + to_string(b) + " " + to_string(c) + " " + to_string(d);
}

void kms_row(const std::vector<Trace>& traces, std::size_t i, CheckOutcome& out) {
  const Trace& p1 = traces[i];
  for (const auto& q1 : traces)
    for (const auto& p2 : traces)
      for (const auto& q2 : traces) record(out, kms_identity_check(p1, q1, p2, q2).holds, quad(p1, q1, p2, q2));
}

void nica_row(const TruncatedRep& rep, const std::vector<Trace>& traces,
              const std::vector<std::vector<std::uint8_t>>& masks, std::size_t i, CheckOutcome& out) {
  for (std::size_t j = 0; j < traces.size(); ++j) {
    const auto jn = join(traces[i], traces[j]);
    std::vector<std::uint8_t> rhs(rep.dim(), 0);
    if (jn.is_finite()) rhs = divisibility_mask(rep, jn.value());
    bool ok = true;
    for (std::size_t x = 0; x < rep.dim() && ok; ++x) ok = (masks[i][x] & masks[j][x]) == rhs[x];
    record(out, ok, to_string(traces[i]) + " " + to_string(traces[j]));
  }
}

InvariantResult result(std::string name, bool passed, std::string detail) {
  return InvariantResult{std::move(name), passed, std::move(detail)};
}

InvariantResult from_outcome(std::string name, const CheckOutcome& o) {
  std::string detail = std::to_string(o.checked) + " cases";
  if (!o.ok()) detail += ", " + std::to_string(o.failures) + " failures, first: " + o.first_failure;
  return result(std::move(name), o.ok(), detail);
}

}  // namespace

CheckOutcome kms_exhaustive(const std::vector<Trace>& traces) {
  std::vector<CheckOutcome> parts(traces.size());
  const auto n = static_cast<std::ptrdiff_t>(traces.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) kms_row(traces, static_cast<std::size_t>(i), parts[static_cast<std::size_t>(i)]);
  return merge(parts);
}

CheckOutcome kms_sampled(const GraphPtr& g, std::uint64_t seed, std::size_t samples, std::size_t max_length) {
  // Draw all samples up front so the outcome does not depend on scheduling.
  Rng rng(seed);
  std::vector<std::array<Trace, 4>> quads;
  quads.reserve(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    quads.push_back({random_trace(g, rng, max_length), random_trace(g, rng, max_length),
                     random_trace(g, rng, max_length), random_trace(g, rng, max_length)});
  }
  std::vector<CheckOutcome> parts(samples);
  const auto n = static_cast<std::ptrdiff_t>(samples);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto& q = quads[static_cast<std::size_t>(k)];
    record(parts[static_cast<std::size_t>(k)], kms_identity_check(q[0], q[1], q[2], q[3]).holds,
           quad(q[0], q[1], q[2], q[3]));
  }
  return merge(parts);
}

CheckOutcome nica_exhaustive(const TruncatedRep& rep, const std::vector<Trace>& traces) {
  std::vector<std::vector<std::uint8_t>> masks;
  masks.reserve(traces.size());
  for (const auto& t : traces) masks.push_back(divisibility_mask(rep, t));
  std::vector<CheckOutcome> parts(traces.size());
  const auto n = static_cast<std::ptrdiff_t>(traces.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) nica_row(rep, traces, masks, static_cast<std::size_t>(i), parts[static_cast<std::size_t>(i)]);
  return merge(parts);
}

CheckOutcome join_translation_sampled(const GraphPtr& g, std::uint64_t seed, std::size_t samples,
                                      std::size_t max_length) {
  Rng rng(seed);
  CheckOutcome out;
  for (std::size_t k = 0; k < samples; ++k) {
    const Trace z = random_trace(g, rng, max_length);
    const Trace p = random_trace(g, rng, max_length);
    const Trace q = random_trace(g, rng, max_length);
    const auto lhs = join(multiply(z, p), multiply(z, q));
    const auto base = join(p, q);
    const bool ok = base.is_infinite() ? lhs.is_infinite()
                                       : lhs.is_finite() && lhs.value() == multiply(z, base.value());
    record(out, ok, to_string(z) + " " + to_string(p) + " " + to_string(q));
  }
  return out;
}

namespace serial {

CheckOutcome kms_exhaustive(const std::vector<Trace>& traces) {
  CheckOutcome out;
  for (std::size_t i = 0; i < traces.size(); ++i) kms_row(traces, i, out);
  return out;
}

CheckOutcome nica_exhaustive(const TruncatedRep& rep, const std::vector<Trace>& traces) {
  std::vector<std::vector<std::uint8_t>> masks;
  for (const auto& t : traces) masks.push_back(qlo::serial::divisibility_mask(rep, t));
  CheckOutcome out;
  for (std::size_t i = 0; i < traces.size(); ++i) nica_row(rep, traces, masks, i, out);
  return out;
}

}  // namespace serial

bool VerifyReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

Rational cutoff_within_budget(const IndependenceGraph& g, const Rational& limit, std::size_t max_size) {
  const auto counts = growth_counts(g, limit);
  BigInt running = 0;
  std::int64_t best = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    running += counts[k];
    if (running > static_cast<unsigned long>(max_size)) break;
    best = static_cast<std::int64_t>(k);
  }
  return g.units_to_rational(best);
}

VerifyReport run_invariant_suite(const GraphPtr& g, const Rational& cutoff, const VerifyOptions& opt) {
  if (sgn(cutoff) < 0) throw ValidationError("cutoff must be nonnegative");
  VerifyReport report;
  auto& out = report.results;
  Rng rng(opt.seed);

  // core
  {
    CheckOutcome o;
    for (std::size_t k = 0; k < opt.samples; ++k) {
      auto word = random_word(*g, rng, 8);
      const Trace t = normalize(g, word);
      const auto again = t.word();
      bool ok = normalize(g, again) == t;
      for (std::size_t i = 0; i + 1 < word.size(); ++i) {
        if (!g->commute(word[i], word[i + 1])) continue;
        std::swap(word[i], word[i + 1]);
        ok = ok && normalize(g, word) == t;
        std::swap(word[i], word[i + 1]);
      }
      record(o, ok, to_string(t));
    }
    out.push_back(from_outcome("normalize_canonical", o));
  }
  {
    CheckOutcome o;
    for (std::size_t k = 0; k < opt.samples; ++k) {
      const Trace a = random_trace(g, rng, 5), b = random_trace(g, rng, 5), c = random_trace(g, rng, 5);
      const Trace ab = multiply(a, b);
      const bool ok = multiply(ab, c) == multiply(a, multiply(b, c)) &&
                      ab.weight_units() == a.weight_units() + b.weight_units() &&
                      ab.length() == a.length() + b.length() && multiply(Trace(g), a) == a &&
                      multiply(a, Trace(g)) == a;
      record(o, ok, to_string(a) + " " + to_string(b) + " " + to_string(c));
    }
    out.push_back(from_outcome("multiply_monoid_laws", o));
  }
  {
    CheckOutcome o;
    for (std::size_t k = 0; k < opt.samples; ++k) {
      const Trace p = random_trace(g, rng, 4), q = random_trace(g, rng, 4);
      const Trace x = rng() % 2 ? multiply(p, q) : random_trace(g, rng, 6);
      const auto jx = join(p, x);
      bool ok = divides(p, x) == (jx.is_finite() && jx.value() == x);
      const auto j = join(p, q);
      if (j.is_finite()) {
        const auto w = wick(p, q);
        ok = ok && w && divides(p, j.value()) && divides(q, j.value()) &&
             multiply(p, w->left) == j.value() && multiply(q, w->right) == j.value();
      } else {
        ok = ok && !wick(p, q);
      }
      record(o, ok, to_string(p) + " " + to_string(q));
    }
    out.push_back(from_outcome("join_divides_wick", o));
  }
  out.push_back(from_outcome("join_translation", join_translation_sampled(g, opt.seed + 1, opt.samples, 4)));

  // growth
  const Rational enum_cutoff = cutoff_within_budget(*g, cutoff, opt.max_enumeration);
  {
    const auto all = enumerate_up_to(g, enum_cutoff);
    std::unordered_set<Trace, TraceHash> set(all.begin(), all.end());
    bool ok = set.size() == all.size() && all.front().is_identity();
    for (const auto& x : all) {
      for_each_letter(min_letters(x), [&](Generator s) {
        ok = ok && set.count(left_quotient(Trace::letter(g, s), x)) == 1;
      });
    }
    out.push_back(result("enumeration_unique_downward_closed", ok,
                         std::to_string(all.size()) + " traces up to " + to_string(enum_cutoff)));

    const auto counts = growth_counts(*g, enum_cutoff);
    std::vector<BigInt> tally(counts.size());
    for (const auto& x : all) tally[static_cast<std::size_t>(x.weight_units())] += 1;
    out.push_back(result("growth_dp_matches_enumeration", tally == counts, "cutoff " + to_string(enum_cutoff)));
  }
  {
    const auto inv = verify_inversion(*g, cutoff);
    std::string detail = "cutoff " + to_string(cutoff);
    if (inv.first_mismatch) {
      detail += ", first mismatch at lambda " + to_string(inv.first_mismatch->lambda) + ": series " +
                inv.first_mismatch->series_coefficient.get_str() + " vs count " +
                inv.first_mismatch->growth_count.get_str();
    }
    out.push_back(result("inversion_formula", inv.match, detail));
    const auto c = clique_polynomial(*g);
    const auto r = invert_series(c, cutoff);
    const auto prod = multiply_truncated(r, c, cutoff);
    out.push_back(result("inverse_times_clique_is_one", prod == WeightedPolynomial::one(c.scale()), detail));
  }

  // thermo
  const ThermoContext ctx(g);
  {
    const double bound = std::log(static_cast<double>(g->size())) / ctx.eta().get_d();
    const bool ok = ctx.beta_c() <= bound + 1e-10;
    std::ostringstream d;
    d.precision(15);
    d << "beta_c " << ctx.beta_c() << " <= " << bound;
    out.push_back(result("critical_bound_log_generators", ok, d.str()));
    out.push_back(result("smallest_root_certificate", certify_no_root_below_smallest(ctx),
                         "no sign variation on (0, t*)"));
    out.push_back(result("lattice_order_iff_beta_c_zero",
                         ctx.critical().exact_zero == is_lattice_ordered(*g),
                         ctx.critical().exact_zero ? "beta_c = 0" : "beta_c > 0"));
  }
  const double beta = 1.5 * ctx.beta_c() + 0.5;
  {
    bool ok = true;
    double prev = INFINITY;
    for (int k = 0; k < 32; ++k) {
      const double b = beta + 0.1 * k;
      const double z = partition_function_closed(ctx, b);
      ok = ok && z < prev;
      prev = z;
    }
    out.push_back(result("partition_function_decreasing", ok, "32 grid points"));
  }
  {
    bool ok = true;
    double prev_gap = INFINITY;
    const auto full = growth_table(*g, cutoff);
    for (const auto& row : full.rows) {
      const double gap = partition_tail(ctx, beta, row.lambda);
      ok = ok && gap >= 0.0 && gap <= prev_gap;
      prev_gap = gap;
    }
    out.push_back(result("truncated_partition_converges", ok, std::to_string(full.rows.size()) + " levels"));
  }
  out.push_back(from_outcome("kms_identity_symbolic", kms_sampled(g, opt.seed + 2, opt.samples, 3)));

  // fock
  const Rational rep_cutoff = cutoff_within_budget(*g, cutoff, opt.max_rep_dim);
  const TruncatedRep rep = build_rep(g, rep_cutoff);
  {
    auto shorts = traces_up_to_length(g, 2);
    out.push_back(from_outcome("nica_covariance", nica_exhaustive(rep, shorts)));
  }
  {
    bool ok = true;
    std::string detail = "dim " + std::to_string(rep.dim());
    try {
      (void)vacuum_projection(rep);
    } catch (const IdentityViolation& e) {
      ok = false;
      detail = e.what();
    }
    out.push_back(result("vacuum_projection_forms", ok, detail));
  }
  {
    CheckOutcome adj, semi, phase;
    for (std::size_t k = 0; k < 8; ++k) {
      const Trace p = random_trace(g, rng, 3), q = random_trace(g, rng, 3);
      const auto lp = left_op(rep, p);
      record(adj, lp.adjoint() == left_op_adjoint(rep, p), to_string(p));
      record(semi, lp * left_op(rep, q) == left_op(rep, multiply(p, q)), to_string(p) + " " + to_string(q));
      const double t = 0.37 * static_cast<double>(k) - 1.1;
      const auto u = phase_operator(rep, t);
      const auto lhs = u * lp * u.adjoint();
      const auto rhs = lp.scaled(std::polar(1.0, t * p.weight_double()));
      bool close = lhs.nnz() == rhs.nnz();
      for (std::size_t e = 0; close && e < lhs.nnz(); ++e) {
        close = lhs.entries()[e].row == rhs.entries()[e].row && lhs.entries()[e].col == rhs.entries()[e].col &&
                std::abs(lhs.entries()[e].value - rhs.entries()[e].value) <= 1e-12;
      }
      record(phase, close, to_string(p));
    }
    out.push_back(from_outcome("adjoint_combinatorial", adj));
    out.push_back(from_outcome("semigroup_left_ops", semi));
    out.push_back(from_outcome("phase_covariance", phase));
  }
  {
    const auto qe = vacuum_projection(rep);
    const double value = gibbs_numeric(rep, qe, beta).real() * partition_function_closed(ctx, beta) - 1.0;
    const double bound = partition_tail(ctx, beta, rep.cutoff());
    std::ostringstream d;
    d.precision(6);
    d << "|psi(Q_e) Z - 1| = " << std::abs(value) << ", tail " << bound;
    out.push_back(result("gibbs_vacuum_normalization", std::abs(value) <= bound + 1e-12, d.str()));
  }
  return report;
}

}  // namespace qlo

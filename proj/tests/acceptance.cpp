// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 when all pass).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "qlo/fock.hpp"
#include "qlo/growth.hpp"
#include "qlo/sampling.hpp"
#include "qlo/thermo.hpp"
#include "qlo/verify.hpp"

using namespace qlo;

namespace {

// Pinned tolerances.
constexpr double kBetaTol = 1e-12;            // requested accuracy for beta_c and root refinement
constexpr double kLogNTol = 1e-10;            // |beta_c(free:n) - ln n|
constexpr double kBoundSlack = 1e-10;         // beta_c <= ln|S| / min w + slack
constexpr double kRootAgreement = 2 * kBetaTol;
constexpr double kRounding = 1e-12;           // floating-point slack on exact tail equalities
constexpr double kVacuumTarget = 1e-4;        // |psi(Q_e) Z - 1| at W = 12
constexpr double kLimsupWindow = 0.05;        // |estimate(20) - ln 2|
constexpr std::uint64_t kSeed = 20240601;

struct Labeled {
  std::string label;
  GraphPtr g;
};

std::vector<Labeled> test_graphs() {
  std::vector<Labeled> out;
  for (const char* p : {"free:2", "free:3", "abelian:2", "abelian:3", "path:3", "path:4", "cycle:5"})
    out.push_back({p, presets::parse(p)});
  Rng rng(kSeed);
  for (int k = 0; k < 10; ++k) {
    const std::size_t n = 3 + static_cast<std::size_t>(k % 4);
    out.push_back({"random" + std::to_string(k) + ":" + std::to_string(n), random_graph(n, rng)});
  }
  out.push_back({"abelian:2(1,3/2)", build_graph({"a", "b"}, {Rational(1), make_rational(3, 2)}, {{"a", "b"}})});
  return out;
}

// Graphs whose W = 12 truncated space stays small enough for dense sweeps.
std::vector<Labeled> fock_graphs() {
  std::vector<Labeled> out;
  for (const char* p : {"free:2", "abelian:2", "abelian:3", "path:3", "path:4"}) out.push_back({p, presets::parse(p)});
  return out;
}

double beta_for(const ThermoContext& ctx) { return ctx.beta_c() > 0.0 ? 1.5 * ctx.beta_c() : 0.5; }

struct Result {
  bool pass = true;
  std::string detail;
};

class Failures {
 public:
  void add(const std::string& what) {
    if (count_++ == 0) first_ = what;
  }
  bool none() const { return count_ == 0; }
  Result result(const std::string& ok_detail) const {
    if (none()) return {true, ok_detail};
    return {false, std::to_string(count_) + " failure(s), first: " + first_};
  }

 private:
  std::size_t count_ = 0;
  std::string first_;
};

std::string g15(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// 1. Series inverse of the clique polynomial = growth counts (DP and brute force).
Result inversion_formula() {
  Failures f;
  for (const auto& [label, g] : test_graphs()) {
    const Rational w(10);
    const auto series = invert_series(clique_polynomial(*g), w);
    const auto dp = growth_counts(*g, w);
    const auto brute = oracle::counts_by_weight(*g, cutoff_units(w, g->scale()));
    for (std::size_t k = 0; k < dp.size(); ++k) {
      const BigInt c = series.coefficient(static_cast<std::int64_t>(k));
      if (c != dp[k] || dp[k] != brute[k]) {
        f.add(label + " at " + to_string(make_rational(static_cast<std::int64_t>(k), g->scale())));
        break;
      }
    }
  }
  return f.result("18 graphs, exact up to weight 10");
}

// 2. beta_c(free:n) = ln n.
Result critical_free() {
  Failures f;
  std::string detail;
  for (std::size_t n : {2, 3, 5}) {
    const double err = std::abs(beta_critical(ThermoContext(presets::free_monoid(n)), kBetaTol) - std::log(double(n)));
    detail += " n=" + std::to_string(n) + ":" + g15(err);
    if (!(err <= kLogNTol)) f.add("free:" + std::to_string(n) + " error " + g15(err));
  }
  return f.result("max errors" + detail);
}

// 3. beta_c <= ln|S| / min w.
Result log_generator_bound() {
  Failures f;
  for (const auto& [label, g] : test_graphs()) {
    ThermoContext ctx(g, kBetaTol);
    const double bound = std::log(double(g->size())) / ctx.eta().get_d() + kBoundSlack;
    if (!(ctx.beta_c() <= bound)) f.add(label);
  }
  return f.result("18 graphs");
}

// 4. beta_c = 0 exactly iff the graph is complete, all graphs on <= 5 vertices.
Result lattice_criterion() {
  Failures f;
  std::size_t graphs = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    const std::uint64_t masks = std::uint64_t{1} << (n * (n - 1) / 2);
    for (std::uint64_t m = 0; m < masks; ++m) {
      auto g = presets::from_pair_mask(n, m);
      ThermoContext ctx(g, kBetaTol);
      ++graphs;
      const bool zero = ctx.critical().exact_zero && ctx.beta_c() == 0.0;
      if (zero != g->is_complete() || zero != is_lattice_ordered(*g))
        f.add("n=" + std::to_string(n) + " mask=" + std::to_string(m));
    }
  }
  return f.result(std::to_string(graphs) + " graphs");
}

// 5. No root of C in (0, e^{-beta_c}); e^{-beta_c} equals the smallest reported root.
Result smallest_root() {
  Failures f;
  double worst = 0.0;
  for (const auto& [label, g] : test_graphs()) {
    ThermoContext ctx(g, kBetaTol);
    const auto roots = clique_roots_in_unit_interval(ctx, kBetaTol);
    if (!certify_no_root_below_smallest(ctx) || roots.empty()) {
      f.add(label + " certificate");
      continue;
    }
    const double gap = std::abs(std::exp(-beta_critical(ctx, kBetaTol)) - roots.front().t);
    worst = std::max(worst, gap);
    if (!(gap <= kRootAgreement)) f.add(label + " gap " + g15(gap));
  }
  return f.result("18 graphs, max gap " + g15(worst));
}

// 6. Recursive join against independent oracles; left-translation covariance.
Result join_oracle() {
  Failures f;
  Rng rng(kSeed + 6);
  std::vector<Labeled> graphs{{"path:3", presets::path(3)}};
  graphs.push_back({"random5a", random_graph(5, rng)});
  graphs.push_back({"random5b", random_graph(5, rng)});
  std::size_t pairs = 0, brute_pairs = 0;
  for (const auto& [label, g] : graphs) {
    const auto traces = traces_up_to_length(g, 4);
    std::vector<oracle::Word> words;
    for (const auto& t : traces) words.push_back(t.word());
    Rng pick(kSeed + pairs);
    std::uniform_int_distribution<std::size_t> which(0, traces.size() - 1);
    for (std::size_t i = 0; i < traces.size(); ++i) {
      for (std::size_t j = 0; j < traces.size(); ++j) {
        ++pairs;
        const auto ours = join(traces[i], traces[j]);
        const auto theirs = oracle::join_by_projections(*g, words[i], words[j]);
        const bool agree = ours.is_finite() == theirs.has_value() &&
                           (!theirs || oracle::equivalent(*g, ours.value().word(), *theirs));
        if (!agree) f.add(label + " " + to_string(traces[i]) + " v " + to_string(traces[j]));
      }
    }
    // Exhaustive right-multiple search on a fixed random subset.
    for (int k = 0; k < 1500; ++k) {
      const std::size_t i = which(pick), j = which(pick);
      ++brute_pairs;
      const auto ours = join(traces[i], traces[j]);
      const auto brute = oracle::join(*g, words[i], words[j]);
      const bool agree = brute.unique_minimum && brute.divides_all_upper_bounds &&
                         ours.is_finite() == brute.join.has_value() &&
                         (!brute.join || oracle::equivalent(*g, ours.value().word(), *brute.join));
      if (!agree) f.add(label + " brute " + to_string(traces[i]) + " v " + to_string(traces[j]));
    }
    const auto translation = join_translation_sampled(g, kSeed + 61, 1000, 4);
    if (!translation.ok()) f.add(label + " translation " + translation.first_failure);
  }
  return f.result(std::to_string(pairs) + " pairs by projection, " + std::to_string(brute_pairs) +
                  " by search, 3x1000 translation triples");
}

// 7. Nica covariance (length <= 3) and the two vacuum projection forms.
Result operator_identities() {
  Failures f;
  std::size_t nica = 0;
  for (const auto& [label, g] : test_graphs()) {
    const auto rep = build_rep(g, Rational(4));
    const auto traces = traces_up_to_length(g, 3);
    const auto outcome = nica_exhaustive(rep, traces);
    nica += outcome.checked;
    if (!outcome.ok()) f.add(label + " nica " + outcome.first_failure);
    for (int w : {4, 6, 8}) {
      const auto forms = vacuum_forms(build_rep(g, Rational(w)));
      bool ok = forms.product_form == forms.clique_sum && forms.product_form.at(0) == 1;
      for (std::size_t i = 1; i < forms.product_form.size(); ++i) ok = ok && forms.product_form[i] == 0;
      if (!ok) f.add(label + " vacuum W=" + std::to_string(w));
    }
  }
  return f.result(std::to_string(nica) + " Nica pairs at W=4, vacuum forms at W in {4,6,8}");
}

// 8. Symbolic KMS identity, exhaustive and sampled.
Result kms_symbolic() {
  Failures f;
  std::size_t checked = 0;
  for (const auto& [label, g] : test_graphs()) {
    const auto all = kms_exhaustive(traces_up_to_length(g, 2));
    const auto sampled = kms_sampled(g, kSeed + 8, 10000, 4);
    checked += all.checked + sampled.checked;
    if (!all.ok()) f.add(label + " " + all.first_failure);
    if (!sampled.ok()) f.add(label + " " + sampled.first_failure);
  }
  return f.result(std::to_string(checked) + " quadruples");
}

// 9. Vacuum normalization of the truncated Gibbs state on path:3.
Result gibbs_normalization() {
  Failures f;
  ThermoContext ctx(presets::path(3), kBetaTol);
  const double beta = 1.5 * ctx.beta_c();
  const double z = partition_function_closed(ctx, beta);
  std::ostringstream detail;
  double at12 = 0.0;
  for (int w : {8, 10, 12}) {
    const auto rep = build_rep(ctx.graph(), Rational(w));
    const double dev = std::abs(gibbs_numeric(rep, vacuum_projection(rep), beta).real() * z - 1.0);
    const double bound = partition_tail(ctx, beta, Rational(w)) / partition_function_truncated(ctx.g(), beta, w);
    detail << "W=" << w << ":" << g15(dev) << "<=" << g15(bound) << " ";
    if (!(dev <= bound + kRounding)) f.add("W=" + std::to_string(w) + " exceeds tail bound");
    if (w == 12) at12 = dev;
  }
  if (!(at12 <= kVacuumTarget)) f.add("W=12 deviation " + g15(at12) + " > " + g15(kVacuumTarget));
  auto r = f.result(detail.str());
  if (!r.pass) r.detail += " | " + detail.str();
  return r;
}

// 10. Truncated Gibbs values of L_p L_p^* and of off-diagonal monomials.
Result gibbs_monomials() {
  Failures f;
  double worst_ratio = 0.0;
  for (const auto& [label, g] : fock_graphs()) {
    ThermoContext ctx(g, kBetaTol);
    const double beta = beta_for(ctx);
    const auto rep = build_rep(g, Rational(12));
    const double bound = gibbs_tail_bound(ctx, rep, beta, Rational(0));
    Rng rng(kSeed + 10);
    for (int k = 0; k < 100; ++k) {
      const Trace p = random_trace(g, rng, 4);
      const double err = std::abs(gibbs_numeric(rep, range_projection(rep, p), beta) -
                                  gibbs_value(p, p).evaluate(beta));
      worst_ratio = std::max(worst_ratio, err / bound);
      if (!(err <= bound)) f.add(label + " p=" + to_string(p));
      const Trace q = random_trace(g, rng, 4);
      if (!(p == q) && gibbs_numeric(rep, monomial(rep, p, q), beta) != Complex(0.0))
        f.add(label + " off-diagonal " + to_string(p) + "," + to_string(q));
    }
  }
  return f.result("5 graphs x 100 traces at W=12, max error/bound " + g15(worst_ratio));
}

// 11. Finite-W lim sup estimate for free:2.
Result limsup() {
  Failures f;
  ThermoContext ctx(presets::free_monoid(2), kBetaTol);
  const double e10 = beta_critical_limsup_estimate(ctx, 10);
  const double e15 = beta_critical_limsup_estimate(ctx, 15);
  const double e20 = beta_critical_limsup_estimate(ctx, 20);
  if (!(e10 > e15 && e15 > e20)) f.add("not decreasing");
  if (!(std::abs(e20 - std::log(2.0)) <= kLimsupWindow)) f.add("W=20 off by " + g15(e20 - std::log(2.0)));
  return f.result(g15(e10) + " > " + g15(e15) + " > " + g15(e20));
}

// 12. Ground state as the low-temperature limit of the Gibbs values.
Result ground_state() {
  Failures f;
  std::size_t checked = 0;
  for (const auto& [label, g] : test_graphs()) {
    ThermoContext ctx(g, kBetaTol);
    const double allowed = std::exp(-10.0 * ctx.eta().get_d()) * (1.0 + kRounding);
    std::vector<Trace> monos{Trace(g)};
    for (Generator s = 0; s < static_cast<Generator>(g->size()); ++s) monos.push_back(Trace::letter(g, s));
    for (double beta : {10.0, 20.0, 40.0})
      for (const auto& p : monos)
        for (const auto& q : monos) {
          ++checked;
          const double diff = std::abs(gibbs_value(p, q).evaluate(beta) - fock_state_value(p, q).evaluate(beta));
          if (!(diff <= allowed)) f.add(label + " beta=" + g15(beta) + " " + to_string(p) + "," + to_string(q));
        }
  }
  return f.result(std::to_string(checked) + " generator monomials");
}

}  // namespace

// Optional arguments select criteria by number; default runs all.
int main(int argc, char** argv) {
  std::vector<bool> selected;
  for (int a = 1; a < argc; ++a) {
    const auto k = static_cast<std::size_t>(std::stoul(argv[a]));
    if (selected.size() <= k) selected.resize(k + 1, false);
    selected[k] = true;
  }
  struct Criterion {
    const char* name;
    std::function<Result()> run;
  };
  const std::vector<Criterion> criteria = {
      {"inversion_formula", inversion_formula},   {"critical_temperature_free", critical_free},
      {"critical_temperature_bound", log_generator_bound}, {"lattice_order_criterion", lattice_criterion},
      {"smallest_root", smallest_root},           {"join_oracle", join_oracle},
      {"operator_identities", operator_identities}, {"kms_symbolic", kms_symbolic},
      {"gibbs_normalization", gibbs_normalization}, {"gibbs_monomials", gibbs_monomials},
      {"limsup_estimate", limsup},                {"ground_state", ground_state},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!selected.empty() && (i + 1 >= selected.size() || !selected[i + 1])) continue;
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = criteria[i].run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!r.pass) ++failed;
    std::printf("%s [%zu] %s: %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, r.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed;
}

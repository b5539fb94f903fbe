#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qlo/errors.hpp"
#include "qlo/sampling.hpp"
#include "qlo/thermo.hpp"
#include "qlo/verify.hpp"

using namespace qlo;

TEST_CASE("critical inverse temperature of the standard examples") {
  const double tol = 1e-12;
  CHECK(std::abs(beta_critical(ThermoContext(presets::free_monoid(2)), tol) - std::log(2.0)) <= tol);
  CHECK(std::abs(beta_critical(ThermoContext(presets::path(3)), tol) - std::log(2.0)) <= tol);
  for (std::size_t k = 1; k <= 4; ++k) {
    ThermoContext ctx(presets::free_abelian(k));
    CHECK(beta_critical(ctx, tol) == 0.0);
    CHECK(ctx.critical().exact_zero);
  }
  // Cycle of length 5: 1 - 5t + 5t^2, smallest root (5 - sqrt 5)/10.
  ThermoContext c5(presets::cycle(5));
  const double t_star = (5.0 - std::sqrt(5.0)) / 10.0;
  CHECK(std::abs(beta_critical(c5, tol) + std::log(t_star)) <= tol);
  CHECK_THROWS_AS(beta_critical(c5, 0.0), ValidationError);
}

TEST_CASE("critical temperature with rational weights") {
  // Free monoid on a (weight 1) and b (weight 1/2): 1 - t - t^{1/2}; u = t^{1/2} solves 1 - u - u^2.
  auto g = build_graph({"a", "b"}, {Rational(1), make_rational(1, 2)}, {});
  ThermoContext ctx(g);
  const double u = (std::sqrt(5.0) - 1.0) / 2.0;
  CHECK(std::abs(beta_critical(ctx, 1e-12) + 2.0 * std::log(u)) <= 1e-12);
}

TEST_CASE("critical temperature bound and smallest-root certificate") {
  Rng rng(77);
  for (int k = 0; k < 30; ++k) {
    auto g = random_graph(2 + static_cast<std::size_t>(k % 5), rng);
    ThermoContext ctx(g);
    CHECK(ctx.beta_c() <= std::log(static_cast<double>(g->size())) / ctx.eta().get_d() + 1e-10);
    CHECK(certify_no_root_below_smallest(ctx));
    CHECK(ctx.critical().exact_zero == g->is_complete());
    if (!ctx.critical().exact_zero) {
      CHECK(std::abs(ctx.clique_poly().evaluate(std::exp(-ctx.beta_c()))) < 1e-9);
    }
  }
}

TEST_CASE("partition function") {
  ThermoContext f2(presets::free_monoid(2));
  CHECK(partition_function(f2, std::log(4.0), PartitionMethod::closed()) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(partition_function(f2, std::log(2.0), PartitionMethod::closed()), ComputationError);
  CHECK_THROWS_AS(partition_function(f2, 0.5, PartitionMethod::closed()), ComputationError);
  CHECK(partition_function(f2, 1.0, PartitionMethod::truncated(0)) == 1.0);
  // Truncated sums are monotone in the cutoff and stay below the closed form.
  const double beta = 1.2;
  double prev = 0.0;
  for (int w = 0; w <= 30; ++w) {
    const double z = partition_function(f2, beta, PartitionMethod::truncated(w));
    CHECK(z > prev);
    CHECK(z <= partition_function_closed(f2, beta));
    prev = z;
  }
  // Tail = sum over weights above the cutoff, checked against an extended table.
  ThermoContext path(presets::path(3));
  const double b = 1.5 * path.beta_c();
  const double gap = partition_tail(path, b, 8);
  const double partial = partition_function_truncated(path.g(), b, 60) - partition_function_truncated(path.g(), b, 8);
  const double rest = partition_tail(path, b, 60);
  CHECK(std::abs(gap - partial) <= rest + 1e-12);
}

TEST_CASE("closed partition function decreases strictly above beta_c") {
  ThermoContext ctx(presets::cycle(5));
  double prev = INFINITY;
  for (int i = 1; i <= 50; ++i) {
    const double z = partition_function_closed(ctx, ctx.beta_c() + 0.05 * i);
    CHECK(z < prev);
    prev = z;
  }
}

TEST_CASE("lim sup estimate") {
  ThermoContext f2(presets::free_monoid(2));
  // sum_{n<=20} 2^n = 2^21 - 1
  CHECK(beta_critical_limsup_estimate(f2, 20) == doctest::Approx(std::log(std::pow(2.0, 21) - 1.0) / 20.0).epsilon(1e-14));
  ThermoContext n2(presets::free_abelian(2));
  // sum_{n<=40} (n + 1) = 861
  CHECK(beta_critical_limsup_estimate(n2, 40) == doctest::Approx(std::log(861.0) / 40.0).epsilon(1e-14));
  ThermoContext f3(presets::free_monoid(3));
  const double est = beta_critical_limsup_estimate(f3, 20);
  CHECK(est == doctest::Approx(std::log((std::pow(3.0, 21) - 1.0) / 2.0) / 20.0).epsilon(1e-14));
  CHECK(est > std::log(3.0));
  CHECK(est - std::log(3.0) < 1.0 / 20.0);
  CHECK_THROWS_AS(beta_critical_limsup_estimate(f2, 0), ComputationError);
}

TEST_CASE("clique roots in the unit interval") {
  const double tol = 1e-12;
  auto path = clique_roots_in_unit_interval(ThermoContext(presets::path(3)), tol);
  REQUIRE(path.size() == 2);
  CHECK(std::abs(path[0].t - 0.5) <= tol);
  CHECK(path[1].t == 1.0);
  CHECK_FALSE(path[1].subcritical_candidate);

  auto f2 = clique_roots_in_unit_interval(ThermoContext(presets::free_monoid(2)), tol);
  REQUIRE(f2.size() == 1);
  CHECK(std::abs(f2[0].t - 0.5) <= tol);

  auto n2 = clique_roots_in_unit_interval(ThermoContext(presets::free_abelian(2)), tol);
  REQUIRE(n2.size() == 1);
  CHECK(n2[0].t == 1.0);
  CHECK(n2[0].multiplicity == 2);
  CHECK(n2[0].possibly_multiple);
}

TEST_CASE("the root at 1 is not a subcritical candidate") {
  // Path a-b-c with weights 1, 1, 2: C = 1 - 2t + t^3 = (1 - t)(1 - t - t^2).
  auto g = build_graph({"a", "b", "c"}, {Rational(1), Rational(1), Rational(2)}, {{"a", "b"}, {"b", "c"}});
  auto roots = clique_roots_in_unit_interval(ThermoContext(g), 1e-12);
  REQUIRE(roots.size() == 2);
  CHECK(std::abs(roots[0].t - (std::sqrt(5.0) - 1.0) / 2.0) <= 1e-12);
  CHECK(roots[1].t == 1.0);
  CHECK_FALSE(roots[1].subcritical_candidate);
}

TEST_CASE("Gibbs and ground state values") {
  auto g = presets::path(3);
  const Trace a = parse_trace(g, "a"), b = parse_trace(g, "b"), e(g);
  CHECK(gibbs_value(a, a) == StateValue::exact(Rational(1)));
  CHECK(gibbs_value(a, a).evaluate(0.7) == doctest::Approx(std::exp(-0.7)));
  CHECK(gibbs_value(a, b).is_zero());
  CHECK(gibbs_value(e, e).evaluate(3.0) == 1.0);
  CHECK(fock_state_value(e, e).evaluate(1.0) == 1.0);
  CHECK(fock_state_value(a, e).is_zero());
  CHECK(fock_state_value(a, a).is_zero());
  for (double beta : {10.0, 20.0, 40.0}) {
    CHECK(std::abs(gibbs_value(a, a).evaluate(beta) - fock_state_value(a, a).evaluate(beta)) <= std::exp(-10.0));
  }
  CHECK_THROWS_AS(gibbs_value(a, parse_trace(presets::free_monoid(2), "a")), ValidationError);
  CHECK((StateValue::exact(Rational(1)) * StateValue::exact(Rational(2))) == StateValue::exact(Rational(3)));
  CHECK((StateValue::exact(Rational(1)) * StateValue::zero()).is_zero());
}

TEST_CASE("symbolic KMS identity") {
  auto g = presets::path(3);
  const Trace e(g);
  const Trace p = parse_trace(g, "ab"), q = parse_trace(g, "b");
  auto r = kms_identity_check(p, q, q, p);
  CHECK(r.holds);
  CHECK(r.lhs.is_exact());
  CHECK(r.rhs.is_exact());
  auto z = kms_identity_check(e, e, parse_trace(g, "a"), parse_trace(g, "c"));
  CHECK(z.holds);
  CHECK(z.lhs.is_zero());
  CHECK(z.rhs.is_zero());

  for (const char* preset : {"path:3", "cycle:4", "abelian:2"}) {
    const auto outcome = kms_exhaustive(traces_up_to_length(presets::parse(preset), 3));
    CHECK_MESSAGE(outcome.ok(), outcome.first_failure);
  }
}

#include <doctest.h>

#include <cmath>

#include "qlo/errors.hpp"
#include "qlo/roots.hpp"

using namespace qlo;
using namespace qlo::roots;

namespace {

IntPoly P(std::initializer_list<long> coeffs) {
  IntPoly p;
  for (long c : coeffs) p.emplace_back(c);
  return p;
}

IntPoly mul(const IntPoly& a, const IntPoly& b) {
  IntPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

TEST_CASE("gcd and square-free part") {
  // (x - 1)^2 (2x - 1)
  const IntPoly p = mul(mul(P({-1, 1}), P({-1, 1})), P({-1, 2}));
  CHECK(gcd(p, derivative(p)) == P({-1, 1}));
  CHECK(squarefree_part(p) == mul(P({-1, 1}), P({-1, 2})));
  CHECK(exact_quotient(p, P({-1, 1})) == mul(P({-1, 1}), P({-1, 2})));
  CHECK_THROWS_AS(exact_quotient(p, P({1, 1})), ComputationError);
  CHECK(degree(P({3, 0, 0})) == 0);
}

TEST_CASE("exact signs at rational points") {
  const IntPoly p = P({1, -3, 2});  // (1 - t)(1 - 2t)
  CHECK(sign_at(p, Rational(0)) == 1);
  CHECK(sign_at(p, make_rational(1, 2)) == 0);
  CHECK(sign_at(p, make_rational(3, 4)) == -1);
  CHECK(sign_at(p, Rational(1)) == 0);
  CHECK(sign_at(p, Rational(2)) == 1);
}

TEST_CASE("Descartes bound") {
  const IntPoly p = mul(P({-1, 3}), P({-1, 2}));  // roots 1/3, 1/2
  CHECK(descartes_bound(p, Rational(0), Rational(1)) == 2);
  CHECK(descartes_bound(p, Rational(0), make_rational(2, 5)) == 1);
  CHECK(descartes_bound(p, make_rational(3, 5), Rational(1)) == 0);
  CHECK(descartes_bound(p, Rational(1), Rational(0)) == 0);
}

TEST_CASE("isolation finds every root in (0, 1] with multiplicity") {
  // (3x - 1)(2x - 1)(x - 1)^2
  const IntPoly p = mul(mul(P({-1, 3}), P({-1, 2})), mul(P({-1, 1}), P({-1, 1})));
  auto found = isolate_unit_interval(p);
  REQUIRE(found.size() == 3);
  CHECK(found[0].lo < make_rational(1, 3));
  CHECK(found[0].hi > make_rational(1, 3));
  CHECK(found[1].exact);
  CHECK(found[1].lo == make_rational(1, 2));
  CHECK(found[2].exact);
  CHECK(found[2].lo == 1);
  CHECK(found[2].multiplicity == 2);
  CHECK(found[0].multiplicity == 1);

  const IntPoly sf = squarefree_part(p);
  refine(sf, found[0], make_rational(1, 1 << 30));
  CHECK(std::abs(found[0].lo.get_d() - 1.0 / 3.0) < 1e-9);
}

TEST_CASE("interior double roots and irrational roots") {
  // (3x - 1)^2 (x - 2): double root at 1/3, nothing else in (0, 1].
  const IntPoly p = mul(mul(P({-1, 3}), P({-1, 3})), P({-2, 1}));
  auto found = isolate_unit_interval(p);
  REQUIRE(found.size() == 1);
  CHECK(found[0].multiplicity == 2);

  // 2x^2 - 1: root 1/sqrt 2.
  auto irr = isolate_unit_interval(P({-1, 0, 2}));
  REQUIRE(irr.size() == 1);
  refine(P({-1, 0, 2}), irr[0], Rational(BigInt(1), BigInt(1) << 50));
  CHECK(std::abs(irr[0].lo.get_d() - std::sqrt(0.5)) < 1e-14);

  CHECK(isolate_unit_interval(P({1, 1})).empty());
  CHECK_THROWS_AS(isolate_unit_interval(P({0})), ComputationError);
}

TEST_CASE("close roots are separated") {
  // (1000x - 499)(1000x - 501)
  const IntPoly p = mul(P({-499, 1000}), P({-501, 1000}));
  auto found = isolate_unit_interval(p);
  REQUIRE(found.size() == 2);
  CHECK(found[0].hi <= found[1].lo);
}

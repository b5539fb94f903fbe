#pragma once

#include <vector>

#include "qlo/rational.hpp"

// Exact real-root isolation for integer polynomials on (0, 1]: square-free
// reduction, Descartes sign-variation bisection (Vincent-Collins-Akritas), and
// bisection refinement with exact signs at dyadic points.
namespace qlo::roots {

// Coefficients in ascending degree order.
using IntPoly = std::vector<BigInt>;

void trim(IntPoly& p);
int degree(const IntPoly& p);
IntPoly derivative(const IntPoly& p);
// Monic-free gcd over Q, returned as a primitive integer polynomial with
// positive leading coefficient.
IntPoly gcd(const IntPoly& a, const IntPoly& b);
// Exact quotient a / b over Q, returned primitive; b must divide a.
IntPoly exact_quotient(const IntPoly& a, const IntPoly& b);
IntPoly squarefree_part(const IntPoly& p);

int sign_at(const IntPoly& p, const Rational& x);
double evaluate(const IntPoly& p, double x);

// Sign variations of p's coefficients after mapping (lo, hi) onto (0, inf).
// Bounds the number of roots in the open interval (lo, hi) and agrees with it
// in parity; 0 certifies there is none.
int descartes_bound(const IntPoly& p, const Rational& lo, const Rational& hi);

struct IsolatedRoot {
  Rational lo;
  Rational hi;
  bool exact = false;  // lo == hi is the root itself
  int multiplicity = 1;
};

// Roots of p in (0, 1], ascending, each in a disjoint interval that contains
// no other root of p. p must not be the zero polynomial.
std::vector<IsolatedRoot> isolate_unit_interval(const IntPoly& p);

// Bisects until hi - lo <= width (no-op for exact roots). p must have exactly
// one root in the open interval, with a sign change across it (true for the
// square-free part).
void refine(const IntPoly& squarefree, IsolatedRoot& root, const Rational& width);

}  // namespace qlo::roots

#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "qlo/rational.hpp"

namespace qlo {

// Generalised polynomial sum_k c_k t^{k/scale} with exact integer coefficients.
// Exponents are stored as integers on the lattice (1/scale)Z; zero coefficients
// are never stored.
class WeightedPolynomial {
 public:
  explicit WeightedPolynomial(std::int64_t scale = 1);

  static WeightedPolynomial one(std::int64_t scale = 1);

  std::int64_t scale() const { return scale_; }
  const std::map<std::int64_t, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Coefficient of t^{units/scale}.
  BigInt coefficient(std::int64_t units) const;
  BigInt constant_term() const { return coefficient(0); }
  void add_term(std::int64_t units, const BigInt& coeff);
  // Largest stored exponent in lattice units (0 for the zero polynomial).
  std::int64_t degree_units() const;

  // Exact value at t = 1.
  BigInt value_at_one() const;
  double evaluate(double t) const;

  // Same polynomial expressed on the finer lattice (1/new_scale)Z.
  WeightedPolynomial rescaled(std::int64_t new_scale) const;

  friend bool operator==(const WeightedPolynomial& a, const WeightedPolynomial& b);

 private:
  std::int64_t scale_;
  std::map<std::int64_t, BigInt> terms_;
};

// Product truncated to exponents <= cutoff (both operands must share a scale).
WeightedPolynomial multiply_truncated(const WeightedPolynomial& a, const WeightedPolynomial& b,
                                      const Rational& cutoff);

// Unique series R with R * c == 1 modulo exponents > cutoff. Requires a unit
// constant term.
WeightedPolynomial invert_series(const WeightedPolynomial& c, const Rational& cutoff);

// "1 - 2*t^1 + 1*t^2"; rational exponents as t^(3/2).
std::string to_string(const WeightedPolynomial& p);

// Largest lattice index k with k/scale <= cutoff.
std::int64_t cutoff_units(const Rational& cutoff, std::int64_t scale);

}  // namespace qlo

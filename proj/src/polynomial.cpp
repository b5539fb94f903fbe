#include "qlo/polynomial.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "qlo/errors.hpp"

namespace qlo {

WeightedPolynomial::WeightedPolynomial(std::int64_t scale) : scale_(scale) {
  if (scale <= 0) throw ValidationError("polynomial scale must be positive");
}

WeightedPolynomial WeightedPolynomial::one(std::int64_t scale) {
  WeightedPolynomial p(scale);
  p.add_term(0, 1);
  return p;
}

BigInt WeightedPolynomial::coefficient(std::int64_t units) const {
  auto it = terms_.find(units);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void WeightedPolynomial::add_term(std::int64_t units, const BigInt& coeff) {
  if (units < 0) throw ValidationError("negative exponent");
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(units, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

std::int64_t WeightedPolynomial::degree_units() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first;
}

BigInt WeightedPolynomial::value_at_one() const {
  BigInt total = 0;
  for (const auto& [k, c] : terms_) total += c;
  return total;
}

double WeightedPolynomial::evaluate(double t) const {
  double total = 0.0;
  for (const auto& [k, c] : terms_) {
    total += c.get_d() * std::pow(t, static_cast<double>(k) / static_cast<double>(scale_));
  }
  return total;
}

WeightedPolynomial WeightedPolynomial::rescaled(std::int64_t new_scale) const {
  if (new_scale % scale_ != 0) throw ValidationError("rescale target must be a multiple of the scale");
  WeightedPolynomial out(new_scale);
  const std::int64_t factor = new_scale / scale_;
  for (const auto& [k, c] : terms_) out.terms_.emplace(k * factor, c);
  return out;
}

bool operator==(const WeightedPolynomial& a, const WeightedPolynomial& b) {
  if (a.scale_ == b.scale_) return a.terms_ == b.terms_;
  const std::int64_t common = std::lcm(a.scale_, b.scale_);
  return a.rescaled(common).terms_ == b.rescaled(common).terms_;
}

std::int64_t cutoff_units(const Rational& cutoff, std::int64_t scale) {
  BigInt scaled = cutoff.get_num() * BigInt(static_cast<long>(scale));
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), cutoff.get_den().get_mpz_t());
  if (!q.fits_slong_p()) throw ValidationError("cutoff too large");
  return q.get_si();
}

WeightedPolynomial multiply_truncated(const WeightedPolynomial& a, const WeightedPolynomial& b,
                                      const Rational& cutoff) {
  if (a.scale() != b.scale()) throw ValidationError("multiply: polynomials on different lattices");
  const std::int64_t limit = cutoff_units(cutoff, a.scale());
  WeightedPolynomial out(a.scale());
  for (const auto& [ka, ca] : a.terms()) {
    if (ka > limit) break;
    for (const auto& [kb, cb] : b.terms()) {
      if (ka + kb > limit) break;
      out.add_term(ka + kb, ca * cb);
    }
  }
  return out;
}

WeightedPolynomial invert_series(const WeightedPolynomial& c, const Rational& cutoff) {
  if (c.constant_term() != 1) throw ValidationError("invert_series: constant term must be 1");
  if (sgn(cutoff) < 0) throw ValidationError("invert_series: negative cutoff");
  const std::int64_t limit = cutoff_units(cutoff, c.scale());
  std::vector<BigInt> r(static_cast<std::size_t>(limit) + 1);
  r[0] = 1;
  for (std::int64_t k = 1; k <= limit; ++k) {
    BigInt acc = 0;
    for (const auto& [j, cj] : c.terms()) {
      if (j == 0) continue;
      if (j > k) break;
      acc -= cj * r[static_cast<std::size_t>(k - j)];
    }
    r[static_cast<std::size_t>(k)] = std::move(acc);
  }
  WeightedPolynomial out(c.scale());
  for (std::int64_t k = 0; k <= limit; ++k) out.add_term(k, r[static_cast<std::size_t>(k)]);
  return out;
}

std::string to_string(const WeightedPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : p.terms()) {
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    out += mag.get_str();
    if (k == 0) continue;
    Rational e = make_rational(k, p.scale());
    if (e.get_den() == 1) {
      out += "*t^" + e.get_num().get_str();
    } else {
      out += "*t^(" + e.get_num().get_str() + "/" + e.get_den().get_str() + ")";
    }
  }
  return out;
}

}  // namespace qlo

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace qlo {

using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(std::int64_t num, std::int64_t den) {
  Rational r(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::string to_string(const BigInt& z) { return z.get_str(); }

// Natural log of a positive big integer without overflowing a double.
double log_bigint(const BigInt& z);

}  // namespace qlo

#include "qlo/roots.hpp"

#include <algorithm>
#include <cmath>

#include "qlo/errors.hpp"

namespace qlo::roots {
namespace {

using QPoly = std::vector<Rational>;

void trim_q(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly to_q(const IntPoly& p) {
  QPoly out;
  out.reserve(p.size());
  for (const auto& c : p) out.emplace_back(c);
  return out;
}

// Clears denominators and content; leading coefficient made positive.
IntPoly primitive(QPoly p) {
  trim_q(p);
  if (p.empty()) return {};
  BigInt lcm_den = 1;
  for (const auto& c : p) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
  IntPoly out;
  out.reserve(p.size());
  BigInt content = 0;
  for (const auto& c : p) {
    BigInt v = c.get_num() * (lcm_den / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    out.push_back(std::move(v));
  }
  if (out.back() < 0) content = -content;
  for (auto& c : out) c /= content;
  return out;
}

// Remainder of a modulo b over Q.
QPoly remainder(QPoly a, const QPoly& b) {
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    Rational factor = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= factor * b[i];
    a.pop_back();
    trim_q(a);
  }
  return a;
}

int sign_variations(const IntPoly& p) {
  int count = 0;
  int last = 0;
  for (const auto& c : p) {
    const int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

// q(x) = p(x + 1).
IntPoly taylor_shift_one(IntPoly p) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j > i; --j) p[j - 1] += p[j];
  }
  return p;
}

// 2^deg p(x / 2).
IntPoly halve(IntPoly p) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) p[i] <<= static_cast<mp_bitcnt_t>(n - 1 - i);
  return p;
}

// Descartes count for roots of p in (0, 1): variations of (1+x)^n p(1/(1+x)).
int unit_variations(const IntPoly& p) {
  IntPoly reversed(p.rbegin(), p.rend());
  return sign_variations(taylor_shift_one(std::move(reversed)));
}

struct Pending {
  IntPoly local;  // p restricted to [c/2^k, (c+1)/2^k], rescaled to (0, 1)
  BigInt c;
  unsigned k;
};

Rational dyadic(const BigInt& c, unsigned k) {
  Rational r(c, BigInt(1) << k);
  r.canonicalize();
  return r;
}

bool has_root_in(const IntPoly& h, const IsolatedRoot& root) {
  if (degree(h) <= 0) return false;
  if (root.exact) return sign_at(h, root.lo) == 0;
  return descartes_bound(squarefree_part(h), root.lo, root.hi) % 2 == 1;
}

void bisect_once(const IntPoly& s, IsolatedRoot& root) {
  Rational mid = (root.lo + root.hi) / 2;
  const int sm = sign_at(s, mid);
  if (sm == 0) {
    root.lo = root.hi = mid;
    root.exact = true;
    return;
  }
  const int slo = sign_at(s, root.lo);
  const int shi = sign_at(s, root.hi);
  bool left;
  if (slo != 0) {
    left = (slo != sm);
  } else if (shi != 0) {
    left = (shi == sm);
  } else {
    left = descartes_bound(s, root.lo, mid) % 2 == 1;
  }
  if (left) {
    root.hi = mid;
  } else {
    root.lo = mid;
  }
}

}  // namespace

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const IntPoly& p) {
  IntPoly q = p;
  trim(q);
  return static_cast<int>(q.size()) - 1;
}

IntPoly derivative(const IntPoly& p) {
  IntPoly out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * static_cast<unsigned long>(i));
  trim(out);
  return out;
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  QPoly x = to_q(a);
  QPoly y = to_q(b);
  trim_q(x);
  trim_q(y);
  while (!y.empty()) {
    QPoly r = remainder(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return primitive(std::move(x));
}

IntPoly exact_quotient(const IntPoly& a, const IntPoly& b) {
  QPoly num = to_q(a);
  QPoly den = to_q(b);
  trim_q(num);
  trim_q(den);
  if (den.empty()) throw ComputationError("division by the zero polynomial");
  if (num.size() < den.size()) return {};
  QPoly quotient(num.size() - den.size() + 1);
  while (num.size() >= den.size()) {
    Rational factor = num.back() / den.back();
    const std::size_t shift = num.size() - den.size();
    quotient[shift] = factor;
    for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= factor * den[i];
    num.pop_back();
  }
  trim_q(num);
  if (!num.empty()) throw ComputationError("exact_quotient: nonzero remainder");
  return primitive(std::move(quotient));
}

IntPoly squarefree_part(const IntPoly& p) {
  IntPoly d = derivative(p);
  if (d.empty()) return primitive(to_q(p));
  return exact_quotient(p, gcd(p, d));
}

int sign_at(const IntPoly& p, const Rational& x) {
  // Homogeneous Horner: sum_i p_i num^i den^(n-i) has the sign of p(x), den > 0.
  const BigInt& num = x.get_num();
  const BigInt& den = x.get_den();
  if (p.empty()) return 0;
  BigInt acc = p.back();
  BigInt den_pow = den;
  for (auto it = p.rbegin() + 1; it != p.rend(); ++it) {
    acc = acc * num + *it * den_pow;
    den_pow *= den;
  }
  return sgn(acc);
}

double evaluate(const IntPoly& p, double x) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

int descartes_bound(const IntPoly& p, const Rational& lo, const Rational& hi) {
  if (lo >= hi) return 0;
  // sum_i p_i (lo + hi x)^i (1 + x)^(n - i)
  const std::size_t n = p.size();
  if (n == 0) return 0;
  const std::size_t deg = n - 1;
  QPoly acc(n);
  // powers of (lo + hi x) and (1 + x)
  std::vector<QPoly> lin(n), one(n);
  lin[0] = {Rational(1)};
  one[0] = {Rational(1)};
  auto mul = [](const QPoly& a, const Rational& c0, const Rational& c1) {
    QPoly out(a.size() + 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
      out[i] += a[i] * c0;
      out[i + 1] += a[i] * c1;
    }
    return out;
  };
  for (std::size_t i = 1; i < n; ++i) {
    lin[i] = mul(lin[i - 1], lo, hi);
    one[i] = mul(one[i - 1], Rational(1), Rational(1));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] == 0) continue;
    const QPoly& a = lin[i];
    const QPoly& b = one[deg - i];
    for (std::size_t u = 0; u < a.size(); ++u)
      for (std::size_t v = 0; v < b.size(); ++v) acc[u + v] += Rational(p[i]) * a[u] * b[v];
  }
  return sign_variations(primitive(std::move(acc)));
}

std::vector<IsolatedRoot> isolate_unit_interval(const IntPoly& input) {
  IntPoly p = input;
  trim(p);
  if (p.empty()) throw ComputationError("cannot isolate roots of the zero polynomial");
  // Zero roots lie outside (0, 1].
  while (p.size() > 1 && p.front() == 0) p.erase(p.begin());

  std::vector<IsolatedRoot> found;
  const IntPoly s = squarefree_part(p);
  IntPoly core = s;
  const bool root_at_one = sign_at(s, Rational(1)) == 0;
  if (root_at_one) core = exact_quotient(s, IntPoly{BigInt(-1), BigInt(1)});

  std::vector<Pending> stack;
  if (degree(core) > 0) stack.push_back({core, BigInt(0), 0});
  while (!stack.empty()) {
    Pending cur = std::move(stack.back());
    stack.pop_back();
    const int v = unit_variations(cur.local);
    if (v == 0) continue;
    if (v == 1) {
      found.push_back({dyadic(cur.c, cur.k), dyadic(cur.c + 1, cur.k), false, 1});
      continue;
    }
    IntPoly left = halve(cur.local);
    IntPoly right = taylor_shift_one(left);
    const BigInt c2 = cur.c * 2;
    const unsigned k2 = cur.k + 1;
    if (right.front() == 0) {
      const Rational mid = dyadic(c2 + 1, k2);
      found.push_back({mid, mid, true, 1});
      right.erase(right.begin());
    }
    stack.push_back({std::move(right), c2 + 1, k2});
    stack.push_back({std::move(left), c2, k2});
  }
  if (root_at_one) found.push_back({Rational(1), Rational(1), true, 1});
  std::sort(found.begin(), found.end(),
            [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.lo < b.lo; });

  // Multiplicity: depth of the root in the chain p, gcd(p, p'), ...
  for (auto& root : found) {
    IntPoly h = gcd(p, derivative(p));
    while (has_root_in(h, root)) {
      ++root.multiplicity;
      h = gcd(h, derivative(h));
    }
  }
  return found;
}

void refine(const IntPoly& squarefree, IsolatedRoot& root, const Rational& width) {
  while (!root.exact && root.hi - root.lo > width) bisect_once(squarefree, root);
}

}  // namespace qlo::roots

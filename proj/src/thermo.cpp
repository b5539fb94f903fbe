#include "qlo/thermo.hpp"

#include <algorithm>
#include <cmath>

#include "qlo/errors.hpp"

namespace qlo {
namespace {

double to_double(const Rational& r) { return r.get_d(); }

// Half-width of the beta interval [-s ln hi, -s ln lo] for a root interval in u.
double beta_half_width(const roots::IsolatedRoot& r, std::int64_t scale) {
  if (r.exact) return 0.0;
  if (sgn(r.lo) <= 0) return INFINITY;
  const Rational rel = (r.hi - r.lo) / r.lo;
  return 0.5 * static_cast<double>(scale) * std::log1p(to_double(rel));
}

double beta_midpoint(const roots::IsolatedRoot& r, std::int64_t scale) {
  const double s = static_cast<double>(scale);
  if (r.exact) return -s * std::log(to_double(r.lo));
  return -0.5 * s * (std::log(to_double(r.lo)) + std::log(to_double(r.hi)));
}

roots::IntPoly as_u_polynomial(const WeightedPolynomial& c) {
  roots::IntPoly p(static_cast<std::size_t>(c.degree_units()) + 1);
  for (const auto& [k, coeff] : c.terms()) p[static_cast<std::size_t>(k)] = coeff;
  return p;
}

}  // namespace

double StateValue::evaluate(double beta) const {
  switch (kind_) {
    case Kind::Exact: return std::exp(-beta * to_double(exponent_));
    case Kind::Zero: return 0.0;
    case Kind::Numeric: return numeric_;
  }
  return 0.0;
}

StateValue operator*(const StateValue& a, const StateValue& b) {
  if (a.is_zero() || b.is_zero()) return StateValue::zero();
  if (a.is_exact() && b.is_exact()) return StateValue::exact(a.exponent_ + b.exponent_);
  throw ComputationError("cannot multiply a numeric state value without a temperature");
}

bool operator==(const StateValue& a, const StateValue& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case StateValue::Kind::Exact: return a.exponent_ == b.exponent_;
    case StateValue::Kind::Zero: return true;
    case StateValue::Kind::Numeric: return a.numeric_ == b.numeric_;
  }
  return false;
}

ThermoContext::ThermoContext(GraphPtr graph, double tol)
    : graph_(std::move(graph)), clique_poly_(clique_polynomial(*graph_)) {
  poly_u_ = as_u_polynomial(clique_poly_);
  squarefree_u_ = roots::squarefree_part(poly_u_);
  eta_ = graph_->weight(0);
  for (const auto& w : graph_->weights()) eta_ = std::min(eta_, w);
  critical_ = beta_critical_detail(*this, tol);
}

CriticalTemperature beta_critical_detail(const ThermoContext& ctx, double tol) {
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
  const auto found = roots::isolate_unit_interval(ctx.clique_poly_u());
  if (found.empty()) throw ComputationError("clique polynomial has no root in (0, 1]");
  CriticalTemperature out;
  out.smallest_root_u = found.front();
  auto& root = out.smallest_root_u;
  if (root.exact && root.lo == 1) {
    out.exact_zero = true;
    out.beta = 0.0;
    out.error_bound = 0.0;
    return out;
  }
  const std::int64_t scale = ctx.g().scale();
  while (beta_half_width(root, scale) > tol) {
    roots::refine(ctx.squarefree_u(), root, (root.hi - root.lo) / 2);
  }
  out.beta = beta_midpoint(root, scale);
  // Rounding in the logarithms is far below any meaningful tolerance; charge it anyway.
  out.error_bound = beta_half_width(root, scale) + 4e-16 * std::max(1.0, out.beta);
  return out;
}

double beta_critical(const ThermoContext& ctx, double tol) { return beta_critical_detail(ctx, tol).beta; }

double partition_function_closed(const ThermoContext& ctx, double beta) {
  const auto& crit = ctx.critical();
  if (!(beta > crit.beta + crit.error_bound)) {
    throw ComputationError("partition function diverges for beta <= beta_c");
  }
  const double u = std::exp(-beta / static_cast<double>(ctx.g().scale()));
  const double c = roots::evaluate(ctx.clique_poly_u(), u);
  if (!(c > 0.0)) throw ComputationError("clique polynomial not positive above beta_c");
  return 1.0 / c;
}

double partition_function_truncated(const GrowthTable& table, double beta) {
  double total = 0.0;
  for (const auto& row : table.rows) {
    total += std::exp(log_bigint(row.count) - beta * to_double(row.lambda));
  }
  return total;
}

double partition_function_truncated(const IndependenceGraph& g, double beta, const Rational& cutoff) {
  if (!(beta > 0.0)) throw ComputationError("truncated partition function needs beta > 0");
  return partition_function_truncated(growth_table(g, cutoff), beta);
}

double partition_function(const ThermoContext& ctx, double beta, const PartitionMethod& method) {
  if (method.cutoff) return partition_function_truncated(ctx.g(), beta, *method.cutoff);
  return partition_function_closed(ctx, beta);
}

double partition_tail(const ThermoContext& ctx, double beta, const Rational& cutoff) {
  const double closed = partition_function_closed(ctx, beta);
  if (sgn(cutoff) < 0) return closed;
  return std::max(0.0, closed - partition_function_truncated(ctx.g(), beta, cutoff));
}

double beta_critical_limsup_estimate(const ThermoContext& ctx, const Rational& cutoff) {
  const auto table = growth_table(ctx.g(), cutoff);
  if (table.rows.size() < 2) throw ComputationError("limsup estimate needs at least two weight levels");
  return log_bigint(table.total()) / to_double(table.rows.back().lambda);
}

std::vector<RootInfo> clique_roots_in_unit_interval(const ThermoContext& ctx, double tol) {
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
  const std::int64_t scale = ctx.g().scale();
  const double s = static_cast<double>(scale);
  auto found = roots::isolate_unit_interval(ctx.clique_poly_u());
  std::vector<RootInfo> out;
  for (auto& r : found) {
    // Shrink until the t-interval (u^scale) is within 2 tol.
    auto t_width = [&] { return std::pow(to_double(r.hi), s) - std::pow(to_double(r.lo), s); };
    while (!r.exact && t_width() > 2.0 * tol) roots::refine(ctx.squarefree_u(), r, (r.hi - r.lo) / 2);
    RootInfo info;
    const double t_lo = std::pow(to_double(r.lo), s);
    const double t_hi = std::pow(to_double(r.hi), s);
    info.t = r.exact && r.lo == 1 ? 1.0 : 0.5 * (t_lo + t_hi);
    info.t_error = 0.5 * (t_hi - t_lo);
    info.beta = info.t == 1.0 ? 0.0 : -std::log(info.t);
    info.multiplicity = r.multiplicity;
    info.possibly_multiple = r.multiplicity > 1;
    if (!out.empty() && info.t - out.back().t < 2.0 * tol) {
      out.back().multiplicity += info.multiplicity;
      out.back().possibly_multiple = true;
      continue;
    }
    out.push_back(info);
  }
  for (std::size_t i = 1; i < out.size(); ++i) out[i].subcritical_candidate = out[i].t < 1.0;
  return out;
}

bool certify_no_root_below_smallest(const ThermoContext& ctx) {
  const auto& root = ctx.critical().smallest_root_u;
  return roots::descartes_bound(ctx.clique_poly_u(), Rational(0), root.lo) == 0 &&
         (root.exact || roots::descartes_bound(ctx.squarefree_u(), root.lo, root.hi) == 1);
}

StateValue gibbs_value(const Trace& p, const Trace& q) {
  if (!same_graph(p, q)) throw ValidationError("gibbs_value: traces belong to different graphs");
  if (p == q) return StateValue::exact(p.weight());
  return StateValue::zero();
}

StateValue fock_state_value(const Trace& p, const Trace& q) {
  if (p.is_identity() && q.is_identity()) return StateValue::exact(Rational(0));
  return StateValue::zero();
}

KmsIdentityReport kms_identity_check(const Trace& p1, const Trace& q1, const Trace& p2,
                                     const Trace& q2) {
  if (!same_graph(p1, q1) || !same_graph(p1, p2) || !same_graph(p1, q2)) {
    throw ValidationError("kms_identity_check: traces belong to different graphs");
  }
  KmsIdentityReport report;
  // v_p1 v_q1^* v_p2 v_q2^* = v_{p1 a} v_{q2 b}^* with (a, b) = wick(q1, p2).
  if (auto ab = wick(q1, p2)) {
    if (multiply(p1, ab->left) == multiply(q2, ab->right)) {
      report.lhs = StateValue::exact(ab->left.weight());
    }
  }
  // v_q1 v_p1^* v_q2 v_p2^* = v_{q1 c} v_{p2 d}^* with (c, d) = wick(p1, q2).
  if (auto cd = wick(p1, q2)) {
    if (multiply(q1, cd->left) == multiply(p2, cd->right)) {
      report.rhs = StateValue::exact(cd->left.weight());
    }
  }
  report.holds = report.lhs == report.rhs;
  return report;
}

}  // namespace qlo

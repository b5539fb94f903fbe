#pragma once

#include <complex>
#include <optional>
#include <variant>
#include <vector>

#include "qlo/growth.hpp"
#include "qlo/roots.hpp"

namespace qlo {

// Value of a state on a monomial: exactly e^{-beta r}, exactly zero, or a
// floating-point number.
class StateValue {
 public:
  enum class Kind { Exact, Zero, Numeric };

  static StateValue exact(Rational exponent) { return StateValue(Kind::Exact, std::move(exponent), 0.0); }
  static StateValue zero() { return StateValue(Kind::Zero, Rational(0), 0.0); }
  static StateValue numeric(double v) { return StateValue(Kind::Numeric, Rational(0), v); }

  Kind kind() const { return kind_; }
  bool is_zero() const { return kind_ == Kind::Zero; }
  bool is_exact() const { return kind_ == Kind::Exact; }
  const Rational& exponent() const { return exponent_; }
  double evaluate(double beta) const;

  friend StateValue operator*(const StateValue& a, const StateValue& b);
  friend bool operator==(const StateValue& a, const StateValue& b);

 private:
  StateValue(Kind k, Rational r, double v) : kind_(k), exponent_(std::move(r)), numeric_(v) {}
  Kind kind_;
  Rational exponent_;
  double numeric_;
};

struct CriticalTemperature {
  double beta = 0.0;
  double error_bound = 0.0;  // |beta - beta_c| <= error_bound
  bool exact_zero = false;   // smallest root is t = 1, certified exactly
  // Isolating interval of the smallest root in t = u^scale, u-coordinates.
  roots::IsolatedRoot smallest_root_u;
};

class ThermoContext {
 public:
  explicit ThermoContext(GraphPtr graph, double tol = 1e-13);

  const GraphPtr& graph() const { return graph_; }
  const IndependenceGraph& g() const { return *graph_; }
  const WeightedPolynomial& clique_poly() const { return clique_poly_; }
  // Clique polynomial as an ordinary integer polynomial in u = t^{1/scale}.
  const roots::IntPoly& clique_poly_u() const { return poly_u_; }
  const roots::IntPoly& squarefree_u() const { return squarefree_u_; }
  double beta_c() const { return critical_.beta; }
  const CriticalTemperature& critical() const { return critical_; }
  const Rational& eta() const { return eta_; }

 private:
  GraphPtr graph_;
  WeightedPolynomial clique_poly_;
  roots::IntPoly poly_u_;
  roots::IntPoly squarefree_u_;
  CriticalTemperature critical_;
  Rational eta_;
};

CriticalTemperature beta_critical_detail(const ThermoContext& ctx, double tol);
double beta_critical(const ThermoContext& ctx, double tol);

struct PartitionMethod {
  static PartitionMethod closed() { return PartitionMethod{}; }
  static PartitionMethod truncated(Rational cutoff) { return PartitionMethod{std::move(cutoff)}; }
  std::optional<Rational> cutoff;
};

double partition_function(const ThermoContext& ctx, double beta, const PartitionMethod& method);
double partition_function_closed(const ThermoContext& ctx, double beta);
double partition_function_truncated(const IndependenceGraph& g, double beta, const Rational& cutoff);
double partition_function_truncated(const GrowthTable& table, double beta);
// Closed minus truncated: the mass of all elements heavier than cutoff. A
// negative cutoff yields the full partition function.
double partition_tail(const ThermoContext& ctx, double beta, const Rational& cutoff);

double beta_critical_limsup_estimate(const ThermoContext& ctx, const Rational& cutoff);

struct RootInfo {
  double t = 0.0;
  double t_error = 0.0;
  double beta = 0.0;  // -ln t
  int multiplicity = 1;
  bool possibly_multiple = false;
  // Strictly between the smallest root and 1.
  bool subcritical_candidate = false;
};
std::vector<RootInfo> clique_roots_in_unit_interval(const ThermoContext& ctx, double tol);

// Sign analysis certificate that C has no root in (0, t) for the lower end t
// of the smallest root's isolating interval.
bool certify_no_root_below_smallest(const ThermoContext& ctx);

StateValue gibbs_value(const Trace& p, const Trace& q);
StateValue fock_state_value(const Trace& p, const Trace& q);

struct KmsIdentityReport {
  bool holds = false;
  StateValue lhs = StateValue::zero();
  StateValue rhs = StateValue::zero();
};
// N(p1)^b phi(v_p1 v_q1^* v_p2 v_q2^*) against N(q1)^b phi(v_q1 v_p1^* v_q2 v_p2^*),
// both reduced symbolically to e^{-beta r} or 0.
KmsIdentityReport kms_identity_check(const Trace& p1, const Trace& q1, const Trace& p2,
                                     const Trace& q2);

}  // namespace qlo

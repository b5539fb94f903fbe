#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "qlo/thermo.hpp"

namespace qlo {

using Complex = std::complex<double>;

// Sparse matrix as a row-major sorted list of nonzero entries.
class SparseOperator {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    Complex value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  explicit SparseOperator(std::size_t dim = 0) : dim_(dim) {}
  // Duplicate (row, col) pairs are summed; zeros are dropped.
  static SparseOperator from_entries(std::size_t dim, std::vector<Entry> entries);
  static SparseOperator identity(std::size_t dim);
  static SparseOperator diagonal(const std::vector<Complex>& values);
  // 0/1 matrix with a one at (row_of[c], c) for every column c with row_of[c] >= 0.
  // Rows must be distinct.
  static SparseOperator partial_permutation(const std::vector<std::ptrdiff_t>& row_of);

  std::size_t dim() const { return dim_; }
  std::size_t nnz() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }
  Complex at(std::size_t row, std::size_t col) const;
  bool is_diagonal() const;
  std::vector<Complex> diagonal_values() const;

  SparseOperator adjoint() const;
  SparseOperator scaled(Complex factor) const;

  friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b);
  friend SparseOperator operator+(const SparseOperator& a, const SparseOperator& b);
  friend SparseOperator operator-(const SparseOperator& a, const SparseOperator& b);
  friend bool operator==(const SparseOperator& a, const SparseOperator& b) = default;

 private:
  std::size_t dim_;
  std::vector<Entry> entries_;
};

// span{e_x : w(x) <= cutoff} with the basis in canonical order (e first).
class TruncatedRep {
 public:
  TruncatedRep(GraphPtr graph, Rational cutoff);

  const GraphPtr& graph() const { return graph_; }
  const Rational& cutoff() const { return cutoff_; }
  std::int64_t cutoff_units() const { return cutoff_units_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Trace>& basis() const { return basis_; }
  const Trace& element(std::size_t i) const { return basis_[i]; }
  std::optional<std::size_t> index_of(const Trace& x) const;

 private:
  GraphPtr graph_;
  Rational cutoff_;
  std::int64_t cutoff_units_;
  std::vector<Trace> basis_;
  std::unordered_map<Trace, std::size_t, TraceHash> index_;
};

TruncatedRep build_rep(const GraphPtr& g, const Rational& cutoff);

// L_p: e_x -> e_{px}, dropped when w(px) exceeds the cutoff.
SparseOperator left_op(const TruncatedRep& rep, const Trace& p);
// e_x -> e_{p^{-1}x} when p <= x, else 0; built directly, not by transposing.
SparseOperator left_op_adjoint(const TruncatedRep& rep, const Trace& p);

// Indicator of {x : p <= x} over the basis.
std::vector<std::uint8_t> divisibility_mask(const TruncatedRep& rep, const Trace& p);
SparseOperator range_projection(const TruncatedRep& rep, const Trace& p);

struct NicaReport {
  bool holds = false;
  std::size_t lhs_rank = 0;
  std::size_t rhs_rank = 0;
};
NicaReport nica_report(const TruncatedRep& rep, const Trace& p, const Trace& q);
bool nica_check(const TruncatedRep& rep, const Trace& p, const Trace& q);

// Both sides of the vacuum identity as exact integer diagonals.
struct VacuumForms {
  std::vector<std::int64_t> product_form;  // prod_s (1 - L_s L_s^*)
  std::vector<std::int64_t> clique_sum;    // sum_F (-1)^|F| L_vF L_vF^*
  std::size_t clique_terms = 0;
};
VacuumForms vacuum_forms(const TruncatedRep& rep);

// Thrown when the two exact forms of the vacuum projection disagree.
class IdentityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};
SparseOperator vacuum_projection(const TruncatedRep& rep);

SparseOperator density(const TruncatedRep& rep, double beta);
// U_t = exp(itH).
SparseOperator phase_operator(const TruncatedRep& rep, double t);

// Tr(A e^{-beta H}) / Tr(e^{-beta H}) over the truncated basis.
Complex gibbs_numeric(const TruncatedRep& rep, const SparseOperator& a, double beta);

// Upper bound on |gibbs_numeric(A) - psi_beta(A)| for a monomial A whose
// intermediate weights exceed w(x) by at most shift (exact full-space value
// psi_beta); requires beta > beta_c.
double gibbs_tail_bound(const ThermoContext& ctx, const TruncatedRep& rep, double beta,
                        const Rational& shift);

// e^{iz(w(p) - w(q))}.
Complex dynamics_factor(const Trace& p, const Trace& q, Complex z);

// L_p L_q^* on the truncated space.
SparseOperator monomial(const TruncatedRep& rep, const Trace& p, const Trace& q);

struct KmsNumericReport {
  double residual = 0.0;
  double bound = 0.0;
  bool within_bound() const { return residual <= bound; }
};
KmsNumericReport kms_numeric_check(const ThermoContext& ctx, const TruncatedRep& rep,
                                   const Trace& p1, const Trace& q1, const Trace& p2,
                                   const Trace& q2, double beta);

namespace serial {
Complex gibbs_numeric(const TruncatedRep& rep, const SparseOperator& a, double beta);
std::vector<std::uint8_t> divisibility_mask(const TruncatedRep& rep, const Trace& p);
}  // namespace serial

}  // namespace qlo

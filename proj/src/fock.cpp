#include "qlo/fock.hpp"

#include <algorithm>
#include <cmath>

#include "qlo/errors.hpp"
#include "qlo/parallel.hpp"

namespace qlo {
namespace {

bool row_major_less(const SparseOperator::Entry& a, const SparseOperator::Entry& b) {
  return a.row != b.row ? a.row < b.row : a.col < b.col;
}

void require_rep_graph(const TruncatedRep& rep, const Trace& p, const char* op) {
  if (p.graph() != rep.graph() && !(*p.graph() == *rep.graph())) {
    throw ValidationError(std::string(op) + ": trace belongs to a different graph");
  }
}

std::vector<double> weights_of(const TruncatedRep& rep) {
  std::vector<double> w(rep.dim());
  for (std::size_t i = 0; i < rep.dim(); ++i) w[i] = rep.element(i).weight_double();
  return w;
}

Complex blocked_weighted_trace(const std::vector<Complex>& diag, const std::vector<double>& weights,
                               double beta, Complex* denominator) {
  const std::size_t n = diag.size();
  const std::size_t blocks = (n + parallel::kReductionBlock - 1) / parallel::kReductionBlock;
  std::vector<Complex> num(blocks);
  std::vector<double> den(blocks);
  const auto nb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * parallel::kReductionBlock;
    const std::size_t end = std::min(n, begin + parallel::kReductionBlock);
    Complex acc_num = 0.0;
    double acc_den = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      const double rho = std::exp(-beta * weights[i]);
      acc_num += diag[i] * rho;
      acc_den += rho;
    }
    num[static_cast<std::size_t>(b)] = acc_num;
    den[static_cast<std::size_t>(b)] = acc_den;
  }
  *denominator = parallel::ordered_sum(den);
  return parallel::ordered_sum(num);
}

}  // namespace

SparseOperator SparseOperator::from_entries(std::size_t dim, std::vector<Entry> entries) {
  SparseOperator op(dim);
  for (const auto& e : entries) {
    if (e.row >= dim || e.col >= dim) throw ValidationError("sparse entry out of range");
  }
  std::sort(entries.begin(), entries.end(), row_major_less);
  for (auto& e : entries) {
    if (!op.entries_.empty() && op.entries_.back().row == e.row && op.entries_.back().col == e.col) {
      op.entries_.back().value += e.value;
    } else {
      op.entries_.push_back(e);
    }
  }
  std::erase_if(op.entries_, [](const Entry& e) { return e.value == Complex(0.0); });
  return op;
}

SparseOperator SparseOperator::partial_permutation(const std::vector<std::ptrdiff_t>& row_of) {
  const std::size_t n = row_of.size();
  std::vector<std::ptrdiff_t> col_of(n, -1);
  for (std::size_t c = 0; c < n; ++c) {
    const std::ptrdiff_t r = row_of[c];
    if (r < 0) continue;
    if (static_cast<std::size_t>(r) >= n) throw ValidationError("sparse entry out of range");
    if (col_of[static_cast<std::size_t>(r)] >= 0) throw ValidationError("partial permutation has a repeated row");
    col_of[static_cast<std::size_t>(r)] = static_cast<std::ptrdiff_t>(c);
  }
  SparseOperator op(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (col_of[r] >= 0) op.entries_.push_back({r, static_cast<std::size_t>(col_of[r]), 1.0});
  }
  return op;
}

SparseOperator SparseOperator::identity(std::size_t dim) {
  return diagonal(std::vector<Complex>(dim, Complex(1.0)));
}

SparseOperator SparseOperator::diagonal(const std::vector<Complex>& values) {
  SparseOperator op(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != Complex(0.0)) op.entries_.push_back({i, i, values[i]});
  }
  return op;
}

Complex SparseOperator::at(std::size_t row, std::size_t col) const {
  Entry probe{row, col, 0.0};
  auto it = std::lower_bound(entries_.begin(), entries_.end(), probe, row_major_less);
  if (it != entries_.end() && it->row == row && it->col == col) return it->value;
  return 0.0;
}

bool SparseOperator::is_diagonal() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.row == e.col; });
}

std::vector<Complex> SparseOperator::diagonal_values() const {
  std::vector<Complex> d(dim_);
  for (const auto& e : entries_)
    if (e.row == e.col) d[e.row] = e.value;
  return d;
}

SparseOperator SparseOperator::adjoint() const {
  std::vector<Entry> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back({e.col, e.row, std::conj(e.value)});
  std::sort(out.begin(), out.end(), row_major_less);
  SparseOperator op(dim_);
  op.entries_ = std::move(out);
  return op;
}

SparseOperator SparseOperator::scaled(Complex factor) const {
  std::vector<Entry> out = entries_;
  for (auto& e : out) e.value *= factor;
  return from_entries(dim_, std::move(out));
}

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
  if (a.dim_ != b.dim_) throw ValidationError("operator dimensions differ");
  // Column index of a: entries of a grouped by column.
  std::vector<std::size_t> start(a.dim_ + 1, 0);
  for (const auto& e : a.entries_) ++start[e.col + 1];
  for (std::size_t i = 0; i < a.dim_; ++i) start[i + 1] += start[i];
  std::vector<const SparseOperator::Entry*> by_col(a.entries_.size());
  std::vector<std::size_t> fill(start.begin(), start.end() - 1);
  for (const auto& e : a.entries_) by_col[fill[e.col]++] = &e;

  std::vector<SparseOperator::Entry> out;
  for (const auto& eb : b.entries_) {
    for (std::size_t k = start[eb.row]; k < start[eb.row + 1]; ++k) {
      const auto* ea = by_col[k];
      out.push_back({ea->row, eb.col, ea->value * eb.value});
    }
  }
  return SparseOperator::from_entries(a.dim_, std::move(out));
}

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
  if (a.dim_ != b.dim_) throw ValidationError("operator dimensions differ");
  std::vector<SparseOperator::Entry> out = a.entries_;
  out.insert(out.end(), b.entries_.begin(), b.entries_.end());
  return SparseOperator::from_entries(a.dim_, std::move(out));
}

SparseOperator operator-(const SparseOperator& a, const SparseOperator& b) { return a + b.scaled(-1.0); }

TruncatedRep::TruncatedRep(GraphPtr graph, Rational cutoff)
    : graph_(std::move(graph)),
      cutoff_(std::move(cutoff)),
      cutoff_units_(qlo::cutoff_units(cutoff_, graph_->scale())),
      basis_(enumerate_up_to(graph_, cutoff_)) {
  index_.reserve(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
}

std::optional<std::size_t> TruncatedRep::index_of(const Trace& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TruncatedRep build_rep(const GraphPtr& g, const Rational& cutoff) { return TruncatedRep(g, cutoff); }

SparseOperator left_op(const TruncatedRep& rep, const Trace& p) {
  require_rep_graph(rep, p, "left_op");
  const std::size_t n = rep.dim();
  std::vector<std::ptrdiff_t> target(n, -1);
  const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < sn; ++i) {
    const Trace& x = rep.element(static_cast<std::size_t>(i));
    if (x.weight_units() + p.weight_units() > rep.cutoff_units()) continue;
    target[static_cast<std::size_t>(i)] = static_cast<std::ptrdiff_t>(*rep.index_of(multiply(p, x)));
  }
  return SparseOperator::partial_permutation(target);
}

SparseOperator left_op_adjoint(const TruncatedRep& rep, const Trace& p) {
  require_rep_graph(rep, p, "left_op_adjoint");
  const std::size_t n = rep.dim();
  std::vector<std::ptrdiff_t> target(n, -1);
  const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < sn; ++i) {
    const Trace& x = rep.element(static_cast<std::size_t>(i));
    if (!divides(p, x)) continue;
    target[static_cast<std::size_t>(i)] = static_cast<std::ptrdiff_t>(*rep.index_of(left_quotient(p, x)));
  }
  return SparseOperator::partial_permutation(target);
}

std::vector<std::uint8_t> divisibility_mask(const TruncatedRep& rep, const Trace& p) {
  require_rep_graph(rep, p, "divisibility_mask");
  std::vector<std::uint8_t> mask(rep.dim(), 0);
  const auto sn = static_cast<std::ptrdiff_t>(rep.dim());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < sn; ++i) {
    mask[static_cast<std::size_t>(i)] = divides(p, rep.element(static_cast<std::size_t>(i))) ? 1 : 0;
  }
  return mask;
}

SparseOperator range_projection(const TruncatedRep& rep, const Trace& p) {
  const auto mask = divisibility_mask(rep, p);
  std::vector<Complex> diag(mask.begin(), mask.end());
  return SparseOperator::diagonal(diag);
}

NicaReport nica_report(const TruncatedRep& rep, const Trace& p, const Trace& q) {
  const auto mp = divisibility_mask(rep, p);
  const auto mq = divisibility_mask(rep, q);
  const auto j = join(p, q);
  std::vector<std::uint8_t> rhs(rep.dim(), 0);
  if (j.is_finite()) rhs = divisibility_mask(rep, j.value());
  NicaReport report;
  report.holds = true;
  for (std::size_t i = 0; i < rep.dim(); ++i) {
    const std::uint8_t lhs = mp[i] & mq[i];
    report.lhs_rank += lhs;
    report.rhs_rank += rhs[i];
    if (lhs != rhs[i]) report.holds = false;
  }
  return report;
}

bool nica_check(const TruncatedRep& rep, const Trace& p, const Trace& q) {
  return nica_report(rep, p, q).holds;
}

VacuumForms vacuum_forms(const TruncatedRep& rep) {
  const auto& g = *rep.graph();
  VacuumForms forms;
  forms.product_form.assign(rep.dim(), 1);
  forms.clique_sum.assign(rep.dim(), 0);
  for (std::size_t s = 0; s < g.size(); ++s) {
    const auto mask = divisibility_mask(rep, Trace::letter(rep.graph(), static_cast<Generator>(s)));
    for (std::size_t i = 0; i < rep.dim(); ++i) forms.product_form[i] *= 1 - mask[i];
  }
  std::vector<LetterSet> cliques = nonempty_cliques(g);
  cliques.insert(cliques.begin(), LetterSet{0});
  forms.clique_terms = cliques.size();
  for (LetterSet clique : cliques) {
    Trace top(rep.graph());
    for_each_letter(clique, [&](Generator s) { top.push_back(s); });
    const std::int64_t sign = popcount(clique) % 2 == 0 ? 1 : -1;
    const auto mask = divisibility_mask(rep, top);
    for (std::size_t i = 0; i < rep.dim(); ++i) forms.clique_sum[i] += sign * mask[i];
  }
  return forms;
}

SparseOperator vacuum_projection(const TruncatedRep& rep) {
  const auto forms = vacuum_forms(rep);
  if (forms.product_form != forms.clique_sum) {
    throw IdentityViolation("vacuum projection: product form differs from clique sum");
  }
  for (std::size_t i = 0; i < rep.dim(); ++i) {
    if (forms.product_form[i] != (i == 0 ? 1 : 0)) {
      throw IdentityViolation("vacuum projection is not the projection onto e");
    }
  }
  std::vector<Complex> diag(rep.dim(), 0.0);
  diag[0] = 1.0;
  return SparseOperator::diagonal(diag);
}

SparseOperator density(const TruncatedRep& rep, double beta) {
  if (!(beta >= 0.0)) throw ValidationError("density needs beta >= 0");
  std::vector<Complex> diag(rep.dim());
  for (std::size_t i = 0; i < rep.dim(); ++i) diag[i] = std::exp(-beta * rep.element(i).weight_double());
  return SparseOperator::diagonal(diag);
}

SparseOperator phase_operator(const TruncatedRep& rep, double t) {
  std::vector<Complex> diag(rep.dim());
  for (std::size_t i = 0; i < rep.dim(); ++i) {
    diag[i] = std::polar(1.0, t * rep.element(i).weight_double());
  }
  return SparseOperator::diagonal(diag);
}

Complex gibbs_numeric(const TruncatedRep& rep, const SparseOperator& a, double beta) {
  if (a.dim() != rep.dim()) throw ValidationError("gibbs_numeric: operator dimension mismatch");
  Complex den = 0.0;
  const Complex num = blocked_weighted_trace(a.diagonal_values(), weights_of(rep), beta, &den);
  if (den == Complex(0.0)) throw ComputationError("gibbs_numeric: zero partition function");
  return num / den;
}

double gibbs_tail_bound(const ThermoContext& ctx, const TruncatedRep& rep, double beta,
                        const Rational& shift) {
  const double z_trunc = partition_function_truncated(ctx.g(), beta, rep.cutoff());
  const double tail_shifted = partition_tail(ctx, beta, rep.cutoff() - shift);
  const double tail = partition_tail(ctx, beta, rep.cutoff());
  return (tail_shifted + tail) / z_trunc;
}

Complex dynamics_factor(const Trace& p, const Trace& q, Complex z) {
  const double dw = p.weight_double() - q.weight_double();
  return std::exp(Complex(0.0, 1.0) * z * dw);
}

// Single pass: e_x -> e_{p q^{-1} x} when q <= x and p q^{-1} x fits.
SparseOperator monomial(const TruncatedRep& rep, const Trace& p, const Trace& q) {
  require_rep_graph(rep, p, "monomial");
  require_rep_graph(rep, q, "monomial");
  const std::size_t n = rep.dim();
  std::vector<std::ptrdiff_t> target(n, -1);
  const auto sn = static_cast<std::ptrdiff_t>(n);
  const std::int64_t room = rep.cutoff_units() - p.weight_units();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < sn; ++i) {
    const Trace& x = rep.element(static_cast<std::size_t>(i));
    if (x.weight_units() - q.weight_units() > room || !divides(q, x)) continue;
    target[static_cast<std::size_t>(i)] = static_cast<std::ptrdiff_t>(*rep.index_of(replace_prefix(q, p, x)));
  }
  return SparseOperator::partial_permutation(target);
}

KmsNumericReport kms_numeric_check(const ThermoContext& ctx, const TruncatedRep& rep,
                                   const Trace& p1, const Trace& q1, const Trace& p2,
                                   const Trace& q2, double beta) {
  const auto& crit = ctx.critical();
  if (!(beta > crit.beta + crit.error_bound)) {
    throw ComputationError("kms_numeric_check needs beta > beta_c");
  }
  const auto a = monomial(rep, p1, q1);
  const auto b = monomial(rep, p2, q2);
  const Complex twist = dynamics_factor(p1, q1, Complex(0.0, beta));
  const Complex ab = gibbs_numeric(rep, a * b, beta);
  const Complex ba = gibbs_numeric(rep, b * a, beta);
  KmsNumericReport report;
  report.residual = std::abs(ab - twist * ba);
  const Rational shift = std::max(p1.weight(), p2.weight());
  report.bound = (1.0 + std::abs(twist)) * gibbs_tail_bound(ctx, rep, beta, shift);
  return report;
}

namespace serial {

Complex gibbs_numeric(const TruncatedRep& rep, const SparseOperator& a, double beta) {
  const auto diag = a.diagonal_values();
  Complex num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < rep.dim(); ++i) {
    const double rho = std::exp(-beta * rep.element(i).weight_double());
    num += diag[i] * rho;
    den += rho;
  }
  return num / den;
}

std::vector<std::uint8_t> divisibility_mask(const TruncatedRep& rep, const Trace& p) {
  std::vector<std::uint8_t> mask(rep.dim(), 0);
  for (std::size_t i = 0; i < rep.dim(); ++i) mask[i] = divides(p, rep.element(i)) ? 1 : 0;
  return mask;
}

}  // namespace serial
}  // namespace qlo

#include "qbm/gaussian_algebra.hpp"

#include <cmath>
#include <numbers>

namespace qbm {

GibbsKernel::GibbsKernel(const PropagatorTable& prop, const CorrelationTable& corr)
    : prop_(&prop), corr_(&corr), grid_(prop.grid) {
  require_same_grid(prop.grid, corr.grid, "GibbsKernel");
}

Complex GibbsKernel::covariance(OperatorRef left, OperatorRef right) const {
  if (left.time_index >= grid_.size || right.time_index >= grid_.size)
    throw std::invalid_argument("GibbsKernel: time index off the grid");
  const auto li = static_cast<std::ptrdiff_t>(left.time_index);
  const auto ri = static_cast<std::ptrdiff_t>(right.time_index);
  const std::ptrdiff_t d = li - ri;
  const double sgn = d > 0 ? 1.0 : (d < 0 ? -1.0 : 0.0);
  const std::size_t m = static_cast<std::size_t>(d >= 0 ? d : -d);
  const double s = corr_->s[m], s1 = corr_->s1[m], s2 = corr_->s2[m];
  const double g = prop_->g[m], g1 = prop_->g1[m], g2 = prop_->g2[m];
  const bool lx = left.kind == Kind::position;
  const bool rx = right.kind == Kind::position;
  if (lx && rx) return {s, -0.5 * sgn * g};
  if (lx && !rx) return {-sgn * s1, 0.5 * g1};
  if (!lx && rx) return {sgn * s1, -0.5 * g1};
  return {-s2, 0.5 * sgn * g2};
}

Complex GibbsKernel::commutator(OperatorRef a, OperatorRef b) const {
  return covariance(a, b) - covariance(b, a);
}

MergeResult merge_exponentials(const GibbsKernel& kernel, std::span<const LinearForm> forms) {
  MergeResult out;
  out.phase = {0.0, 0.0};
  for (std::size_t j = 0; j < forms.size(); ++j) {
    for (const auto& term : forms[j].terms) out.total.terms.push_back(term);
    for (std::size_t k = j + 1; k < forms.size(); ++k) {
      for (const auto& a : forms[j].terms)
        for (const auto& b : forms[k].terms)
          out.phase += 0.5 * a.coeff * b.coeff * kernel.commutator(a.op, b.op);
    }
  }
  return out;
}

Complex gaussian_expectation(const GibbsKernel& kernel, const LinearForm& form) {
  Complex second{0.0, 0.0};
  for (const auto& a : form.terms)
    for (const auto& b : form.terms)
      second += a.coeff * b.coeff * kernel.covariance(a.op, b.op);
  return std::exp(0.5 * second);
}

ProjectorSpec vacuum_projector() { return {0.0, 1.0}; }

ProjectorSpec displaced_squeezed(double displacement, double squeeze) {
  if (!(squeeze > 0.0)) throw std::invalid_argument("displaced_squeezed: squeeze must be positive");
  return {displacement, squeeze};
}

Complex GOrderedRep::evaluate(double P, double Q) const {
  const Complex expo(-0.5 * (delta_x * P * P + delta_p * Q * Q),
                     -displacement * P + cross_coefficient() * P * Q);
  return std::exp(expo);
}

GOrderedRep wigner_rep(const ProjectorSpec& op, Ordering g) {
  if (!(op.squeeze > 0.0)) throw std::invalid_argument("wigner_rep: squeeze must be positive");
  GOrderedRep rep;
  rep.ordering = g;
  rep.delta_x = op.delta_x();
  rep.delta_p = op.delta_p();
  rep.displacement = op.displacement;
  return rep;
}

namespace {

// Shared assembly of the phase-space exponent over the insertion variables
// z = (P_1, Q_1, ..., P_m, Q_m), with an optional external characteristic
// probe exp(-i (x(t) P + p(t) Q)) whose P, Q stay symbolic:
//   exponent = -1/2 z^T M z + (b0 + P bP + Q bQ)^T z + c(P, Q).
struct Assembly {
  Eigen::MatrixXcd m;
  Eigen::VectorXcd b0, bp, bq;
  Complex c0{0, 0}, cp{0, 0}, cq{0, 0}, cpp{0, 0}, cpq{0, 0}, cqq{0, 0};
  int dim = 0;
  std::size_t insertion_count = 0;
};

Assembly assemble(const GibbsKernel& kernel, std::span<const Insertion> insertions,
                  const std::size_t* probe_index) {
  const std::size_t m = insertions.size();
  if (m == 0) throw std::invalid_argument("phase-space assembly: empty insertion list");
  const int dim = static_cast<int>(2 * m);
  if (dim > SymmetricQuadraticForm::max_dimension)
    throw std::invalid_argument("phase-space assembly: dimension cap 16 exceeded (too many insertions)");

  Assembly as;
  as.dim = dim;
  as.insertion_count = m;
  as.m = Eigen::MatrixXcd::Zero(dim, dim);
  as.b0 = Eigen::VectorXcd::Zero(dim);
  as.bp = Eigen::VectorXcd::Zero(dim);
  as.bq = Eigen::VectorXcd::Zero(dim);

  auto op_of = [&](std::size_t var) {
    const std::size_t ins = var / 2;
    return OperatorRef{var % 2 == 0 ? Kind::position : Kind::momentum,
                       insertions[ins].time_index};
  };

  // Projector Gaussians and displacement terms.
  for (std::size_t j = 0; j < m; ++j) {
    const auto& op = insertions[j].op;
    as.m(2 * j, 2 * j) += op.delta_x();
    as.m(2 * j + 1, 2 * j + 1) += op.delta_p();
    as.b0(2 * j) += Complex(0.0, -op.displacement);
  }

  // Gibbs expectation of the merged exponential: the ordered kernel enters
  // the quadratic form directly, M_ab += C(op_a, op_b) for product position
  // a <= b (symmetrized within one insertion).
  for (int a = 0; a < dim; ++a) {
    const OperatorRef oa = op_of(a);
    as.m(a, a) += kernel.covariance(oa, oa);
    for (int b = a + 1; b < dim; ++b) {
      const OperatorRef ob = op_of(b);
      Complex cab;
      if (a / 2 == b / 2) {
        cab = 0.5 * (kernel.covariance(oa, ob) + kernel.covariance(ob, oa));
      } else {
        cab = kernel.covariance(oa, ob);
      }
      as.m(a, b) += cab;
      as.m(b, a) += cab;
    }
  }

  if (probe_index != nullptr) {
    // The probe sits between the daggered and undaggered halves of the
    // product; callers arrange insertions symmetrically around it.
    const std::size_t half = m / 2;
    const OperatorRef px{Kind::position, *probe_index};
    const OperatorRef pp{Kind::momentum, *probe_index};
    for (int a = 0; a < dim; ++a) {
      const OperatorRef oa = op_of(a);
      const bool before = static_cast<std::size_t>(a) < 2 * half;
      const Complex cx = before ? kernel.covariance(oa, px) : kernel.covariance(px, oa);
      const Complex cq = before ? kernel.covariance(oa, pp) : kernel.covariance(pp, oa);
      as.bp(a) += cx;
      as.bq(a) += cq;
    }
    as.cpp += -0.5 * kernel.covariance(px, px);
    as.cqq += -0.5 * kernel.covariance(pp, pp);
    as.cpq += -0.5 * (kernel.covariance(px, pp) + kernel.covariance(pp, px));
  }
  return as;
}

}  // namespace

JointQuantity insertion_product_expectation(const GibbsKernel& kernel,
                                            std::span<const Insertion> insertions) {
  const Assembly as = assemble(kernel, insertions, nullptr);
  GaussianReducer red(as.m);
  const Complex log_value = red.log_normalization() + 0.5 * red.quad(as.b0, as.b0) + as.c0 -
                            static_cast<double>(as.insertion_count) *
                                std::log(2.0 * std::numbers::pi);
  const Complex value = std::exp(log_value);

  JointQuantity out;
  out.value = value.real();
  out.imag_residual = std::abs(value.imag());
  out.dimension = as.dim;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(as.m);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-12 * sv(0);
  out.effective_rank = static_cast<int>((sv.array() > cutoff).count());
  return out;
}

PreparedState prepared_state(const GibbsKernel& kernel, const ProjectorSpec& prep,
                             std::size_t prep_index, std::size_t t_index) {
  const std::vector<Insertion> ins = {{prep, prep_index}, {prep, prep_index}};
  const Assembly as = assemble(kernel, ins, &t_index);
  GaussianReducer red(as.m);

  const Eigen::VectorXcd s0 = red.solve(as.b0);
  const Eigen::VectorXcd sp = red.solve(as.bp);
  const Eigen::VectorXcd sq = red.solve(as.bq);
  auto dot = [](const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
    return Complex((u.transpose() * v)(0, 0));
  };

  // log W(P, Q) minus its value at P = Q = 0 (the preparation normalization).
  const Complex lp = dot(as.b0, sp) + as.cp;
  const Complex lq = dot(as.b0, sq) + as.cq;
  const Complex lpp = 0.5 * dot(as.bp, sp) + as.cpp;
  const Complex lpq = dot(as.bp, sq) + as.cpq;
  const Complex lqq = 0.5 * dot(as.bq, sq) + as.cqq;

  PreparedState out;
  out.state.var_x = -2.0 * lpp.real();
  out.state.cov_xp = -lpq.real();
  out.state.var_p = -2.0 * lqq.real();
  out.state.mean_x = -lp.imag();
  out.state.mean_p = -lq.imag();
  double residual = 0.0;
  residual = std::max(residual, std::abs(lpp.imag()));
  residual = std::max(residual, std::abs(lpq.imag()));
  residual = std::max(residual, std::abs(lqq.imag()));
  residual = std::max(residual, std::abs(lp.real()));
  residual = std::max(residual, std::abs(lq.real()));
  out.imag_residual = residual;
  return out;
}

}  // namespace qbm

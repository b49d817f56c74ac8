#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qbm/correlation.hpp"
#include "qbm/numerics.hpp"
#include "qbm/propagator.hpp"
#include "qbm/scenarios.hpp"

namespace qbm {

enum class Kind { position, momentum };

/// Canonical operator x or p at a tagged grid time.
struct OperatorRef {
  Kind kind = Kind::position;
  std::size_t time_index = 0;
};

/// Ordered two-point functions of the Gibbs state,
///   <x(t) x(t')> = S(t-t') - (i/2) G(t-t')   (t >= t'),
/// with momentum entries from time derivatives of S and G. The first
/// argument is the leftmost operator in the product.
class GibbsKernel {
 public:
  GibbsKernel(const PropagatorTable& prop, const CorrelationTable& corr);

  Complex covariance(OperatorRef left, OperatorRef right) const;
  Complex commutator(OperatorRef a, OperatorRef b) const;  // scalar, = cov(a,b) - cov(b,a)

  const TimeGrid& grid() const { return grid_; }
  double x2() const { return corr_->x2; }
  double p2() const { return corr_->p2; }

 private:
  const PropagatorTable* prop_;
  const CorrelationTable* corr_;
  TimeGrid grid_;
};

/// Complex linear combination of canonical operators at tagged times.
struct LinearForm {
  struct Term {
    OperatorRef op;
    Complex coeff;
  };
  std::vector<Term> terms;

  LinearForm& add(Kind kind, std::size_t time_index, Complex coeff) {
    terms.push_back({{kind, time_index}, coeff});
    return *this;
  }
};

/// prod_k exp(A_k) = exp(phase) exp(sum_k A_k); the scalar phase is
/// (1/2) sum_{j<k} [A_j, A_k] from the commutator kernel.
struct MergeResult {
  LinearForm total;
  Complex phase;
};

MergeResult merge_exponentials(const GibbsKernel& kernel, std::span<const LinearForm> forms);

/// <exp(A)> over the (zero-mean) Gibbs state = exp(<A^2>/2).
Complex gaussian_expectation(const GibbsKernel& kernel, const LinearForm& form);

/// Displaced squeezed projector |psi><psi|; vacuum is {0, 1}.
struct ProjectorSpec {
  double displacement = 0.0;
  double squeeze = 1.0;  // lambda

  double delta_x() const { return 0.5 / squeeze; }
  double delta_p() const { return 0.5 * squeeze; }
};

ProjectorSpec vacuum_projector();
ProjectorSpec displaced_squeezed(double displacement, double squeeze);

enum class Ordering : int { anti_normal = -1, wigner = 0, normal = +1 };

/// g-ordered characteristic function of a projector: a Gaussian exponent plus
/// the ordering-induced cross term,
///   A_g(P,Q) = exp(-(delta_x P^2 + delta_p Q^2)/2 - i x0 P - i (g/2) P Q).
struct GOrderedRep {
  Ordering ordering = Ordering::wigner;
  double delta_x = 0.5;
  double delta_p = 0.5;
  double displacement = 0.0;

  Complex evaluate(double P, double Q) const;
  /// Coefficient of the i P Q term in the exponent.
  double cross_coefficient() const { return -0.5 * static_cast<double>(static_cast<int>(ordering)); }
};

GOrderedRep wigner_rep(const ProjectorSpec& op, Ordering g);

/// One projector inserted into an operator string at a grid time (Wigner
/// representation, two integration variables).
struct Insertion {
  ProjectorSpec op;
  std::size_t time_index = 0;
};

/// <O_1 O_2 ... O_m> over the Gibbs state: exponentials merged through the
/// commutator phase, the Gaussian expectation taken, and the remaining
/// 2m-dimensional integral reduced in closed form.
struct JointQuantity {
  double value = 0.0;
  double imag_residual = 0.0;  // |Im| of the log before taking the real part
  int dimension = 0;           // variables before reduction
  int effective_rank = 0;      // numerical rank of the quadratic form
};

JointQuantity insertion_product_expectation(const GibbsKernel& kernel,
                                            std::span<const Insertion> insertions);

/// Wigner characteristic function of the state prepared by op at prep_index
/// and evolved to t_index:  <f^dag e^{-i(x P + p Q)} f> / Z, reduced to a
/// Gaussian state. imag_residual reports how far the extracted log-exponent
/// coefficients sit from real.
struct PreparedState {
  GaussianState state;
  double imag_residual = 0.0;
};

PreparedState prepared_state(const GibbsKernel& kernel, const ProjectorSpec& prep,
                             std::size_t prep_index, std::size_t t_index);

}  // namespace qbm

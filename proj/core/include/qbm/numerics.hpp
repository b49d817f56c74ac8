#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qbm/errors.hpp"

namespace qbm {

using Complex = std::complex<double>;

/// Dawson function D(x) = e^{-x^2} \int_0^x e^{u^2} du, accurate to ~1e-13.
double dawson(double x);

/// Imaginary error function. Overflows for |x| beyond ~26.6; use erfi_scaled
/// when the result multiplies a Gaussian.
double erfi(double x);

/// e^{-x^2} erfi(x) = 2 D(x) / sqrt(pi). Finite for all x.
double erfi_scaled(double x);

enum class TrigWeight { none, cosine, sine };

/// Controls for the semi-infinite oscillatory quadrature and the table
/// builders driven by it.
struct QuadratureSpec {
  double abs_tolerance = 1e-10;
  double cutoff_multiple = 8.0;  // upper limit in units of the bath cutoff
  int nodes_per_period = 12;     // minimum trig sampling density
  int max_panels = 1 << 18;      // subdivision budget before reporting failure

  void validate() const;
};

/// Integrates f(w) * weight(w t) over w in [0, omega_upper] with panel-based
/// Gauss-Legendre rules. Panels start fine enough to hold nodes_per_period
/// points per oscillation and bisect adaptively until the absolute error
/// estimate meets spec.abs_tolerance. Node placement is deterministic for
/// identical inputs. Throws convergence_error when the panel budget runs out.
double integrate_omega(const std::function<double(double)>& f, TrigWeight weight,
                       double t, double omega_upper, const QuadratureSpec& spec = {});

/// 16-point Gauss-Legendre nodes/weights on [-1, 1] (computed once).
std::span<const double> gauss_legendre_nodes();
std::span<const double> gauss_legendre_weights();

/// Sums values in a deterministic pairwise order (bit-stable, low roundoff).
double pairwise_sum(std::span<const double> values);

/// Cumulative integral of a tabulated integrand on a uniform grid, exact for
/// quadratics through neighbouring points. Result[i] = integral over [0, i*h].
std::vector<double> cumulative_integral(std::span<const double> f, double h);

/// Exponent  -(1/2) z^T M z + b^T z + c  of a Gaussian integrand over R^n,
/// n <= 16. The matrix is stored symmetric; set() symmetrizes its argument.
struct SymmetricQuadraticForm {
  Eigen::MatrixXcd matrix;
  Eigen::VectorXcd linear;
  Complex constant{0.0, 0.0};

  static constexpr int max_dimension = 16;

  SymmetricQuadraticForm() = default;
  explicit SymmetricQuadraticForm(int dimension);

  int dimension() const { return static_cast<int>(matrix.rows()); }
  void set_matrix(const Eigen::MatrixXcd& m);  // symmetrizes, checks size
};

/// Factorization M = L (I + i C) L^T with L = chol(Re M) and C real symmetric.
/// Valid whenever Re(M) is positive definite, which is the convergence
/// condition of the Gaussian integral; otherwise throws std::domain_error
/// naming the offending eigenvalue.
class GaussianReducer {
 public:
  explicit GaussianReducer(const Eigen::MatrixXcd& m);

  int dimension() const { return n_; }

  /// log of integral( exp(-1/2 z^T M z) d^n z ) = (n/2) log(2 pi) - 1/2 log det M,
  /// principal branch (continuous from real positive definite M).
  Complex log_normalization() const { return log_norm_; }

  Eigen::VectorXcd solve(const Eigen::VectorXcd& rhs) const;  // M^{-1} rhs

  /// Symmetric bilinear form u^T M^{-1} v (no conjugation).
  Complex quad(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) const;

 private:
  int n_ = 0;
  bool has_imag_ = false;
  Eigen::MatrixXd lower_;       // L
  Eigen::MatrixXd eigvecs_;     // Q with C = Q diag(lam) Q^T
  Eigen::VectorXd eigvals_;
  Complex log_norm_{0.0, 0.0};
};

/// Closed form of the Gaussian integral:
///   (2 pi)^{n/2} det(M)^{-1/2} exp( 1/2 b^T M^{-1} b + c ).
Complex gaussian_reduce(const SymmetricQuadraticForm& form);

/// Same value in log space (for products of many reductions).
Complex log_gaussian_reduce(const SymmetricQuadraticForm& form);

/// Runs fn(i) for i in [0, n), splitting across available hardware threads.
/// Outputs must be written to disjoint slots so the result is order-free.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace qbm

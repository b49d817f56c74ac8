#include "qbm/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "qbm/numerics.hpp"

namespace qbm {

DiscreteBath DiscreteBath::midpoint(const BathSpectrum& bath, std::size_t modes, double omega_max) {
  if (modes < 2) throw std::invalid_argument("DiscreteBath: need at least two modes");
  if (!(omega_max > 0.0)) throw std::invalid_argument("DiscreteBath: omega_max must be positive");
  DiscreteBath out;
  out.omega.resize(modes);
  out.coupling.resize(modes);
  const double dw = omega_max / static_cast<double>(modes);
  for (std::size_t j = 0; j < modes; ++j) {
    const double w = (static_cast<double>(j) + 0.5) * dw;
    out.omega[j] = w;
    out.coupling[j] = 2.0 / std::numbers::pi * bath.friction_real(w) * dw;
  }
  return out;
}

double DiscreteBath::recurrence_time() const {
  const double dw = omega.size() > 1 ? omega[1] - omega[0] : omega[0] * 2.0;
  return 2.0 * std::numbers::pi / dw;
}

namespace {

NormalModes modes_dense(const DiscreteBath& dbath, const OscillatorParams& osc) {
  const std::size_t j = dbath.omega.size();
  const std::size_t n = j + 1;
  Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(n, n);
  double head = osc.spring_k;
  for (std::size_t i = 0; i < j; ++i) {
    const double w = dbath.omega[i];
    const double c = dbath.coupling[i];
    head += c;
    phi(0, i + 1) = phi(i + 1, 0) = -w * std::sqrt(c);
    phi(i + 1, i + 1) = w * w;
  }
  phi(0, 0) = head;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(phi);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("normal_modes: eigendecomposition failed");

  NormalModes out;
  out.frequency.resize(n);
  out.overlap.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lam = es.eigenvalues()(static_cast<Eigen::Index>(i));
    if (!(lam > 0.0))
      throw std::domain_error("normal_modes: non-positive-definite potential matrix");
    out.frequency[i] = std::sqrt(lam);
    out.overlap[i] = es.eigenvectors()(0, static_cast<Eigen::Index>(i));
  }
  return out;
}

// The potential matrix is an arrowhead: diag(w_j^2) bordered by
// beta_j = -w_j sqrt(c_j) with head k + sum c_j. Its eigenvalues s solve
//   f(s) = head - s - sum beta_j^2 / (w_j^2 - s) = 0,
// one root strictly inside each gap of the bath spectrum plus one above;
// the oscillator weight of each mode follows in closed form.
NormalModes modes_arrowhead(const DiscreteBath& dbath, const OscillatorParams& osc) {
  const std::size_t j = dbath.omega.size();
  std::vector<double> d(j), beta2(j);
  double head = osc.spring_k;
  for (std::size_t i = 0; i < j; ++i) {
    d[i] = dbath.omega[i] * dbath.omega[i];
    beta2[i] = d[i] * dbath.coupling[i];
    head += dbath.coupling[i];
  }
  for (std::size_t i = 1; i < j; ++i)
    if (d[i] <= d[i - 1]) throw std::invalid_argument("normal_modes: bath frequencies must increase");

  auto f = [&](double s) {
    double acc = head - s;
    for (std::size_t i = 0; i < j; ++i) acc -= beta2[i] / (d[i] - s);
    return acc;
  };

  NormalModes out;
  out.frequency.resize(j + 1);
  out.overlap.resize(j + 1);
  for (std::size_t n = 0; n <= j; ++n) {
    // Root n lives in (lo, hi): below d[0] for n = 0, then between poles,
    // with the last one above d[j-1].
    double lo = n == 0 ? 0.0 : d[n - 1];
    double hi = n == j ? std::max(head, d[j - 1]) + 1.0 : d[n];
    if (n == j) {
      while (f(hi) > 0.0) hi = 2.0 * hi + 1.0;
    }
    // f decreases monotonically between consecutive poles; bisection is
    // robust against the near-pole blowups.
    double a = lo, b = hi;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (a + b);
      if (mid == a || mid == b) break;
      if (f(mid) > 0.0)
        a = mid;
      else
        b = mid;
    }
    const double s = 0.5 * (a + b);
    if (!(s > 0.0)) throw std::domain_error("normal_modes: non-positive-definite potential matrix");
    out.frequency[n] = std::sqrt(s);
    double norm = 1.0;
    for (std::size_t i = 0; i < j; ++i) {
      const double gap = d[i] - s;
      norm += beta2[i] / (gap * gap);
    }
    out.overlap[n] = 1.0 / std::sqrt(norm);
  }
  return out;
}

}  // namespace

NormalModes normal_modes(const DiscreteBath& dbath, const OscillatorParams& osc, EigenMethod method) {
  return method == EigenMethod::dense ? modes_dense(dbath, osc) : modes_arrowhead(dbath, osc);
}

FiniteKernels finite_model_kernels(const NormalModes& modes, const BathSpectrum& bath,
                                   const TimeGrid& grid) {
  const std::size_t m = modes.frequency.size();
  FiniteKernels out;
  out.g.assign(grid.size, 0.0);
  out.s.assign(grid.size, 0.0);
  std::vector<double> cg(m), cs(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double w = modes.frequency[i];
    const double c2 = modes.overlap[i] * modes.overlap[i];
    cg[i] = c2 / w;
    cs[i] = c2 * bath.thermal_coth(w) / (2.0 * w);
  }
  parallel_for(grid.size, [&](std::size_t t_idx) {
    const double t = grid.time(t_idx);
    std::vector<double> sg(m), ss(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double ph = modes.frequency[i] * t;
      sg[i] = cg[i] * std::sin(ph);
      ss[i] = cs[i] * std::cos(ph);
    }
    out.g[t_idx] = pairwise_sum(sg);
    out.s[t_idx] = pairwise_sum(ss);
  });
  return out;
}

FiniteKernels finite_model_kernels(const DiscreteBath& dbath, const OscillatorParams& osc,
                                   const BathSpectrum& bath, const TimeGrid& grid,
                                   EigenMethod method) {
  return finite_model_kernels(normal_modes(dbath, osc, method), bath, grid);
}

std::pair<double, double> gibbs_marginal(const NormalModes& modes, const BathSpectrum& bath) {
  const std::size_t m = modes.frequency.size();
  std::vector<double> xs(m), ps(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double w = modes.frequency[i];
    const double c2 = modes.overlap[i] * modes.overlap[i];
    const double ct = bath.thermal_coth(w);
    xs[i] = c2 * ct / (2.0 * w);
    ps[i] = 0.5 * c2 * ct * w;
  }
  return {pairwise_sum(xs), pairwise_sum(ps)};
}

std::pair<double, double> gibbs_marginal(const DiscreteBath& dbath, const OscillatorParams& osc,
                                         const BathSpectrum& bath, EigenMethod method) {
  return gibbs_marginal(normal_modes(dbath, osc, method), bath);
}

}  // namespace qbm

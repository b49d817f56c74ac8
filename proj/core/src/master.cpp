#include "qbm/master.hpp"

#include <cmath>
#include <limits>

#include "qbm/scenarios.hpp"

namespace qbm {

MasterCoefficients::Sample MasterCoefficients::at(std::size_t i) const {
  if (i >= grid.size) throw std::invalid_argument("MasterCoefficients::at: index out of range");
  if (!valid[i]) throw std::domain_error("MasterCoefficients::at: masked (singular) time");
  Sample s{gamma[i], kappa[i], dx[i], dp[i]};
  if (!drift.empty()) s.drift = drift[i];
  return s;
}

MasterCoefficients exact_coefficients(const LocalCoefficients& local, const NoiseMoments& moments) {
  require_same_grid(local.grid, moments.grid, "exact_coefficients");
  MasterCoefficients out;
  out.grid = local.grid;
  out.kind = CoefficientKind::exact;
  const std::size_t n = out.grid.size;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out.gamma.assign(n, nan);
  out.kappa.assign(n, nan);
  out.dx.assign(n, nan);
  out.dp.assign(n, nan);
  out.valid = local.valid;
  for (std::size_t i = 0; i < n; ++i) {
    if (!local.valid[i]) continue;
    const double g = local.gamma[i];
    const double k = local.kappa[i];
    out.gamma[i] = g;
    out.kappa[i] = k;
    out.dx[i] = 0.5 * moments.bx2[i] + 0.5 * g * moments.bx1[i] + k * moments.bx[i] - moments.bp[i];
    out.dp[i] = 0.5 * moments.bp1[i] + 0.5 * k * moments.bx1[i] + g * moments.bp[i];
  }
  return out;
}

MasterCoefficients weak_coupling_coefficients(const BathSpectrum& bath, const OscillatorParams& osc,
                                              const TimeGrid& grid, const QuadratureSpec& spec) {
  MasterCoefficients out;
  out.grid = grid;
  out.kind = CoefficientKind::weak_coupling;
  const std::size_t n = grid.size;
  const double w0 = osc.omega0();

  std::vector<double> g0mu(n), g0dmu(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = grid.time(i);
    const double mudot = bath.memory_kernel(t, 1);
    g0mu[i] = std::sin(w0 * t) / w0 * mudot;
    g0dmu[i] = std::cos(w0 * t) * mudot;
  }
  const std::vector<double> nu = force_correlation(bath, osc, grid, spec);
  std::vector<double> g0nu(n), g0dnu(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = grid.time(i);
    g0nu[i] = std::sin(w0 * t) / w0 * nu[i];
    g0dnu[i] = std::cos(w0 * t) * nu[i];
  }

  const double h = grid.dt;
  const auto ig = cumulative_integral(g0mu, h);
  const auto igd = cumulative_integral(g0dmu, h);
  const auto inu = cumulative_integral(g0nu, h);
  const auto inud = cumulative_integral(g0dnu, h);

  out.gamma.resize(n);
  out.kappa.resize(n);
  out.dx.resize(n);
  out.dp.resize(n);
  out.valid.assign(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    out.gamma[i] = -ig[i];
    out.kappa[i] = osc.spring_k + igd[i];
    out.dx[i] = inu[i];
    out.dp[i] = inud[i];
  }
  return out;
}

PositionPrepCoefficients position_prep_coefficients(const PropagatorTable& prop,
                                                    const CorrelationTable& corr) {
  require_same_grid(prop.grid, corr.grid, "position_prep_coefficients");
  PositionPrepCoefficients out;
  out.grid = prop.grid;
  const std::size_t n = out.grid.size;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out.gamma1.assign(n, nan);
  out.gamma2.assign(n, nan);
  out.d1.assign(n, nan);
  out.d2.assign(n, nan);
  out.valid.assign(n, 0);

  const double scale = std::abs(corr.x2);
  for (std::size_t i = 0; i < n; ++i) {
    const double den = prop.g1[i] * corr.s[i] - prop.g[i] * corr.s1[i];
    if (std::abs(den) < 1e-12 * scale) continue;
    const double g1 = (prop.g[i] * corr.s2[i] - prop.g2[i] * corr.s[i]) / den;
    const double g2 = (prop.g1[i] * corr.s2[i] - prop.g2[i] * corr.s1[i]) / den;
    out.gamma1[i] = g1;
    out.gamma2[i] = g2;
    out.d1[i] = g2 * corr.x2 - corr.p2;
    out.d2[i] = g1 * corr.p2;
    out.valid[i] = 1;
  }
  return out;
}

StateFlow moment_flow(const GaussianState& state, const MasterCoefficients::Sample& c) {
  StateFlow f;
  f.mean_x = state.mean_p;
  f.mean_p = -c.kappa * state.mean_x - c.gamma * state.mean_p + c.drift;
  f.var_x = 2.0 * state.cov_xp;
  f.cov_xp = state.var_p - c.kappa * state.var_x - c.gamma * state.cov_xp + c.dx;
  f.var_p = -2.0 * c.kappa * state.cov_xp - 2.0 * c.gamma * state.var_p + 2.0 * c.dp;
  return f;
}

namespace {

// Five-point central difference; one-sided stencils at the edges.
double deriv5(const std::vector<double>& y, std::size_t i, double h) {
  const std::size_t n = y.size();
  if (i >= 2 && i + 2 < n)
    return (y[i - 2] - 8.0 * y[i - 1] + 8.0 * y[i + 1] - y[i + 2]) / (12.0 * h);
  if (i < 2) {
    const double* f = y.data();
    const double s = i == 0
        ? (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4])
        : (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
    return s / (12.0 * h);
  }
  const double* f = y.data() + n - 5;
  const double s = i == n - 1
      ? (25.0 * f[4] - 48.0 * f[3] + 36.0 * f[2] - 16.0 * f[1] + 3.0 * f[0])
      : (3.0 * f[4] + 10.0 * f[3] - 18.0 * f[2] + 6.0 * f[1] - f[0]);
  return s / (12.0 * h);
}

}  // namespace

MasterCoefficients gaussian_scenario_coefficients(std::span<const GaussianState> trajectory,
                                                  const TimeGrid& grid,
                                                  const LocalCoefficients& local) {
  if (trajectory.size() != grid.size)
    throw std::invalid_argument("gaussian_scenario_coefficients: trajectory/grid size mismatch");
  require_same_grid(grid, local.grid, "gaussian_scenario_coefficients");
  if (grid.size < 5)
    throw std::invalid_argument("gaussian_scenario_coefficients: need >= 5 samples");

  const std::size_t n = grid.size;
  std::vector<double> mp(n), sxp(n), sp(n);
  for (std::size_t i = 0; i < n; ++i) {
    mp[i] = trajectory[i].mean_p;
    sxp[i] = trajectory[i].cov_xp;
    sp[i] = trajectory[i].var_p;
  }

  MasterCoefficients out;
  out.grid = grid;
  out.kind = CoefficientKind::gaussian_state;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out.gamma.assign(n, nan);
  out.kappa.assign(n, nan);
  out.dx.assign(n, nan);
  out.dp.assign(n, nan);
  out.drift.assign(n, nan);
  out.valid = local.valid;

  for (std::size_t i = 0; i < n; ++i) {
    if (!local.valid[i]) continue;
    const double g = local.gamma[i];
    const double k = local.kappa[i];
    const GaussianState& s = trajectory[i];
    const double dmp = deriv5(mp, i, grid.dt);
    const double dsxp = deriv5(sxp, i, grid.dt);
    const double dsp = deriv5(sp, i, grid.dt);
    out.gamma[i] = g;
    out.kappa[i] = k;
    out.drift[i] = dmp + k * s.mean_x + g * s.mean_p;
    out.dx[i] = dsxp - s.var_p + k * s.var_x + g * s.cov_xp;
    out.dp[i] = 0.5 * (dsp + 2.0 * k * s.cov_xp + 2.0 * g * s.var_p);
  }
  return out;
}

}  // namespace qbm

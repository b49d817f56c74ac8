#include "qbm/scenarios.hpp"

#include <cmath>

namespace qbm {

double purity(const GaussianState& s) {
  const double det4 = 4.0 * (s.var_x * s.var_p - s.cov_xp * s.cov_xp);
  if (det4 < 1.0 - 4e-9)
    throw std::domain_error("purity: state violates the uncertainty relation");
  return 1.0 / std::sqrt(det4);
}

bool satisfies_uncertainty(const GaussianState& s, double tol) {
  return s.var_x > 0.0 && s.var_p > 0.0 &&
         s.var_x * s.var_p - s.cov_xp * s.cov_xp >= 0.25 - tol;
}

SystemTables build_system_tables(const BathSpectrum& bath, const OscillatorParams& osc,
                                 const TimeGrid& grid, const QuadratureSpec& spec) {
  SystemTables t;
  t.bath = bath;
  t.osc = osc;
  t.grid = grid;
  t.prop = build_propagator(bath, osc, grid, spec);
  t.corr = build_correlation(bath, osc, grid, spec);
  t.noise = build_noise_moments(t.prop, bath, grid, spec);
  return t;
}

CorrelatedPrepScenario::CorrelatedPrepScenario(const SystemTables& tables, const PreparationSpec& prep)
    : tab_(tables), prep_(prep) {
  wx_ = 1.0 + 4.0 * prep_.delta_p() * tab_.corr.x2;
  wp_ = 1.0 + 4.0 * prep_.delta_x() * tab_.corr.p2;
}

double CorrelatedPrepScenario::normalization() const { return 0.5 * std::sqrt(wx_ * wp_); }

GaussianState CorrelatedPrepScenario::at(std::size_t i) const {
  if (i >= tab_.grid.size) throw std::invalid_argument("CorrelatedPrepScenario::at: index out of range");
  const double lam = prep_.squeeze;
  const double g = tab_.prop.g[i], g1 = tab_.prop.g1[i], g2 = tab_.prop.g2[i];
  const double s = tab_.corr.s[i], s1 = tab_.corr.s1[i], s2 = tab_.corr.s2[i];
  const double x2 = tab_.corr.x2, p2 = tab_.corr.p2;

  const double ax = g1 + 2.0 * lam * s;    // enters var_x and the mean
  const double bx = lam * g - 2.0 * s1;
  const double ap = g2 + 2.0 * lam * s1;   // one more time derivative
  const double bp = lam * g1 - 2.0 * s2;

  GaussianState out;
  out.var_x = x2 + (lam * lam * g * g + g1 * g1) / lam
      - ax * ax / (2.0 * lam * wx_) - bx * bx / (2.0 * lam * wp_);
  out.var_p = p2 + (lam * lam * g1 * g1 + g2 * g2) / lam
      - ap * ap / (2.0 * lam * wx_) - bp * bp / (2.0 * lam * wp_);
  // cov_xp = (d var_x / dt) / 2, written out analytically.
  out.cov_xp = (lam * lam * g * g1 + g1 * g2) / lam
      - ax * ap / (2.0 * lam * wx_) - bx * bp / (2.0 * lam * wp_);
  out.mean_x = ax * prep_.x0 / wx_;
  out.mean_p = ap * prep_.x0 / wx_;
  return out;
}

std::vector<GaussianState> CorrelatedPrepScenario::trajectory() const {
  std::vector<GaussianState> tr(tab_.grid.size);
  for (std::size_t i = 0; i < tr.size(); ++i) tr[i] = at(i);
  return tr;
}

FactorizedScenario::FactorizedScenario(const SystemTables& tables, const GaussianState& initial)
    : tab_(tables), init_(initial) {
  if (!(init_.var_x > 0.0) || !(init_.var_p > 0.0))
    throw std::invalid_argument("FactorizedScenario: initial variances must be positive");
}

FactorizedScenario::FactorizedScenario(const SystemTables& tables, const PreparationSpec& prep)
    : FactorizedScenario(tables, GaussianState{prep.x0, 0.0, prep.delta_x(), 0.0, prep.delta_p()}) {}

GaussianState FactorizedScenario::at(std::size_t i) const {
  if (i >= tab_.grid.size) throw std::invalid_argument("FactorizedScenario::at: index out of range");
  const double g = tab_.prop.g[i], g1 = tab_.prop.g1[i], g2 = tab_.prop.g2[i];
  const double sx0 = init_.var_x, sp0 = init_.var_p, sxp0 = init_.cov_xp;

  GaussianState out;
  out.var_x = g1 * g1 * sx0 + g * g * sp0 + 2.0 * g1 * g * sxp0 + tab_.noise.bx[i];
  out.var_p = g2 * g2 * sx0 + g1 * g1 * sp0 + 2.0 * g2 * g1 * sxp0 + tab_.noise.bp[i];
  out.cov_xp = g1 * g2 * sx0 + g * g1 * sp0 + (g1 * g1 + g * g2) * sxp0 + 0.5 * tab_.noise.bx1[i];
  out.mean_x = g1 * init_.mean_x + g * init_.mean_p;
  out.mean_p = g2 * init_.mean_x + g1 * init_.mean_p;
  return out;
}

std::vector<GaussianState> FactorizedScenario::trajectory() const {
  std::vector<GaussianState> tr(tab_.grid.size);
  for (std::size_t i = 0; i < tr.size(); ++i) tr[i] = at(i);
  return tr;
}

QuenchScenario::QuenchScenario(const BathSpectrum& bath, const QuenchSpec& quench,
                               const TimeGrid& grid, const QuadratureSpec& spec)
    : quench_(quench), grid_(grid) {
  corr_old_ = build_correlation(bath, OscillatorParams(quench.k_old), grid, spec);
  prop_new_ = build_propagator(bath, OscillatorParams(quench.k_new), grid, spec);

  const std::size_t n = grid.size;
  const double h = grid.dt;
  const auto& g = prop_new_.g;
  const auto& g1 = prop_new_.g1;
  const auto& s = corr_old_.s;
  const auto& s1 = corr_old_.s1;

  std::vector<double> gs(n), g1s1(n);
  for (std::size_t i = 0; i < n; ++i) {
    gs[i] = g[i] * s[i];
    g1s1[i] = g1[i] * s1[i];
  }
  int_gs_ = cumulative_integral(gs, h);
  int_g1s1_ = cumulative_integral(g1s1, h);

  // Convolutions r(t) = int_0^t Gnew(v) S(t-v) dv (and the Gdot analogue),
  // trapezoidal on the shared grid; the double integrals then accumulate as
  // d/dt [double] = 2 Gnew(t) r(t).
  conv_g_.assign(n, 0.0);
  std::vector<double> conv_g1(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    double accg = 0.5 * (g[0] * s[i] + g[i] * s[0]);
    double accg1 = 0.5 * (g1[0] * s[i] + g1[i] * s[0]);
    for (std::size_t v = 1; v < i; ++v) {
      accg += g[v] * s[i - v];
      accg1 += g1[v] * s[i - v];
    }
    conv_g_[i] = accg * h;
    conv_g1[i] = accg1 * h;
  }
  std::vector<double> dx(n), dp(n);
  for (std::size_t i = 0; i < n; ++i) {
    dx[i] = 2.0 * g[i] * conv_g_[i];
    dp[i] = 2.0 * g1[i] * conv_g1[i];
  }
  dbl_x_ = cumulative_integral(dx, h);
  dbl_p_ = cumulative_integral(dp, h);
}

GaussianState QuenchScenario::at(std::size_t i) const {
  if (i >= grid_.size) throw std::invalid_argument("QuenchScenario::at: index out of range");
  const double eps = quench_.epsilon_k();
  GaussianState out;
  out.mean_x = 0.0;
  out.mean_p = 0.0;
  out.var_x = corr_old_.x2 + 2.0 * eps * int_gs_[i] + eps * eps * dbl_x_[i];
  out.var_p = corr_old_.p2 + 2.0 * eps * int_g1s1_[i] + eps * eps * dbl_p_[i];
  out.cov_xp = eps * prop_new_.g[i] * corr_old_.s[i] + eps * eps * prop_new_.g[i] * conv_g_[i];
  return out;
}

std::vector<GaussianState> QuenchScenario::trajectory() const {
  std::vector<GaussianState> tr(grid_.size);
  for (std::size_t i = 0; i < tr.size(); ++i) tr[i] = at(i);
  return tr;
}

HighTMean high_T_mean(const SystemTables& tables, const PreparationSpec& prep, std::size_t i) {
  if (i >= tables.grid.size) throw std::invalid_argument("high_T_mean: index out of range");
  CorrelatedPrepScenario corr(tables, prep);
  const auto cum = cumulative_integral(tables.prop.g, tables.grid.dt);
  HighTMean out;
  out.exact = corr.at(i).mean_x;
  out.asymptotic = (1.0 - tables.osc.spring_k * cum[i]) * prep.x0;
  return out;
}

}  // namespace qbm

#include "qbm/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "omega_nodes.hpp"

namespace qbm {

namespace {

void fill_lossless(const OscillatorParams& osc, const TimeGrid& grid, PropagatorTable& out) {
  const double w0 = osc.omega0();
  for (std::size_t i = 0; i < grid.size; ++i) {
    const double t = grid.time(i);
    out.g[i] = std::sin(w0 * t) / w0;
    out.g1[i] = std::cos(w0 * t);
    out.g2[i] = -w0 * std::sin(w0 * t);
    out.g3[i] = -w0 * w0 * std::cos(w0 * t);
  }
}

}  // namespace

PropagatorTable build_propagator(const BathSpectrum& bath, const OscillatorParams& osc,
                                 const TimeGrid& grid, const QuadratureSpec& spec) {
  PropagatorTable out;
  out.bath = bath;
  out.osc = osc;
  out.grid = grid;
  const std::size_t n = grid.size;
  out.g.assign(n, 0.0);
  out.g1.assign(n, 0.0);
  out.g2.assign(n, 0.0);
  out.g3.assign(n, 0.0);
  out.wronskian.assign(n, 0.0);

  if (bath.eta == 0.0) {
    fill_lossless(osc, grid, out);
  } else {
    const auto nodes = detail::build_omega_nodes(bath, osc, grid.t_max(), spec);
    const std::size_t m = nodes.omega.size();
    // Per-node coefficients of the four transforms,
    //   G    = (2/pi) sum w_i a_i            sin(w t)
    //   Gdot = (2/pi) sum w_i a_i w          cos(w t)   etc.
    std::vector<double> c0(m), c1(m), c2(m), c3(m);
    const double pref = 2.0 / std::numbers::pi;
    for (std::size_t i = 0; i < m; ++i) {
      const double w = nodes.omega[i];
      const double base = pref * nodes.weight[i] * nodes.alpha_im[i];
      c0[i] = base;
      c1[i] = base * w;
      c2[i] = base * w * w;
      c3[i] = base * w * w * w;
    }
    parallel_for(n, [&](std::size_t j) {
      const double t = grid.time(j);
      std::vector<double> s0(m), s1(m), s2(m), s3(m);
      for (std::size_t i = 0; i < m; ++i) {
        const double ph = nodes.omega[i] * t;
        const double sn = std::sin(ph);
        const double cs = std::cos(ph);
        s0[i] = c0[i] * sn;
        s1[i] = c1[i] * cs;
        s2[i] = c2[i] * sn;
        s3[i] = c3[i] * cs;
      }
      out.g[j] = pairwise_sum(s0);
      out.g1[j] = pairwise_sum(s1);
      out.g2[j] = -pairwise_sum(s2);
      out.g3[j] = -pairwise_sum(s3);
    });
  }

  for (std::size_t i = 0; i < n; ++i)
    out.wronskian[i] = out.g1[i] * out.g1[i] - out.g[i] * out.g2[i];
  return out;
}

LocalCoefficients local_coefficients(const PropagatorTable& prop, double wronskian_threshold) {
  LocalCoefficients out;
  out.grid = prop.grid;
  out.wronskian_threshold = wronskian_threshold;
  const std::size_t n = prop.grid.size;
  out.gamma.assign(n, std::numeric_limits<double>::quiet_NaN());
  out.kappa.assign(n, std::numeric_limits<double>::quiet_NaN());
  out.valid.assign(n, 0);

  std::size_t masked = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = prop.wronskian[i];
    if (std::abs(w) < wronskian_threshold) {
      ++masked;
      continue;
    }
    out.gamma[i] = (prop.g[i] * prop.g3[i] - prop.g1[i] * prop.g2[i]) / w;
    out.kappa[i] = (prop.g2[i] * prop.g2[i] - prop.g1[i] * prop.g3[i]) / w;
    out.valid[i] = 1;
  }
  if (masked == n) throw std::domain_error("local_coefficients: Wronskian vanishes on the whole grid");

  for (std::size_t i = 0; i < n;) {
    if (out.valid[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && !out.valid[j]) ++j;
    out.singular_intervals.emplace_back(prop.grid.time(i), prop.grid.time(j - 1));
    i = j;
  }
  return out;
}

VolterraSolution volterra_green(const BathSpectrum& bath, const OscillatorParams& osc,
                                const TimeGrid& grid) {
  const std::size_t n = grid.size;
  const double h = grid.dt;
  const double k = osc.spring_k;
  VolterraSolution out;
  out.g.assign(n, 0.0);
  out.g1.assign(n, 0.0);
  out.g1[0] = 1.0;

  // Product-integration weights for the memory term: the convolution of mu
  // with the piecewise-linear interpolant of Gdot is integrated exactly using
  // the Gaussian moments of mu (erf closed forms). At time t_N,
  //   I_N = q(h) Gdot_N + p(Nh) Gdot_0 + sum_{0<j<N} [p((N-j)h) + q((N-j+1)h)] Gdot_j
  // where p, q integrate mu against the two halves of the hat function.
  const double lam = bath.cutoff_lambda;
  auto mom0 = [&](double x1, double x2) {  // integral of mu over [x1, x2]
    return bath.eta * (std::erf(0.5 * lam * x2) - std::erf(0.5 * lam * x1));
  };
  auto mom1 = [&](double x1, double x2) {  // integral of u mu(u) over [x1, x2]
    const double c = 2.0 * bath.eta / (lam * 1.7724538509055160273);
    return -c * (std::exp(-0.25 * lam * lam * x2 * x2) - std::exp(-0.25 * lam * lam * x1 * x1));
  };
  auto pcoef = [&](double d) {  // integral of mu(u) (u - (d-h))/h over [d-h, d]
    return (mom1(d - h, d) - (d - h) * mom0(d - h, d)) / h;
  };
  auto qcoef = [&](double d) {  // integral of mu(u) (d - u)/h over [d-h, d]
    return (d * mom0(d - h, d) - mom1(d - h, d)) / h;
  };

  std::vector<double> plag(n + 1, 0.0), wsum(n + 1, 0.0);
  std::size_t l_cut = 0;
  if (bath.eta > 0.0) {
    for (std::size_t l = 1; l <= n; ++l) {
      plag[l] = pcoef(l * h);
      wsum[l] = plag[l] + qcoef((l + 1) * h);
      if (plag[l] != 0.0 || wsum[l] != 0.0) l_cut = l;
    }
  }
  const double q0 = bath.eta > 0.0 ? qcoef(h) : 0.0;

  auto memory_known = [&](std::size_t np1) {
    // Known part of the convolution at t_{np1}; the Gaussian kernel is exact
    // zero in double precision beyond lag l_cut.
    double acc = 0.0;
    const std::size_t j_lo = np1 > l_cut ? np1 - l_cut : 0;
    for (std::size_t j = std::max<std::size_t>(j_lo, 1); j < np1; ++j)
      acc += out.g1[j] * wsum[np1 - j];
    if (j_lo == 0) acc += out.g1[0] * plag[np1];
    return acc;
  };

  double a_prev = -k * out.g[0];  // memory integral vanishes at t = 0
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t ip = i + 1;
    const double j_known = memory_known(ip);
    // Implicit trapezoid for (G, Gdot):
    //   G_{i+1} = G_i + h/2 (v_i + v_{i+1})
    //   v_{i+1} = v_i + h/2 (a_i + a_{i+1}),  a_{i+1} = -k G_{i+1} - J - q0 v_{i+1}
    const double rhs = out.g1[i] + 0.5 * h * (a_prev - j_known - k * (out.g[i] + 0.5 * h * out.g1[i]));
    const double denom = 1.0 + 0.5 * h * q0 + 0.25 * h * h * k;
    const double v_next = rhs / denom;
    const double g_next = out.g[i] + 0.5 * h * (out.g1[i] + v_next);
    out.g[ip] = g_next;
    out.g1[ip] = v_next;
    a_prev = -k * g_next - (j_known + q0 * v_next);
  }
  return out;
}

}  // namespace qbm

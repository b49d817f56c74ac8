#include "qbm/correlation.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "omega_nodes.hpp"

namespace qbm {

namespace {

using Cx = std::complex<double>;

// Integrals of the linear hat halves against e^{i theta s} over one step:
//   w0 = int_0^1 (1-s) e^{i theta s} ds,  w1 = int_0^1 s e^{i theta s} ds.
std::pair<Cx, Cx> filon_hat_weights(double theta) {
  if (std::abs(theta) < 0.5) {
    Cx w0(0.0), w1(0.0);
    Cx term(1.0, 0.0);
    const Cx it(0.0, theta);
    double kfact = 1.0;
    for (int k = 0; k < 14; ++k) {
      if (k > 0) {
        kfact *= k;
        term *= it;
      }
      const Cx common = term / kfact;
      w0 += common / ((k + 1.0) * (k + 2.0));
      w1 += common / (k + 2.0);
    }
    return {w0, w1};
  }
  const Cx it(0.0, theta);
  const Cx e = std::exp(it);
  const Cx w1 = (e * (it - 1.0) + 1.0) / (it * it);
  const Cx w0 = (e - 1.0) / it - w1;
  return {w0, w1};
}

void fill_lossless_correlation(const BathSpectrum& bath, const OscillatorParams& osc,
                               const TimeGrid& grid, CorrelationTable& out) {
  const double w0 = osc.omega0();
  const double ct = bath.thermal_coth(w0);
  for (std::size_t i = 0; i < grid.size; ++i) {
    const double t = grid.time(i);
    out.s[i] = ct * std::cos(w0 * t) / (2.0 * w0);
    out.s1[i] = -0.5 * ct * std::sin(w0 * t);
    out.s2[i] = -0.5 * w0 * ct * std::cos(w0 * t);
  }
  out.x2 = ct / (2.0 * w0);
  out.p2 = 0.5 * w0 * ct;
}

}  // namespace

CorrelationTable build_correlation(const BathSpectrum& bath, const OscillatorParams& osc,
                                   const TimeGrid& grid, const QuadratureSpec& spec) {
  CorrelationTable out;
  out.bath = bath;
  out.osc = osc;
  out.grid = grid;
  const std::size_t n = grid.size;
  out.s.assign(n, 0.0);
  out.s1.assign(n, 0.0);
  out.s2.assign(n, 0.0);
  out.nu.assign(n, 0.0);

  if (bath.eta == 0.0) {
    fill_lossless_correlation(bath, osc, grid, out);
    return out;
  }

  const auto nodes = detail::build_omega_nodes(bath, osc, grid.t_max(), spec);
  const std::size_t m = nodes.omega.size();
  std::vector<double> c0(m), c1(m), c2(m), cn(m);
  const double pref = 1.0 / std::numbers::pi;
  for (std::size_t i = 0; i < m; ++i) {
    const double w = nodes.omega[i];
    const double base = pref * nodes.weight[i] * nodes.alpha_im[i] * nodes.coth[i];
    c0[i] = base;
    c1[i] = base * w;
    c2[i] = base * w * w;
    cn[i] = nodes.weight[i] * nodes.noise[i];
  }
  parallel_for(n, [&](std::size_t j) {
    const double t = grid.time(j);
    std::vector<double> s0(m), s1(m), s2(m), sn(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double ph = nodes.omega[i] * t;
      const double snv = std::sin(ph);
      const double csv = std::cos(ph);
      s0[i] = c0[i] * csv;
      s1[i] = c1[i] * snv;
      s2[i] = c2[i] * csv;
      sn[i] = cn[i] * csv;
    }
    out.s[j] = pairwise_sum(s0);
    out.s1[j] = -pairwise_sum(s1);
    out.s2[j] = -pairwise_sum(s2);
    out.nu[j] = pairwise_sum(sn);
  });
  out.x2 = out.s[0];
  out.p2 = -out.s2[0];
  return out;
}

std::vector<double> force_correlation(const BathSpectrum& bath, const OscillatorParams& osc,
                                      const TimeGrid& grid, const QuadratureSpec& spec) {
  if (bath.eta == 0.0) return std::vector<double>(grid.size, 0.0);
  const auto nodes = detail::build_omega_nodes(bath, osc, grid.t_max(), spec);
  const std::size_t m = nodes.omega.size();
  std::vector<double> cn(m);
  for (std::size_t i = 0; i < m; ++i) cn[i] = nodes.weight[i] * nodes.noise[i];
  std::vector<double> nu(grid.size, 0.0);
  parallel_for(grid.size, [&](std::size_t j) {
    const double t = grid.time(j);
    std::vector<double> sn(m);
    for (std::size_t i = 0; i < m; ++i) sn[i] = cn[i] * std::cos(nodes.omega[i] * t);
    nu[j] = pairwise_sum(sn);
  });
  return nu;
}

NoiseMoments build_noise_moments(const PropagatorTable& prop, const BathSpectrum& bath,
                                 const TimeGrid& grid, const QuadratureSpec& spec) {
  require_same_grid(prop.grid, grid, "build_noise_moments");
  NoiseMoments out;
  out.grid = grid;
  const std::size_t n = grid.size;
  out.bx.assign(n, 0.0);
  out.bx1.assign(n, 0.0);
  out.bx2.assign(n, 0.0);
  out.bp.assign(n, 0.0);
  out.bp1.assign(n, 0.0);
  if (bath.eta == 0.0) return out;

  // The frequency structure of |I(w,t)|^2 mirrors the susceptibility (it
  // tends to alpha(w) as t grows), so the same resonance-resolved node set
  // the other tables use is built here, for the propagator's oscillator.
  const auto nodes = detail::build_omega_nodes(bath, prop.osc, grid.t_max(), spec);
  const std::size_t m = nodes.omega.size();
  const double h = grid.dt;

  struct NodeState {
    Cx ig{0.0, 0.0};    // int_0^t G e^{i w s} ds
    Cx ip{0.0, 0.0};    // int_0^t Gdot e^{i w s} ds
    Cx phase{1.0, 0.0};  // e^{i w t}
    Cx step_phase;       // e^{i w h}
    Cx w0, w1;           // hat weights at theta = w h
  };
  std::vector<NodeState> st(m);
  std::vector<double> wnoise(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double w = nodes.omega[i];
    wnoise[i] = nodes.weight[i] * nodes.noise[i];
    st[i].step_phase = std::exp(Cx(0.0, w * h));
    auto [w0, w1] = filon_hat_weights(w * h);
    st[i].w0 = w0;
    st[i].w1 = w1;
  }

  std::vector<double> sx(m), sx1(m), sx2(m), sp(m), sp1(m);
  for (std::size_t j = 0; j < n; ++j) {
    const double gj = prop.g[j];
    const double g1j = prop.g1[j];
    for (std::size_t i = 0; i < m; ++i) {
      const NodeState& s = st[i];
      const double w = nodes.omega[i];
      const Cx igc = std::conj(s.ig);
      const Cx ipc = std::conj(s.ip);
      const Cx eph = s.phase;
      const double wn = wnoise[i];
      sx[i] = wn * std::norm(s.ig);
      sp[i] = wn * std::norm(s.ip);
      sx1[i] = 2.0 * wn * std::real(igc * gj * eph);
      sp1[i] = 2.0 * wn * std::real(ipc * g1j * eph);
      sx2[i] = 2.0 * wn * (gj * gj + std::real(igc * (g1j + Cx(0.0, w) * gj) * eph));
    }
    out.bx[j] = pairwise_sum(sx);
    out.bp[j] = pairwise_sum(sp);
    out.bx1[j] = pairwise_sum(sx1);
    out.bp1[j] = pairwise_sum(sp1);
    out.bx2[j] = pairwise_sum(sx2);

    if (j + 1 == n) break;
    const double gj1 = prop.g[j + 1];
    const double g1j1 = prop.g1[j + 1];
    for (std::size_t i = 0; i < m; ++i) {
      NodeState& s = st[i];
      s.ig += s.phase * h * (s.w0 * gj + s.w1 * gj1);
      s.ip += s.phase * h * (s.w0 * g1j + s.w1 * g1j1);
      s.phase *= s.step_phase;
    }
    if ((j & 0xff) == 0xff) {
      // Refresh the running phases; repeated multiplication drifts slowly.
      const double t1 = grid.time(j + 1);
      for (std::size_t i = 0; i < m; ++i)
        st[i].phase = std::exp(Cx(0.0, nodes.omega[i] * t1));
    }
  }
  return out;
}

}  // namespace qbm

#include "omega_nodes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qbm::detail {

namespace {

constexpr int kGl = 16;
constexpr int kFamily = 9;  // alpha'' * w^{0..3}, the same with coth, E_T

struct FamilyValues {
  std::array<double, kFamily> v{};
};

FamilyValues eval_family(const BathSpectrum& bath, const OscillatorParams& osc, double w) {
  FamilyValues out;
  const double ai = susceptibility_imag(bath, osc, w);
  const double ct = bath.thermal_coth(w);
  double pw = 1.0;
  for (int n = 0; n < 4; ++n) {
    out.v[n] = ai * pw;
    out.v[4 + n] = ai * ct * pw;
    pw *= w;
  }
  out.v[8] = bath.noise_spectrum(w);
  return out;
}

struct PanelSums {
  std::array<double, kFamily> v{};
};

PanelSums gl_panel(const BathSpectrum& bath, const OscillatorParams& osc, double a, double b) {
  PanelSums acc;
  const auto xs = gauss_legendre_nodes();
  const auto ws = gauss_legendre_weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < kGl; ++i) {
    const FamilyValues f = eval_family(bath, osc, mid + half * xs[i]);
    for (int m = 0; m < kFamily; ++m) acc.v[m] += ws[i] * f.v[m] * half;
  }
  return acc;
}

double max_abs_diff(const PanelSums& a, const PanelSums& b) {
  double d = 0.0;
  for (int m = 0; m < kFamily; ++m) d = std::max(d, std::abs(a.v[m] - b.v[m]));
  return d;
}

}  // namespace

OmegaNodes build_omega_nodes(const BathSpectrum& bath, const OscillatorParams& osc,
                             double t_max, const QuadratureSpec& spec) {
  spec.validate();
  if (!(t_max > 0.0)) throw std::invalid_argument("build_omega_nodes: t_max must be positive");
  const double omega_upper = bath.omega_upper(spec);

  // Panels narrow enough for nodes_per_period trig samples at t_max, and for
  // the cutoff-scale structure of the spectrum itself.
  const double trig_width = kGl * 2.0 * std::numbers::pi / (spec.nodes_per_period * t_max);
  const double base_width = std::min(trig_width, bath.cutoff_lambda / 4.0);
  int n0 = std::max(8, static_cast<int>(std::ceil(omega_upper / base_width)));
  if (n0 > spec.max_panels)
    throw convergence_error("build_omega_nodes: oscillation density exceeds panel budget", -1.0);

  struct Panel {
    double a, b;
    PanelSums sums;
    bool checked;  // set once the panel passed against its two halves
  };

  std::vector<Panel> todo;
  std::vector<Panel> done;
  const double width0 = omega_upper / n0;
  for (int i = n0 - 1; i >= 0; --i) {
    const double a = i * width0;
    const double b = (i + 1) * width0;
    todo.push_back({a, b, gl_panel(bath, osc, a, b), false});
  }

  int used = n0;
  const double min_width = omega_upper * 1e-12;
  while (!todo.empty()) {
    Panel p = todo.back();
    todo.pop_back();
    const double mid = 0.5 * (p.a + p.b);
    PanelSums left = gl_panel(bath, osc, p.a, mid);
    PanelSums right = gl_panel(bath, osc, mid, p.b);
    PanelSums merged;
    for (int m = 0; m < kFamily; ++m) merged.v[m] = left.v[m] + right.v[m];
    const double err = max_abs_diff(merged, p.sums);
    const double budget = 0.1 * spec.abs_tolerance * (p.b - p.a) / omega_upper;
    if (err <= budget || (p.b - p.a) <= min_width) {
      // Keep the two halves as final panels: their nodes carry the already
      // validated resolution.
      done.push_back({p.a, mid, left, true});
      done.push_back({mid, p.b, right, true});
      continue;
    }
    used += 2;
    if (used > spec.max_panels)
      throw convergence_error("build_omega_nodes: tolerance not reached within panel budget", err);
    todo.push_back({mid, p.b, right, false});
    todo.push_back({p.a, mid, left, false});
  }

  std::sort(done.begin(), done.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });

  OmegaNodes nodes;
  const auto xs = gauss_legendre_nodes();
  const auto ws = gauss_legendre_weights();
  nodes.omega.reserve(done.size() * kGl);
  for (const Panel& p : done) {
    const double mid = 0.5 * (p.a + p.b);
    const double half = 0.5 * (p.b - p.a);
    for (int i = 0; i < kGl; ++i) {
      nodes.omega.push_back(mid + half * xs[i]);
      nodes.weight.push_back(ws[i] * half);
    }
  }
  const std::size_t n = nodes.omega.size();
  nodes.alpha_im.resize(n);
  nodes.coth.resize(n);
  nodes.noise.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = nodes.omega[i];
    nodes.alpha_im[i] = susceptibility_imag(bath, osc, w);
    nodes.coth[i] = bath.thermal_coth(w);
    nodes.noise[i] = bath.noise_spectrum(w);
  }
  return nodes;
}

}  // namespace qbm::detail

#pragma once

#include <utility>
#include <vector>

#include "qbm/bath.hpp"
#include "qbm/grid.hpp"

namespace qbm {

/// Midpoint discretization of the continuum bath: w_j = (j - 1/2) dw up to
/// omega_max, with couplings m_j w_j^2 = (2/pi) eta'(w_j) dw. The recurrence
/// time 2 pi / dw bounds how long the finite model mimics the continuum.
struct DiscreteBath {
  std::vector<double> omega;     // mode frequencies w_j
  std::vector<double> coupling;  // c_j = m_j w_j^2

  static DiscreteBath midpoint(const BathSpectrum& bath, std::size_t modes, double omega_max);

  double recurrence_time() const;
};

/// Normal modes of the coupled oscillator-bath quadratic Hamiltonian:
/// frequencies Omega_n and the oscillator components c_n of each mode in
/// mass-weighted coordinates (sum c_n^2 = 1).
struct NormalModes {
  std::vector<double> frequency;
  std::vector<double> overlap;
};

enum class EigenMethod {
  dense,      // full symmetric eigendecomposition of the potential matrix
  arrowhead,  // direct secular-equation solve of the arrowhead structure
};

NormalModes normal_modes(const DiscreteBath& dbath, const OscillatorParams& osc,
                         EigenMethod method = EigenMethod::dense);

/// Mode-sum kernels of the finite model, exact for the discrete bath:
///   G(t) = sum c_n^2 sin(Omega_n t) / Omega_n,
///   S(t) = sum c_n^2 coth(Omega_n / 2T) cos(Omega_n t) / (2 Omega_n).
struct FiniteKernels {
  std::vector<double> g, s;
};

FiniteKernels finite_model_kernels(const NormalModes& modes, const BathSpectrum& bath,
                                   const TimeGrid& grid);

FiniteKernels finite_model_kernels(const DiscreteBath& dbath, const OscillatorParams& osc,
                                   const BathSpectrum& bath, const TimeGrid& grid,
                                   EigenMethod method = EigenMethod::dense);

/// Gibbs-state marginal (<x^2>, <p^2>) of the coupled finite model.
std::pair<double, double> gibbs_marginal(const NormalModes& modes, const BathSpectrum& bath);

std::pair<double, double> gibbs_marginal(const DiscreteBath& dbath, const OscillatorParams& osc,
                                         const BathSpectrum& bath,
                                         EigenMethod method = EigenMethod::dense);

}  // namespace qbm

#pragma once

#include <span>
#include <vector>

#include "qbm/correlation.hpp"
#include "qbm/grid.hpp"
#include "qbm/propagator.hpp"

namespace qbm {

enum class CoefficientKind { exact, weak_coupling, position_prep, gaussian_state };

/// Time-dependent coefficient set of the characteristic-function master
/// equation. Entries outside the validity mask (Wronskian-singular times)
/// hold NaN. The gaussian_state variant also carries the drift <F>(t).
struct MasterCoefficients {
  TimeGrid grid;
  CoefficientKind kind = CoefficientKind::exact;
  std::vector<double> gamma, kappa, dx, dp;
  std::vector<double> drift;  // empty unless kind == gaussian_state
  std::vector<char> valid;

  struct Sample {
    double gamma, kappa, dx, dp;
    double drift = 0.0;
  };
  /// Throws std::domain_error on masked times.
  Sample at(std::size_t i) const;
};

/// Exact coefficients from the time-local equation and the driven moments:
///   D_x = bx2/2 + Gamma/2 bx1 + K bx - bp,
///   D_p = bp1/2 + K/2 bx1 + Gamma bp.
MasterCoefficients exact_coefficients(const LocalCoefficients& local, const NoiseMoments& moments);

/// O(eta) coefficients built on the undamped Green function G0 = sin(w0 t)/w0:
/// Gamma = -int G0 mudot, K = k + int G0dot mudot, D_x = int G0 nu,
/// D_p = int G0dot nu.
MasterCoefficients weak_coupling_coefficients(const BathSpectrum& bath, const OscillatorParams& osc,
                                              const TimeGrid& grid, const QuadratureSpec& spec = {});

/// Coefficients of the position-only-preparation master equation; grid points
/// with vanishing denominator Gdot S - G Sdot are masked.
struct PositionPrepCoefficients {
  TimeGrid grid;
  std::vector<double> gamma1, gamma2, d1, d2;
  std::vector<char> valid;
};

PositionPrepCoefficients position_prep_coefficients(const PropagatorTable& prop,
                                                    const CorrelationTable& corr);

struct GaussianState;  // scenarios.hpp

/// First/second-moment flow implied by the Wigner-function master equation:
///   d<x> = <p>,           d<p> = -K<x> - Gamma<p> + <F>,
///   dsx  = 2 sxp,         dsxp = sp - K sx - Gamma sxp + D_x,
///   dsp  = -2 K sxp - 2 Gamma sp + 2 D_p.
/// The D_x sign is pinned by requiring exactness on the closed-form
/// factorized trajectories.
struct StateFlow {
  double mean_x, mean_p, var_x, cov_xp, var_p;
};

StateFlow moment_flow(const GaussianState& state, const MasterCoefficients::Sample& c);

/// Inverts the moment flow along a sampled Gaussian trajectory to recover the
/// preparation-dependent coefficients D_x, D_p and the drift <F>. Time
/// derivatives are taken by five-point central differences on the grid.
MasterCoefficients gaussian_scenario_coefficients(std::span<const GaussianState> trajectory,
                                                  const TimeGrid& grid,
                                                  const LocalCoefficients& local);

}  // namespace qbm

#pragma once

#include <vector>

#include "qbm/bath.hpp"
#include "qbm/grid.hpp"
#include "qbm/numerics.hpp"
#include "qbm/propagator.hpp"

namespace qbm {

/// Symmetrized position correlation of the coupled Gibbs state and its first
/// two derivatives, plus the force correlation nu(t). x2 = S(0) and
/// p2 = -Sddot(0) are the equilibrium marginal variances.
struct CorrelationTable {
  BathSpectrum bath;
  OscillatorParams osc;
  TimeGrid grid;
  std::vector<double> s, s1, s2;
  std::vector<double> nu;
  double x2 = 0.0;
  double p2 = 0.0;
};

CorrelationTable build_correlation(const BathSpectrum& bath, const OscillatorParams& osc,
                                   const TimeGrid& grid, const QuadratureSpec& spec = {});

/// nu(t) = integral of E_T(w) cos(w t); standalone variant for callers that
/// do not need the S table.
std::vector<double> force_correlation(const BathSpectrum& bath, const OscillatorParams& osc,
                                      const TimeGrid& grid, const QuadratureSpec& spec = {});

/// Driven second moments of the factorized initial condition,
///   b_x = <X^2>, b_p = <Xdot^2>,
/// with time derivatives taken under the frequency integral (the inner
/// integrals I(w,t) accumulate along the grid, one pass per frequency node).
struct NoiseMoments {
  TimeGrid grid;
  std::vector<double> bx, bx1, bx2;
  std::vector<double> bp, bp1;
};

NoiseMoments build_noise_moments(const PropagatorTable& prop, const BathSpectrum& bath,
                                 const TimeGrid& grid, const QuadratureSpec& spec = {});

}  // namespace qbm

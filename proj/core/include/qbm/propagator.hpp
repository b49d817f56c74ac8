#pragma once

#include <utility>
#include <vector>

#include "qbm/bath.hpp"
#include "qbm/grid.hpp"
#include "qbm/numerics.hpp"

namespace qbm {

/// Retarded Green function and its first three derivatives on a uniform grid,
/// plus the Wronskian W = Gdot^2 - G Gddot whose zeros make the time-local
/// coefficients singular.
struct PropagatorTable {
  BathSpectrum bath;
  OscillatorParams osc;
  TimeGrid grid;
  std::vector<double> g, g1, g2, g3;
  std::vector<double> wronskian;
};

/// Builds G, Gdot, Gddot, G^(3) by frequency-space quadrature: every
/// derivative is an w^n-weighted transform of alpha''(w), never a finite
/// difference. The lossless limit eta = 0 is filled from sin(w0 t)/w0.
PropagatorTable build_propagator(const BathSpectrum& bath, const OscillatorParams& osc,
                                 const TimeGrid& grid, const QuadratureSpec& spec = {});

/// Time-local friction Gamma(t) and stiffness K(t). Grid points where
/// |W| < wronskian_threshold are masked (NaN values, valid = false) and
/// reported as singular intervals; no interpolation across them.
struct LocalCoefficients {
  TimeGrid grid;
  std::vector<double> gamma, kappa;
  std::vector<char> valid;
  std::vector<std::pair<double, double>> singular_intervals;
  double wronskian_threshold = 1e-8;
};

LocalCoefficients local_coefficients(const PropagatorTable& prop, double wronskian_threshold = 1e-8);

/// Direct time-domain solution of the Green-function integro-differential
/// equation: implicit trapezoidal marching with the memory convolution
/// integrated exactly against the linear interpolant of Gdot. Cross-check
/// oracle for the Fourier route.
struct VolterraSolution {
  std::vector<double> g, g1;
};

VolterraSolution volterra_green(const BathSpectrum& bath, const OscillatorParams& osc,
                                const TimeGrid& grid);

}  // namespace qbm

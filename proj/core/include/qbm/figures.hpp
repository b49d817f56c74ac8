#pragma once

#include <string>

#include "qbm/config.hpp"

namespace qbm {

enum class FigureId { fig1a, fig1b, fig2, fig3a, fig3b, fig4 };

/// Maps "fig1a" ... "fig4"; throws config_error on anything else.
FigureId parse_figure_id(const std::string& name);

/// Computes one figure's curves and writes the CSV (header row plus full
/// double-precision scientific values). Deterministic for a fixed config.
void run_figure(FigureId id, const RunConfig& cfg, const std::string& out_path);

/// CSV text of a figure (same bytes the file variant writes).
std::string figure_csv(FigureId id, const RunConfig& cfg);

/// Quadratic fit of 1 - purity ~ c t^2 for the factorized squeezed state on
/// t in [0, 0.1 sqrt(lambda)/Lambda].
struct ShortTimePurityFit {
  double coefficient = 0.0;  // c
  double r_squared = 0.0;
  double reference = 0.0;  // Lambda^2 / (2 pi lambda)
  double ratio = 0.0;      // c / reference
};

ShortTimePurityFit measure_short_time_purity(const BathSpectrum& bath, const OscillatorParams& osc,
                                             double squeeze, const QuadratureSpec& spec = {});

/// JSON report of the headline scalars (equilibrium purity, quench initial
/// purity, mu(0), Gibbs variances, singular intervals of Gamma/K, short-time
/// purity coefficient and its ratio to Lambda^2/(2 pi lambda)).
std::string report_scalars(const RunConfig& cfg);

}  // namespace qbm

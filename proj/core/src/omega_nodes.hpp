#pragma once

// Internal: shared frequency-node sets for the Fourier-integral table
// builders. One adaptive refinement pass resolves the whole integrand family
// (susceptibility transforms and the thermal noise spectrum); every table is
// then a plain weighted trig sum over the same nodes, so the expensive
// spectrum evaluations happen once per node.

#include <vector>

#include "qbm/bath.hpp"
#include "qbm/numerics.hpp"

namespace qbm::detail {

struct OmegaNodes {
  std::vector<double> omega;
  std::vector<double> weight;
  // Cached per-node spectrum values.
  std::vector<double> alpha_im;    // alpha''(w)
  std::vector<double> coth;        // coth(w/2T), 1 at T = 0
  std::vector<double> noise;       // E_T(w)
};

/// Builds a node set able to carry w^n-weighted transforms of alpha'' (n <= 3,
/// with and without coth) and of E_T, for any trig frequency up to t_max.
OmegaNodes build_omega_nodes(const BathSpectrum& bath, const OscillatorParams& osc,
                             double t_max, const QuadratureSpec& spec);

}  // namespace qbm::detail

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbm/bath.hpp"
#include "qbm/errors.hpp"
#include "qbm/grid.hpp"

namespace qbm {

enum class ScenarioKind { correlated_prep, factorized, quench };

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::correlated_prep;
  double x0 = 1.0;
  double squeeze = 10.0;
  double k_old = 0.01;
  double k_new = 1.0;
  std::vector<double> taus;  // empty: figure commands use their default sweep
};

struct GridConfig {
  double dt = 0.01;
  double t_max = 30.0;
  double quad_tolerance = 1e-10;
};

/// Full run configuration: INI-style file with [bath], [oscillator], [grid]
/// and [scenario] sections; unknown sections or keys are rejected.
struct RunConfig {
  BathSpectrum bath{0.5, 10.0, 0.0};
  OscillatorParams osc{1.0};
  GridConfig grid;
  ScenarioConfig scenario;

  TimeGrid time_grid() const { return TimeGrid::from_range(grid.dt, grid.t_max); }
  QuadratureSpec quadrature() const {
    QuadratureSpec s;
    s.abs_tolerance = grid.quad_tolerance;
    return s;
  }
};

/// Parses the file; throws config_error on unknown keys or invalid values.
RunConfig parse_config_file(const std::string& path);

/// Parses config text (same schema as the file).
RunConfig parse_config_text(const std::string& text);

/// Flag overrides applied after the file (flag wins).
struct ConfigOverrides {
  std::optional<double> dt, t_max, eta, k, lambda_cutoff, temperature;
};

void apply_overrides(RunConfig& cfg, const ConfigOverrides& o);

}  // namespace qbm

#pragma once

#include <vector>

#include "qbm/correlation.hpp"
#include "qbm/grid.hpp"
#include "qbm/master.hpp"
#include "qbm/propagator.hpp"

namespace qbm {

/// One-time Gaussian state of the oscillator: means and symmetric covariances.
struct GaussianState {
  double mean_x = 0.0;
  double mean_p = 0.0;
  double var_x = 0.5;
  double cov_xp = 0.0;
  double var_p = 0.5;
};

/// Tr[rho^2] = 1 / sqrt(4 sx sp - 4 sxp^2). Throws std::domain_error when the
/// state violates the uncertainty relation beyond 1e-9.
double purity(const GaussianState& state);

/// sx sp - sxp^2 >= 1/4 - tol.
bool satisfies_uncertainty(const GaussianState& state, double tol = 1e-9);

/// Displaced squeezed projector |psi><psi| used as preparation:
/// delta_x = 1/(2 lambda), delta_p = lambda/2, displacement x0.
struct PreparationSpec {
  double x0 = 0.0;
  double squeeze = 1.0;  // lambda = e^{2r}

  PreparationSpec() = default;
  PreparationSpec(double displacement, double lambda) : x0(displacement), squeeze(lambda) {
    if (!(squeeze > 0.0)) throw std::invalid_argument("PreparationSpec: squeeze must be positive");
  }

  double delta_x() const { return 0.5 / squeeze; }
  double delta_p() const { return 0.5 * squeeze; }
};

/// Sudden spring-constant change k_old -> k_new at t = 0, state untouched.
struct QuenchSpec {
  double k_old = 0.01;
  double k_new = 1.0;

  QuenchSpec() = default;
  QuenchSpec(double old_k, double new_k) : k_old(old_k), k_new(new_k) {
    if (!(k_old > 0.0) || !(k_new > 0.0))
      throw std::invalid_argument("QuenchSpec: spring constants must be positive");
  }

  double epsilon_k() const { return k_old - k_new; }
};

/// Everything the scenario evaluators need, built on one shared grid.
struct SystemTables {
  BathSpectrum bath;
  OscillatorParams osc;
  TimeGrid grid;
  PropagatorTable prop;
  CorrelationTable corr;
  NoiseMoments noise;
};

SystemTables build_system_tables(const BathSpectrum& bath, const OscillatorParams& osc,
                                 const TimeGrid& grid, const QuadratureSpec& spec = {});

/// State prepared by measuring the displaced-squeezed projector on the global
/// Gibbs state, evolved exactly (closed forms of the four-fold phase-space
/// integrals). cov_xp comes from the analytic time derivative of var_x.
class CorrelatedPrepScenario {
 public:
  CorrelatedPrepScenario(const SystemTables& tables, const PreparationSpec& prep);

  GaussianState at(std::size_t i) const;
  std::vector<GaussianState> trajectory() const;

  double weight_x() const { return wx_; }
  double weight_p() const { return wp_; }
  double normalization() const;  // Z = sqrt(wx wp) / 2

 private:
  const SystemTables& tab_;
  PreparationSpec prep_;
  double wx_, wp_;
};

/// Factorized initial condition: arbitrary oscillator Gaussian state times the
/// thermal bath; exact evolution via the driven moments b_x, b_p.
class FactorizedScenario {
 public:
  FactorizedScenario(const SystemTables& tables, const GaussianState& initial);
  /// Pure displaced-squeezed initial state.
  FactorizedScenario(const SystemTables& tables, const PreparationSpec& prep);

  GaussianState at(std::size_t i) const;
  std::vector<GaussianState> trajectory() const;

 private:
  const SystemTables& tab_;
  GaussianState init_;
};

/// Quench evolution: Gibbs state of the old Hamiltonian propagated with the
/// new Green function. Means vanish; covariances follow the S-weighted single
/// and double integrals of the new propagator, accumulated once on the grid.
class QuenchScenario {
 public:
  QuenchScenario(const BathSpectrum& bath, const QuenchSpec& quench, const TimeGrid& grid,
                 const QuadratureSpec& spec = {});

  GaussianState at(std::size_t i) const;
  std::vector<GaussianState> trajectory() const;

  const CorrelationTable& old_correlation() const { return corr_old_; }
  const PropagatorTable& new_propagator() const { return prop_new_; }

 private:
  QuenchSpec quench_;
  TimeGrid grid_;
  CorrelationTable corr_old_;
  PropagatorTable prop_new_;
  std::vector<double> int_gs_;    // int_0^t Gnew S
  std::vector<double> int_g1s1_;  // int_0^t Gnew' Sdot
  std::vector<double> conv_g_;    // g(t) = int_0^t Gnew(v) S(t-v) dv
  std::vector<double> dbl_x_;     // double integral for var_x
  std::vector<double> dbl_p_;     // double integral for var_p
};

/// Exact correlated mean against its high-temperature asymptote
/// [1 - k int_0^t G] x0.
struct HighTMean {
  double exact;
  double asymptotic;
};

HighTMean high_T_mean(const SystemTables& tables, const PreparationSpec& prep, std::size_t i);

}  // namespace qbm

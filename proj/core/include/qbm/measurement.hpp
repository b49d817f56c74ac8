#pragma once

#include <optional>
#include <vector>

#include "qbm/gaussian_algebra.hpp"
#include "qbm/master.hpp"

namespace qbm {

/// Projective measurements applied at strictly increasing grid times,
/// t_0 = 0 first (the preparation). Vacuum projectors by default.
struct MeasurementSchedule {
  std::vector<double> times;
  std::vector<ProjectorSpec> ops;  // same length as times, or empty for all-vacuum

  static MeasurementSchedule vacuum_at(std::vector<double> times_);
};

struct SurvivalResult {
  enum class Method { exact, weak_coupling };
  double tau = 0.0;
  double pr_210 = 0.0;  // weak: the conditional exp(-2 gamma(tau))
  double pr_20 = 0.0;   // weak: exp(-gamma(2 tau))
  double pr_0 = 1.0;    // weak route works with conditionals, so 1
  double ratio = 0.0;
  Method method = Method::exact;
};

/// Evaluates joint measurement statistics on the Gibbs state through the
/// phase-space reduction. tau values are consumed as multiples of the table
/// grid step; off-grid times are refused rather than interpolated.
class MeasurementEngine {
 public:
  MeasurementEngine(const PropagatorTable& prop, const CorrelationTable& corr);

  /// Pr(n,...,1,0) = <f0^dag f1^dag ... fn^dag fn ... f1 f0>.
  JointQuantity joint_quantity(const MeasurementSchedule& schedule) const;

  /// R = Pr(2,1|0) / Pr(2|0) from vacuum projectors at (0, tau, 2 tau).
  SurvivalResult survival_ratio(double tau) const;

  const GibbsKernel& kernel() const { return kernel_; }

 private:
  GibbsKernel kernel_;
};

/// Weak-coupling / secular Zeno model: Pr(n,...,1|0) ~ exp(-n gamma(tau)) with
/// gamma(t) = int_0^t D_p - (w0/2) int_0^t Gamma over the weak-coupling
/// coefficient table.
class WeakZenoModel {
 public:
  WeakZenoModel(const MasterCoefficients& weak, const OscillatorParams& osc);

  double gamma_integral(double t) const;  // gamma(t) at a grid multiple
  SurvivalResult survival_ratio(double tau) const;

 private:
  TimeGrid grid_;
  std::vector<double> gamma_;
};

}  // namespace qbm

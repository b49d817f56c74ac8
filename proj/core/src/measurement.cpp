#include "qbm/measurement.hpp"

#include <cmath>

namespace qbm {

MeasurementSchedule MeasurementSchedule::vacuum_at(std::vector<double> times_) {
  MeasurementSchedule s;
  s.times = std::move(times_);
  return s;
}

MeasurementEngine::MeasurementEngine(const PropagatorTable& prop, const CorrelationTable& corr)
    : kernel_(prop, corr) {}

JointQuantity MeasurementEngine::joint_quantity(const MeasurementSchedule& schedule) const {
  const std::size_t n_times = schedule.times.size();
  if (n_times == 0) throw std::invalid_argument("joint_quantity: empty schedule");
  if (!schedule.ops.empty() && schedule.ops.size() != n_times)
    throw std::invalid_argument("joint_quantity: ops/times length mismatch");
  if (schedule.times.front() != 0.0)
    throw std::invalid_argument("joint_quantity: schedule must start at t = 0");
  // The 2(n+1)-variable reduction caps at dimension 16, i.e. four schedule
  // times (preparation plus three measurements).
  if (2 * 2 * n_times > static_cast<std::size_t>(SymmetricQuadraticForm::max_dimension))
    throw std::invalid_argument("joint_quantity: schedule exceeds the dimension cap 16");

  std::vector<std::size_t> idx(n_times);
  for (std::size_t j = 0; j < n_times; ++j) {
    idx[j] = kernel_.grid().index_of(schedule.times[j]);
    if (j > 0 && idx[j] <= idx[j - 1])
      throw std::invalid_argument("joint_quantity: times must be strictly increasing");
  }

  // f0^dag f1^dag ... fn^dag fn ... f1 f0 (projectors are Hermitian).
  std::vector<Insertion> ins;
  ins.reserve(2 * n_times);
  for (std::size_t j = 0; j < n_times; ++j)
    ins.push_back({schedule.ops.empty() ? vacuum_projector() : schedule.ops[j], idx[j]});
  for (std::size_t j = n_times; j-- > 0;)
    ins.push_back({schedule.ops.empty() ? vacuum_projector() : schedule.ops[j], idx[j]});

  JointQuantity out;
  try {
    out = insertion_product_expectation(kernel_, ins);
  } catch (const std::domain_error& e) {
    std::string what = "joint_quantity: indefinite quadratic form for schedule {";
    for (std::size_t j = 0; j < n_times; ++j)
      what += (j ? ", " : "") + std::to_string(schedule.times[j]);
    what += "}: ";
    what += e.what();
    throw std::domain_error(what);
  }
  if (out.value < -1e-9 || out.imag_residual > 1e-9 * std::max(1.0, std::abs(out.value)))
    throw std::runtime_error("joint_quantity: result not real non-negative within tolerance");
  return out;
}

SurvivalResult MeasurementEngine::survival_ratio(double tau) const {
  if (!(tau > 0.0)) throw std::invalid_argument("survival_ratio: tau must be positive");
  SurvivalResult out;
  out.tau = tau;
  out.method = SurvivalResult::Method::exact;
  out.pr_210 = joint_quantity(MeasurementSchedule::vacuum_at({0.0, tau, 2.0 * tau})).value;
  out.pr_20 = joint_quantity(MeasurementSchedule::vacuum_at({0.0, 2.0 * tau})).value;
  out.pr_0 = joint_quantity(MeasurementSchedule::vacuum_at({0.0})).value;
  if (!(out.pr_20 > 0.0)) throw std::runtime_error("survival_ratio: Pr(2,0) vanished");
  out.ratio = out.pr_210 / out.pr_20;
  return out;
}

WeakZenoModel::WeakZenoModel(const MasterCoefficients& weak, const OscillatorParams& osc)
    : grid_(weak.grid) {
  if (weak.kind != CoefficientKind::weak_coupling)
    throw std::invalid_argument("WeakZenoModel: needs weak-coupling coefficients");
  const std::size_t n = grid_.size;
  std::vector<double> integrand(n);
  const double half_w0 = 0.5 * osc.omega0();
  for (std::size_t i = 0; i < n; ++i) integrand[i] = weak.dp[i] - half_w0 * weak.gamma[i];
  gamma_ = cumulative_integral(integrand, grid_.dt);
}

double WeakZenoModel::gamma_integral(double t) const { return gamma_[grid_.index_of(t)]; }

SurvivalResult WeakZenoModel::survival_ratio(double tau) const {
  if (!(tau > 0.0)) throw std::invalid_argument("survival_ratio: tau must be positive");
  SurvivalResult out;
  out.tau = tau;
  out.method = SurvivalResult::Method::weak_coupling;
  const double g1 = gamma_integral(tau);
  const double g2 = gamma_integral(2.0 * tau);
  out.pr_210 = std::exp(-2.0 * g1);
  out.pr_20 = std::exp(-g2);
  out.pr_0 = 1.0;
  out.ratio = out.pr_210 / out.pr_20;
  return out;
}

}  // namespace qbm

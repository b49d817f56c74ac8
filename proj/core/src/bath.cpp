#include "qbm/bath.hpp"

#include <numbers>

namespace qbm {

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
}

std::complex<double> BathSpectrum::friction_spectrum(double w) const {
  if (!std::isfinite(w)) throw std::invalid_argument("friction_spectrum: non-finite frequency");
  return {friction_real(w), friction_imag(w)};
}

double BathSpectrum::memory_kernel(double t, int order) const {
  if (t < 0.0) throw std::invalid_argument("memory_kernel: t < 0 (kernel vanishes by causality)");
  if (order < 0 || order > 1) throw std::invalid_argument("memory_kernel: order must be 0 or 1");
  const double mu0 = eta * cutoff_lambda / kSqrtPi;
  const double arg = 0.25 * cutoff_lambda * cutoff_lambda * t * t;
  const double mu = mu0 * std::exp(-arg);
  if (order == 0) return mu;
  return -0.5 * cutoff_lambda * cutoff_lambda * t * mu;
}

double BathSpectrum::noise_spectrum(double w) const {
  if (!(w >= 0.0)) throw std::invalid_argument("noise_spectrum: w must be >= 0");
  if (w == 0.0) {
    return temperature > 0.0 ? 2.0 * temperature * eta / std::numbers::pi : 0.0;
  }
  return friction_real(w) * (w / std::numbers::pi) * thermal_coth(w);
}

std::complex<double> susceptibility(const BathSpectrum& bath, const OscillatorParams& osc, double w) {
  if (!std::isfinite(w)) throw std::invalid_argument("susceptibility: non-finite frequency");
  const double re = osc.spring_k - w * w + w * bath.friction_imag(w);
  const double im = -w * bath.friction_real(w);
  if (re == 0.0 && im == 0.0)
    throw std::domain_error("susceptibility: pole at w = +-sqrt(k) in the lossless limit");
  return 1.0 / std::complex<double>(re, im);
}

double susceptibility_imag(const BathSpectrum& bath, const OscillatorParams& osc, double w) {
  const double re = osc.spring_k - w * w + w * bath.friction_imag(w);
  const double im = w * bath.friction_real(w);
  const double denom = re * re + im * im;
  if (denom == 0.0)
    throw std::domain_error("susceptibility: pole at w = +-sqrt(k) in the lossless limit");
  return im / denom;
}

}  // namespace qbm

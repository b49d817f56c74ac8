#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "qbm/numerics.hpp"

namespace qbm {

/// Ohmic bath with exponential cutoff in natural units (m = k_B = hbar = 1):
/// eta'(w) = eta exp(-w^2/Lambda^2). The temperature lives here so every
/// table built from this spectrum is unambiguous about its thermal state.
struct BathSpectrum {
  double eta = 0.5;
  double cutoff_lambda = 10.0;
  double temperature = 0.0;

  BathSpectrum() = default;
  BathSpectrum(double eta_, double lambda_, double temp_)
      : eta(eta_), cutoff_lambda(lambda_), temperature(temp_) {
    if (!(eta >= 0.0)) throw std::invalid_argument("BathSpectrum: eta must be >= 0");
    if (!(cutoff_lambda > 0.0)) throw std::invalid_argument("BathSpectrum: cutoff must be positive");
    if (!(temperature >= 0.0)) throw std::invalid_argument("BathSpectrum: temperature must be >= 0");
  }

  /// Real part of the friction spectrum, even in w.
  double friction_real(double w) const {
    const double u = w / cutoff_lambda;
    return eta * std::exp(-u * u);
  }

  /// Imaginary part, odd in w; fixed by the Hilbert transform of eta'.
  double friction_imag(double w) const {
    return eta * erfi_scaled(w / cutoff_lambda);
  }

  std::complex<double> friction_spectrum(double w) const;

  /// mu(t) (order 0) or its derivative (order 1). Rejects t < 0: mu vanishes
  /// there by causality convention.
  double memory_kernel(double t, int order = 0) const;

  /// coth(w / 2T); 1 at T = 0. Cancellation-free at large w/T.
  double thermal_coth(double w) const {
    if (temperature == 0.0) return 1.0;
    return 1.0 + 2.0 / std::expm1(w / temperature);
  }

  /// E_T(w) = eta'(w) (w/pi) coth(w/2T) with the analytic w -> 0 limit.
  double noise_spectrum(double w) const;

  /// Upper quadrature limit in absolute frequency.
  double omega_upper(const QuadratureSpec& spec = {}) const {
    return spec.cutoff_multiple * cutoff_lambda;
  }
};

struct OscillatorParams {
  double spring_k = 1.0;

  OscillatorParams() = default;
  explicit OscillatorParams(double k) : spring_k(k) {
    if (!(spring_k > 0.0)) throw std::invalid_argument("OscillatorParams: k must be positive");
  }

  double omega0() const { return std::sqrt(spring_k); }
};

/// alpha(w) = 1 / (-w^2 - i w eta(w) + k). Throws std::domain_error on the
/// lossless pole (eta = 0, w = +-sqrt(k)).
std::complex<double> susceptibility(const BathSpectrum& bath, const OscillatorParams& osc, double w);

/// Im alpha(w) = w eta'(w) / |denominator|^2, computed without the division
/// by the full complex value; >= 0 for w >= 0.
double susceptibility_imag(const BathSpectrum& bath, const OscillatorParams& osc, double w);

}  // namespace qbm

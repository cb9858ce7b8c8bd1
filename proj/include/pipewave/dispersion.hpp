#pragma once

#include <complex>
#include <cstddef>
#include <optional>

#include "pipewave/homogenize.hpp"

namespace pipewave {

/// Which third-derivative form the linear relation comes from: pure space
/// derivatives (q_xxx, rho_xxx) or the mixed space-time form (rho_xxt, q_xxt).
enum class DispersionForm { xxx, xxt };

const char* to_string(DispersionForm form);

struct DispersionSample {
  double k = 0.0;
  std::complex<double> omega_plus;
  std::complex<double> omega_minus;
  DispersionForm form = DispersionForm::xxx;
};

// All relations linearize the homogenized system about (rho_lin, 0), where
// rho_lin is the background value of the evolved density variable. Passing
// H.rho0 reproduces the textbook relation; passing 0 linearizes the
// perturbation variable the spectral solver actually evolves.

/// omega = +-|k| sqrt((a1 + i k a2 - k^2 a5)(b1 + b3 r + i k (b4 + b10 r) - k^2 b11)),
/// principal square root.
DispersionSample omega_xxx(double k, const HomogCoefficients& h, double rho_lin);

/// omega = +-|k| sqrt(a1 (b1 + b3 r) / ((1 + a5b k^2)(1 + b11b k^2))).
DispersionSample omega_xxt(double k, const HomogCoefficients& h, double rho_lin);

/// k -> 0 phase speed sqrt(alpha1 (beta1 + beta3 rho_lin)).
double long_wave_speed(const HomogCoefficients& h, double rho_lin);

struct StabilityReport {
  double k_max = 0.0;
  std::size_t n_samples = 0;
  double max_imag_xxx = 0.0;
  double max_imag_xxt = 0.0;
  /// Smallest k > 0 where |Im omega_xxx| exceeds the threshold, refined by bisection.
  std::optional<double> xxx_instability_k;
};

constexpr double instability_threshold = 1e-10;

StabilityReport stability_scan(const HomogCoefficients& h, double rho_lin, double k_max,
                               std::size_t n_samples);

}  // namespace pipewave

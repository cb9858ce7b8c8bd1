#pragma once

// Fourier pseudospectral solver for the homogenized system in mixed-derivative
// form:
//
//   rho_t = (1 - alpha5b d_xx)^-1 F1(rho, q)
//   q_t   = (1 - beta11b d_xx)^-1 F2(rho, q)
//
// The evolved fields are the scaled perturbations rho_bar = (rho - rho0)/delta
// and q_bar = q/delta on a periodic grid.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pipewave/fft.hpp"
#include "pipewave/homogenize.hpp"

namespace pipewave {

struct SpectralGrid {
  double x_lo = 0.0;
  double x_hi = 0.0;
  std::size_t n = 0;

  double length() const { return x_hi - x_lo; }
  double dx() const { return length() / static_cast<double>(n); }
  std::vector<double> points() const;
};

struct SpectralState {
  std::vector<double> rho_bar;
  std::vector<double> q_bar;
  double t = 0.0;
};

struct SpectralFields {
  std::vector<double> f1;
  std::vector<double> f2;
};

struct SpectralOptions {
  bool dealias = true;
  /// Keep only the terms linear in the perturbation, with coefficients
  /// frozen at rho_lin (beta1 + beta3 rho_lin, beta4 + beta10 rho_lin).
  bool linear_only = false;
  double rho_lin = 0.0;
  double cfl = 0.5;
};

struct SpectralSnapshot {
  double t = 0.0;
  std::vector<double> x;
  std::vector<double> rho_bar;
  std::vector<double> q_bar;
};

struct SpectralRunResult {
  std::vector<SpectralSnapshot> snapshots;
  std::vector<std::string> warnings;
  std::size_t steps = 0;
};

class SpectralSolver {
 public:
  SpectralSolver(SpectralGrid grid, HomogCoefficients h, SpectralOptions options = {});

  const SpectralGrid& grid() const { return grid_; }
  const HomogCoefficients& coefficients() const { return h_; }
  const SpectralOptions& options() const { return options_; }

  /// F1, F2 without the xxt terms.
  SpectralFields rhs(const SpectralState& state) const;
  /// Solves (1 - c d_xx) u = field mode by mode.
  std::vector<double> helmholtz_invert(std::span<const double> field, double c) const;
  /// d^order/dx^order, order 1 or 2; odd derivatives drop the Nyquist mode.
  std::vector<double> derivative(std::span<const double> field, int order) const;
  /// (rho_bar_t, q_bar_t)
  SpectralFields time_derivative(const SpectralState& state) const;

  /// One SSP-RK3 step; throws std::runtime_error if a stage goes non-finite.
  void step(SpectralState& state, double dt) const;

  /// cfl * dx / c0 with c0 = sqrt(alpha1 (beta1 + beta3 rho_lin)).
  double default_dt() const;

  /// Steps uniformly between consecutive snapshot times, using at most
  /// `dt` (default_dt() when empty) per step.
  SpectralRunResult run(SpectralState initial, std::span<const double> snapshot_times,
                        std::optional<double> dt = std::nullopt) const;

  /// Rate of change of the integral of rho_bar implied by F1; only the terms
  /// that are not x-derivatives of a flux contribute.
  double mass_rate(const SpectralState& state) const;

 private:
  void apply_mask(std::vector<std::complex<double>>& spec) const;

  SpectralGrid grid_;
  HomogCoefficients h_;
  SpectralOptions options_;
  RealFft fft_;
  std::vector<double> k_;  // wavenumbers of the n/2+1 stored modes
  std::size_t cutoff_;     // modes j >= cutoff_ are zeroed when dealiasing
};

/// Evaluates the trigonometric interpolant of periodic samples on
/// [x_lo, x_lo + length) at arbitrary points.
std::vector<double> spectral_interpolate(std::span<const double> samples, double x_lo,
                                         double length, std::span<const double> points);

double integrate_periodic(std::span<const double> samples, double dx);

}  // namespace pipewave

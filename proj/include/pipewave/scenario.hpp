#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pipewave/fvm.hpp"
#include "pipewave/homogenize.hpp"
#include "pipewave/medium.hpp"
#include "pipewave/spectral.hpp"

namespace pipewave {

/// rho(x, 0) = background + amplitude * exp(-((x - center)/width)^2)
struct Pulse {
  double amplitude = 0.0;
  double width = 1.0;
  double center = 0.0;

  double operator()(double x) const;
};

struct Scenario {
  std::string name;
  CrossSectionProfile profile = CrossSectionProfile::constant(1.0);
  GasModel gas;
  double rho_background = 0.3;
  Pulse pulse;
  double x_lo = -60.0;
  double x_hi = 470.0;
  double t_end = 480.0;
  std::vector<double> snapshot_times{0.0, 30.0, 60.0, 120.0, 240.0, 480.0};

  // Solver settings.
  std::size_t cells_per_period = 192;
  double cfl = 0.55;
  std::size_t n_modes = 0;  // 0: next power of two giving dx <= 600/4096
  double cfl_spectral = 0.5;
  Boundary bc = Boundary::outflow;
  /// Length of a moving FVM grid that starts at x_lo and follows the
  /// right-going front up to x_hi. 0 means the FVM covers the whole domain.
  double fvm_window = 150.0;
  bool dealias = true;

  // Comparison settings.
  double steepness_threshold = 0.05;
  double early_error_threshold = 0.05;
  double prominence_fraction = 0.1;
  double window_half_width = 50.0;

  /// Throws std::invalid_argument on a degenerate or inconsistent scenario.
  void validate() const;
};

std::vector<std::string> scenario_presets();

/// "scenario_a" or "scenario_b"; anything else throws with the preset list.
Scenario build_scenario(const std::string& name);

/// Same physics on [-100, 100] up to t = 60, at 64 cells per period and
/// without the moving window.
Scenario ci_scale(Scenario s);

std::size_t fvm_cell_count(const Scenario& s);
std::size_t spectral_mode_count(const Scenario& s);

/// Initial FVM grid: the window when one is set, else the whole domain.
FvmGrid fvm_grid(const Scenario& s);
bool fvm_window_active(const Scenario& s);
/// Point values of the pulse at cell centers, m = 0.
FvmState fvm_initial_state(const Scenario& s, const FvmGrid& grid);

/// FVM snapshots at s.snapshot_times, on the moving window when active.
std::vector<FvmSnapshot> run_fvm(const Scenario& s, FvmRunStats* stats = nullptr);

HomogCoefficients scenario_coefficients(const Scenario& s);
/// Periodic grid centered on the pulse and wide enough to hold the FVM domain
/// on both sides, so the left-going half never wraps onto the right-going one.
SpectralGrid spectral_grid(const Scenario& s);
SpectralOptions spectral_options(const Scenario& s);
/// rho_bar = (rho - rho0)/delta, q_bar = 0.
SpectralState spectral_initial_state(const Scenario& s, const SpectralGrid& grid);

/// Homogenized snapshot back in physical variables: rho = rho0 + delta rho_bar, q = delta q_bar.
struct FieldSnapshot {
  double t = 0.0;
  std::vector<double> x;
  std::vector<double> rho;
  std::vector<double> q;
};

FieldSnapshot to_physical(const SpectralSnapshot& s, double rho0, double delta);

}  // namespace pipewave

#include "pipewave/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace pipewave {

namespace {

constexpr std::size_t window_lead_periods = 40;
constexpr std::size_t window_shift_periods = 10;

}  // namespace

double Pulse::operator()(double x) const {
  const double z = (x - center) / width;
  return amplitude * std::exp(-z * z);
}

void Scenario::validate() const {
  if (!(pulse.amplitude > 0.0)) throw std::invalid_argument("scenario: pulse amplitude must be > 0");
  if (!(pulse.width > 0.0)) throw std::invalid_argument("scenario: pulse width must be > 0");
  if (!(rho_background > 0.0)) throw std::invalid_argument("scenario: background density must be > 0");
  if (!(x_hi > x_lo)) throw std::invalid_argument("scenario: need x_hi > x_lo");
  if (!(t_end >= 0.0)) throw std::invalid_argument("scenario: t_end must be >= 0");
  if (snapshot_times.empty()) throw std::invalid_argument("scenario: no snapshot times");
  for (std::size_t i = 0; i < snapshot_times.size(); ++i) {
    const double t = snapshot_times[i];
    if (!(t >= 0.0) || t > t_end) {
      throw std::invalid_argument("scenario: snapshot times must lie in [0, t_end]");
    }
    if (i > 0 && !(t > snapshot_times[i - 1])) {
      throw std::invalid_argument("scenario: snapshot times must be strictly increasing");
    }
  }
  if (cells_per_period < 8) throw std::invalid_argument("scenario: need >= 8 cells per period");
  if (!(cfl > 0.0 && cfl < 1.0)) throw std::invalid_argument("scenario: cfl must lie in (0, 1)");
  if (!(cfl_spectral > 0.0)) throw std::invalid_argument("scenario: cfl_spectral must be > 0");
  if (n_modes != 0 && (n_modes < 64 || n_modes % 2 != 0)) {
    throw std::invalid_argument("scenario: n_modes must be even and >= 64");
  }
  if (!(prominence_fraction > 0.0)) throw std::invalid_argument("scenario: prominence_fraction must be > 0");
  if (!(window_half_width > 0.0)) throw std::invalid_argument("scenario: window_half_width must be > 0");
  const double periods = (x_hi - x_lo) / profile.period();
  if (std::abs(periods - std::round(periods)) > 1e-9 * periods) {
    throw std::invalid_argument("scenario: domain must span a whole number of periods");
  }
  if (!(fvm_window >= 0.0)) throw std::invalid_argument("scenario: fvm_window must be >= 0");
  if (fvm_window > 0.0 && fvm_window < x_hi - x_lo) {
    const double w = fvm_window / profile.period();
    if (std::abs(w - std::round(w)) > 1e-9 * w) {
      throw std::invalid_argument("scenario: fvm_window must be a whole number of periods");
    }
    if (std::round(w) < static_cast<double>(window_lead_periods + window_shift_periods)) {
      throw std::invalid_argument("scenario: fvm_window must hold at least " +
                                  std::to_string(window_lead_periods + window_shift_periods) +
                                  " periods");
    }
    if (bc != Boundary::outflow) throw std::invalid_argument("scenario: fvm_window needs bc = outflow");
  }
}

std::vector<std::string> scenario_presets() { return {"scenario_a", "scenario_b"}; }

Scenario build_scenario(const std::string& name) {
  Scenario s;
  s.name = name;
  if (name == "scenario_a") {
    s.profile = CrossSectionProfile::piecewise_constant({0.0, 0.5}, {0.25, 0.75}, 1.0);
    s.pulse = {1.0 / 20.0, 8.0, 0.0};
    s.cells_per_period = 160;
    s.cfl = 0.9;
  } else if (name == "scenario_b") {
    s.profile = CrossSectionProfile::sinusoidal(0.6, 0.4, 1.0);
    s.pulse = {1.0 / 12.0, 5.0, 0.0};
  } else {
    std::string list;
    for (const auto& p : scenario_presets()) list += (list.empty() ? "" : ", ") + p;
    throw std::invalid_argument("unknown scenario '" + name + "' (presets: " + list + ")");
  }
  return s;
}

Scenario ci_scale(Scenario s) {
  s.fvm_window = 0.0;
  s.cells_per_period = 64;
  s.x_lo = -100.0;
  s.x_hi = 100.0;
  s.t_end = 60.0;
  s.snapshot_times = {0.0, 15.0, 30.0, 45.0, 60.0};
  return s;
}

bool fvm_window_active(const Scenario& s) {
  return s.fvm_window > 0.0 && s.fvm_window < s.x_hi - s.x_lo;
}

std::size_t fvm_cell_count(const Scenario& s) {
  const double length = fvm_window_active(s) ? s.fvm_window : s.x_hi - s.x_lo;
  const double periods = std::round(length / s.profile.period());
  return static_cast<std::size_t>(periods) * s.cells_per_period;
}

namespace {

double spectral_half_length(const Scenario& s) {
  return std::max(s.pulse.center - s.x_lo, s.x_hi - s.pulse.center);
}

}  // namespace

std::size_t spectral_mode_count(const Scenario& s) {
  if (s.n_modes != 0) return s.n_modes;
  const double target_dx = 600.0 / 4096.0;
  std::size_t n = 64;
  while (static_cast<double>(n) * target_dx < 2.0 * spectral_half_length(s)) n *= 2;
  return n;
}

FvmGrid fvm_grid(const Scenario& s) {
  const double x_hi = fvm_window_active(s) ? s.x_lo + s.fvm_window : s.x_hi;
  return FvmGrid::build(s.profile, s.x_lo, x_hi, fvm_cell_count(s), s.bc);
}

std::vector<FvmSnapshot> run_fvm(const Scenario& s, FvmRunStats* stats) {
  const auto grid = fvm_grid(s);
  auto state = fvm_initial_state(s, grid);
  if (!fvm_window_active(s)) return run(std::move(state), grid, s.gas, s.snapshot_times, s.cfl, stats);
  MovingWindow w;
  w.cells_per_period = s.cells_per_period;
  w.lead_periods = window_lead_periods;
  w.shift_periods = window_shift_periods;
  w.x_max = s.x_hi;
  w.tolerance = 1e-6 * s.pulse.amplitude;
  return run(std::move(state), grid, s.gas, s.snapshot_times, s.cfl, w, stats);
}

FvmState fvm_initial_state(const Scenario& s, const FvmGrid& grid) {
  FvmState st;
  st.rho.resize(grid.n_cells);
  st.m.assign(grid.n_cells, 0.0);
  for (std::size_t i = 0; i < grid.n_cells; ++i) {
    st.rho[i] = s.rho_background + s.pulse(grid.center(i));
  }
  return st;
}

HomogCoefficients scenario_coefficients(const Scenario& s) {
  return homogenize(s.profile, s.gas, s.rho_background);
}

SpectralGrid spectral_grid(const Scenario& s) {
  const double h = spectral_half_length(s);
  return {s.pulse.center - h, s.pulse.center + h, spectral_mode_count(s)};
}

SpectralOptions spectral_options(const Scenario& s) {
  SpectralOptions o;
  o.dealias = s.dealias;
  o.cfl = s.cfl_spectral;
  return o;
}

SpectralState spectral_initial_state(const Scenario& s, const SpectralGrid& grid) {
  const double delta = s.profile.period();
  SpectralState st;
  const auto x = grid.points();
  st.rho_bar.resize(x.size());
  st.q_bar.assign(x.size(), 0.0);
  for (std::size_t j = 0; j < x.size(); ++j) st.rho_bar[j] = s.pulse(x[j]) / delta;
  return st;
}

FieldSnapshot to_physical(const SpectralSnapshot& s, double rho0, double delta) {
  FieldSnapshot f;
  f.t = s.t;
  f.x = s.x;
  f.rho.resize(s.rho_bar.size());
  f.q.resize(s.q_bar.size());
  for (std::size_t j = 0; j < f.rho.size(); ++j) f.rho[j] = rho0 + delta * s.rho_bar[j];
  for (std::size_t j = 0; j < f.q.size(); ++j) f.q[j] = delta * s.q_bar[j];
  return f;
}

}  // namespace pipewave

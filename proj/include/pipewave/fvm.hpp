#pragma once

// First-order f-wave finite volume solver for
//
//   a rho_t + (a m)_x = 0
//   a m_t + (a m^2/rho + a P(rho))_x = P(rho) a_x
//
// in capacity form: V_i -= dt/(a_i dx) (A+dV_{i-1/2} + A-dV_{i+1/2}).

#include <array>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "pipewave/medium.hpp"

namespace pipewave {

enum class Boundary { outflow, periodic };

const char* to_string(Boundary bc);
Boundary boundary_from_string(const std::string& name);

constexpr std::size_t fvm_ghost_cells = 2;

struct FvmGrid {
  double x_lo = 0.0;
  double x_hi = 0.0;
  std::size_t n_cells = 0;
  double dx = 0.0;
  Boundary bc = Boundary::outflow;
  /// Exact cell averages of a; these are the capacities.
  std::vector<double> a_cells;
  /// a~ at each of the n_cells + 1 interfaces (ghost areas follow the BC).
  std::vector<double> a_edges;

  /// Periodic grids must span a whole number of profile periods.
  static FvmGrid build(const CrossSectionProfile& profile, double x_lo, double x_hi,
                       std::size_t n_cells, Boundary bc = Boundary::outflow);

  double center(std::size_t i) const { return x_lo + (static_cast<double>(i) + 0.5) * dx; }
  std::vector<double> centers() const;
};

struct FvmState {
  std::vector<double> rho;
  std::vector<double> m;
  double t = 0.0;
};

/// One side of an interface.
struct CellState {
  double rho;
  double m;
  double a;
};

struct InterfaceAverages {
  double a;
  double rho;
  double m;
};

struct RiemannSolution {
  std::array<double, 2> z1{};
  std::array<double, 2> z2{};
  double s1 = 0.0;
  double s2 = 0.0;
  std::array<double, 2> psi{};
};

InterfaceAverages interface_averages(const CellState& left, const CellState& right);

/// (0, (P_l + P_r)/2 * (a_r - a_l)/dx)
std::array<double, 2> interface_source(const CellState& left, const CellState& right,
                                       const GasModel& gas, double dx);

/// f(V_r) - f(V_l) - dx Psi, written as (d(a m), d(a m^2/rho) + a~ dP) so that
/// a resting state gives exactly zero.
std::array<double, 2> flux_difference_minus_source(const CellState& left, const CellState& right,
                                                    const GasModel& gas);

RiemannSolution fwave_solve(const CellState& left, const CellState& right, const GasModel& gas,
                            double dx);

/// Advances one step. The step is cfl*dx / max(|s^p| / a_cell) limited to
/// dt_limit; the size actually taken is returned. Throws std::runtime_error on
/// vacuum or a non-finite state.
double step(FvmState& state, const FvmGrid& grid, const GasModel& gas, double cfl,
            double dt_limit = std::numeric_limits<double>::infinity());

/// Advances one step of exactly dt (no CFL check).
void step_fixed(FvmState& state, const FvmGrid& grid, const GasModel& gas, double dt);

struct FvmSnapshot {
  double t = 0.0;
  std::vector<double> x;
  std::vector<double> rho;
  std::vector<double> m;
  std::vector<double> q;  // a * m
};

struct FvmRunStats {
  std::size_t steps = 0;
  double min_dt = std::numeric_limits<double>::infinity();
};

/// Integrates to each snapshot time in turn, shortening the last step so every
/// time is hit exactly. Snapshot times must be nondecreasing and >= state.t.
std::vector<FvmSnapshot> run(FvmState state, const FvmGrid& grid, const GasModel& gas,
                             std::span<const double> snapshot_times, double cfl,
                             FvmRunStats* stats = nullptr);

/// Outflow grid that follows a right-going front. Whenever the cell
/// lead_periods from the right edge leaves the resting state on the right by
/// more than `tolerance`, the grid moves right by shift_periods: cells are
/// dropped on the left and resting cells appended on the right. The grid never
/// moves past x_max. Moving by whole periods leaves the capacities unchanged.
struct MovingWindow {
  std::size_t cells_per_period = 0;
  std::size_t lead_periods = 20;
  std::size_t shift_periods = 20;
  double x_max = 0.0;
  double tolerance = 1e-9;
};

/// As above on a moving grid; each snapshot carries its own cell centers.
std::vector<FvmSnapshot> run(FvmState state, FvmGrid grid, const GasModel& gas,
                             std::span<const double> snapshot_times, double cfl,
                             const MovingWindow& window, FvmRunStats* stats = nullptr);

FvmSnapshot make_snapshot(const FvmState& state, const FvmGrid& grid);

/// sum_i a_i rho_i dx and sum_i a_i m_i dx
double total_mass(const FvmState& state, const FvmGrid& grid);
double total_momentum(const FvmState& state, const FvmGrid& grid);

}  // namespace pipewave

#include "pipewave/fvm.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "pipewave/fixed_power.hpp"

namespace pipewave {

const char* to_string(Boundary bc) { return bc == Boundary::outflow ? "outflow" : "periodic"; }

Boundary boundary_from_string(const std::string& name) {
  if (name == "outflow") return Boundary::outflow;
  if (name == "periodic") return Boundary::periodic;
  throw std::invalid_argument("unknown boundary condition '" + name +
                              "' (expected outflow or periodic)");
}

FvmGrid FvmGrid::build(const CrossSectionProfile& profile, double x_lo, double x_hi,
                       std::size_t n_cells, Boundary bc) {
  if (!(x_hi > x_lo) || n_cells < 2) {
    throw std::invalid_argument("FvmGrid: need x_hi > x_lo and at least two cells");
  }
  FvmGrid g;
  g.x_lo = x_lo;
  g.x_hi = x_hi;
  g.n_cells = n_cells;
  g.dx = (x_hi - x_lo) / static_cast<double>(n_cells);
  g.bc = bc;
  if (bc == Boundary::periodic) {
    const double periods = (x_hi - x_lo) / profile.period();
    if (std::abs(periods - std::round(periods)) > 1e-9 * periods) {
      throw std::invalid_argument("FvmGrid: periodic domain must span whole profile periods");
    }
  }
  g.a_cells.resize(n_cells);
  for (std::size_t i = 0; i < n_cells; ++i) {
    const double lo = x_lo + static_cast<double>(i) * g.dx;
    const double hi = i + 1 == n_cells ? x_hi : x_lo + static_cast<double>(i + 1) * g.dx;
    g.a_cells[i] = profile.cell_average(lo, hi);
  }
  g.a_edges.resize(n_cells + 1);
  for (std::size_t j = 0; j <= n_cells; ++j) {
    double al;
    double ar;
    if (j == 0) {
      ar = g.a_cells.front();
      al = bc == Boundary::periodic ? g.a_cells.back() : ar;
    } else if (j == n_cells) {
      al = g.a_cells.back();
      ar = bc == Boundary::periodic ? g.a_cells.front() : al;
    } else {
      al = g.a_cells[j - 1];
      ar = g.a_cells[j];
    }
    g.a_edges[j] = 0.5 * (al + ar);
  }
  return g;
}

std::vector<double> FvmGrid::centers() const {
  std::vector<double> x(n_cells);
  for (std::size_t i = 0; i < n_cells; ++i) x[i] = center(i);
  return x;
}

InterfaceAverages interface_averages(const CellState& left, const CellState& right) {
  return {0.5 * (left.a + right.a), 0.5 * (left.rho + right.rho), 0.5 * (left.m + right.m)};
}

std::array<double, 2> interface_source(const CellState& left, const CellState& right,
                                       const GasModel& gas, double dx) {
  const double p_l = gas.p(left.rho);
  const double p_r = gas.p(right.rho);
  return {0.0, 0.5 * (p_l + p_r) * (right.a - left.a) / dx};
}

std::array<double, 2> flux_difference_minus_source(const CellState& left, const CellState& right,
                                                    const GasModel& gas) {
  const double a_t = 0.5 * (left.a + right.a);
  return {right.a * right.m - left.a * left.m,
          right.a * right.m * right.m / right.rho - left.a * left.m * left.m / left.rho +
              a_t * (gas.p(right.rho) - gas.p(left.rho))};
}

namespace {

constexpr double sonic_tolerance = 1e-12;

// Per-cell quantities shared by both interfaces of a cell.
struct Side {
  double rho, m, a, p, c;  // c = sqrt(P'(rho))
  double u;                // m / rho
  double amu;              // a m u, the momentum flux without pressure
};


struct Waves {
  double z1[2];
  double z2[2];
  double s1, s2;
};

inline Side make_side(double rho, double m, double a, const GasModel& gas) {
  if (!(rho > 0.0)) throw std::domain_error("fvm: non-positive density (vacuum state)");
  const auto pv = gas.pressure(rho);
  const double u = m / rho;
  return {rho, m, a, pv.p, std::sqrt(pv.dp), u, a * m * u};
}

// Hot-loop variant: rho > 0 is checked by the caller.
inline Side make_side_fast(double rho, double m, double a, double kappa, double gamma,
                           const FixedPower& power) {
  const double r_gm1 = power(rho);
  const double u = m / rho;
  return {rho, m, a, kappa * rho * r_gm1, std::sqrt(kappa * gamma * r_gm1), u, a * m * u};
}

inline Waves decompose(const Side& l, const Side& r, double kappa_gamma, const FixedPower& power) {
  const double a_t = 0.5 * (l.a + r.a);
  const double rho_t = 0.5 * (l.rho + r.rho);
  const double m_t = 0.5 * (l.m + r.m);
  const double g1 = r.a * r.m - l.a * l.m;
  const double g2 = r.amu - l.amu + a_t * (r.p - l.p);

  const double c_t = std::sqrt(kappa_gamma * power(rho_t));
  const double scale = rho_t * c_t;
  double x1, y1, x2, y2;
  const double d1 = m_t - scale;
  const double d2 = m_t + scale;
  // Near a sonic point the normalized column blows up; (a~, lambda) spans
  // the same eigenvector.
  if (std::abs(d1) < sonic_tolerance * scale) {
    x1 = a_t;
    y1 = a_t * (m_t / rho_t - c_t);
  } else {
    x1 = rho_t / d1;
    y1 = 1.0;
  }
  if (std::abs(d2) < sonic_tolerance * scale) {
    x2 = a_t;
    y2 = a_t * (m_t / rho_t + c_t);
  } else {
    x2 = rho_t / d2;
    y2 = 1.0;
  }
  const double inv_det = 1.0 / (x1 * y2 - x2 * y1);
  const double b1 = (g1 * y2 - x2 * g2) * inv_det;
  const double b2 = (x1 * g2 - y1 * g1) * inv_det;

  Waves w;
  w.z1[0] = b1 * x1;
  w.z1[1] = b1 * y1;
  w.z2[0] = b2 * x2;
  w.z2[1] = b2 * y2;
  w.s1 = std::min(l.a * (l.u - l.c), r.a * (r.u - r.c));
  w.s2 = std::max(l.a * (l.u + l.c), r.a * (r.u + r.c));
  return w;
}

struct Workspace {
  std::vector<Side> sides;                 // n + 2 ghosts per end
  std::vector<double> amdq_rho, amdq_m;    // per interface, into the left cell
  std::vector<double> apdq_rho, apdq_m;    // per interface, into the right cell
  std::optional<FixedPower> power;
};

Workspace& workspace() {
  thread_local Workspace ws;
  return ws;
}

// Fills the fluctuations at all n+1 interfaces and returns max |s| / a over
// the waves, each measured against the capacity of the cell it enters.
double compute_fluctuations(const FvmState& state, const FvmGrid& grid, const GasModel& gas,
                            Workspace& ws) {
  const std::size_t n = grid.n_cells;
  const std::size_t g = fvm_ghost_cells;
  if (state.rho.size() != n || state.m.size() != n) {
    throw std::invalid_argument("fvm: state size does not match grid");
  }
  const double kappa = gas.kappa();
  const double gamma = gas.gamma();
  const double kappa_gamma = kappa * gamma;
  if (!ws.power || ws.power->beta() != gamma - 1.0) ws.power.emplace(gamma - 1.0);
  const FixedPower& power = *ws.power;
  ws.sides.resize(n + 2 * g);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(state.rho[i] > 0.0)) throw std::domain_error("fvm: non-positive density (vacuum state)");
    ws.sides[i + g] = make_side_fast(state.rho[i], state.m[i], grid.a_cells[i], kappa, gamma, power);
  }
  for (std::size_t k = 0; k < g; ++k) {
    if (grid.bc == Boundary::periodic) {
      ws.sides[g - 1 - k] = ws.sides[g + n - 1 - k];
      ws.sides[g + n + k] = ws.sides[g + k];
    } else {
      ws.sides[g - 1 - k] = ws.sides[g];
      ws.sides[g + n + k] = ws.sides[g + n - 1];
    }
  }
  ws.amdq_rho.resize(n + 1);
  ws.amdq_m.resize(n + 1);
  ws.apdq_rho.resize(n + 1);
  ws.apdq_m.resize(n + 1);

  double speed = 0.0;
  for (std::size_t j = 0; j <= n; ++j) {
    const Side& l = ws.sides[g + j - 1];
    const Side& r = ws.sides[g + j];
    const Waves w = decompose(l, r, kappa_gamma, power);
    // s < 0 goes left, everything else right, so no wave is ever dropped.
    double am_rho = 0.0, am_m = 0.0, ap_rho = 0.0, ap_m = 0.0;
    if (w.s1 < 0.0) {
      am_rho += w.z1[0];
      am_m += w.z1[1];
      speed = std::max(speed, -w.s1 / l.a);
    } else {
      ap_rho += w.z1[0];
      ap_m += w.z1[1];
      speed = std::max(speed, w.s1 / r.a);
    }
    if (w.s2 < 0.0) {
      am_rho += w.z2[0];
      am_m += w.z2[1];
      speed = std::max(speed, -w.s2 / l.a);
    } else {
      ap_rho += w.z2[0];
      ap_m += w.z2[1];
      speed = std::max(speed, w.s2 / r.a);
    }
    ws.amdq_rho[j] = am_rho;
    ws.amdq_m[j] = am_m;
    ws.apdq_rho[j] = ap_rho;
    ws.apdq_m[j] = ap_m;
  }
  return speed;
}

void apply_fluctuations(FvmState& state, const FvmGrid& grid, const Workspace& ws, double dt) {
  const std::size_t n = grid.n_cells;
  const double r = dt / grid.dx;
  bool ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double k = r / grid.a_cells[i];
    state.rho[i] -= k * (ws.apdq_rho[i] + ws.amdq_rho[i + 1]);
    state.m[i] -= k * (ws.apdq_m[i] + ws.amdq_m[i + 1]);
    ok &= state.rho[i] > 0.0 && std::isfinite(state.rho[i]) && std::isfinite(state.m[i]);
  }
  if (!ok) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!(state.rho[i] > 0.0) || !std::isfinite(state.rho[i]) || !std::isfinite(state.m[i])) {
        std::ostringstream os;
        os << "fvm: vacuum or non-finite state in cell " << i << " (x=" << grid.center(i)
           << ") at t=" << state.t + dt << "; the solution has left the range this scheme handles";
        throw std::runtime_error(os.str());
      }
    }
  }
  state.t += dt;
}

}  // namespace

RiemannSolution fwave_solve(const CellState& left, const CellState& right, const GasModel& gas,
                            double dx) {
  const Side l = make_side(left.rho, left.m, left.a, gas);
  const Side r = make_side(right.rho, right.m, right.a, gas);
  const Waves w = decompose(l, r, gas.kappa() * gas.gamma(), FixedPower(gas.gamma() - 1.0));
  RiemannSolution out;
  out.z1 = {w.z1[0], w.z1[1]};
  out.z2 = {w.z2[0], w.z2[1]};
  out.s1 = w.s1;
  out.s2 = w.s2;
  out.psi = {0.0, 0.5 * (l.p + r.p) * (r.a - l.a) / dx};
  return out;
}

double step(FvmState& state, const FvmGrid& grid, const GasModel& gas, double cfl,
            double dt_limit) {
  if (!(cfl > 0.0 && cfl < 1.0)) throw std::invalid_argument("fvm: cfl must lie in (0, 1)");
  if (!(dt_limit > 0.0)) throw std::invalid_argument("fvm: dt_limit must be positive");
  auto& ws = workspace();
  const double speed = compute_fluctuations(state, grid, gas, ws);
  double dt = dt_limit;
  if (speed > 0.0) dt = std::min(dt, cfl * grid.dx / speed);
  if (!std::isfinite(dt)) throw std::runtime_error("fvm: no wave speed to set the time step");
  apply_fluctuations(state, grid, ws, dt);
  return dt;
}

void step_fixed(FvmState& state, const FvmGrid& grid, const GasModel& gas, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("fvm: dt must be positive");
  auto& ws = workspace();
  compute_fluctuations(state, grid, gas, ws);
  apply_fluctuations(state, grid, ws, dt);
}

FvmSnapshot make_snapshot(const FvmState& state, const FvmGrid& grid) {
  FvmSnapshot s;
  s.t = state.t;
  s.x = grid.centers();
  s.rho = state.rho;
  s.m = state.m;
  s.q.resize(grid.n_cells);
  for (std::size_t i = 0; i < grid.n_cells; ++i) s.q[i] = grid.a_cells[i] * state.m[i];
  return s;
}

std::vector<FvmSnapshot> run(FvmState state, const FvmGrid& grid, const GasModel& gas,
                             std::span<const double> snapshot_times, double cfl,
                             FvmRunStats* stats) {
  std::vector<FvmSnapshot> out;
  out.reserve(snapshot_times.size());
  double prev = state.t;
  for (double target : snapshot_times) {
    if (target < prev) throw std::invalid_argument("fvm run: snapshot times must be nondecreasing");
    prev = target;
    while (state.t < target) {
      const double remaining = target - state.t;
      const double dt = step(state, grid, gas, cfl, remaining);
      if (dt >= remaining) state.t = target;
      if (stats) {
        ++stats->steps;
        stats->min_dt = std::min(stats->min_dt, dt);
      }
    }
    out.push_back(make_snapshot(state, grid));
  }
  return out;
}

std::vector<FvmSnapshot> run(FvmState state, FvmGrid grid, const GasModel& gas,
                             std::span<const double> snapshot_times, double cfl,
                             const MovingWindow& window, FvmRunStats* stats) {
  const std::size_t p = window.cells_per_period;
  const std::size_t n = grid.n_cells;
  if (grid.bc != Boundary::outflow) throw std::invalid_argument("fvm window: needs outflow");
  if (p == 0 || window.shift_periods == 0 || (window.lead_periods + window.shift_periods) * p > n) {
    throw std::invalid_argument("fvm window: lead and shift must fit in the grid");
  }
  if (n % p != 0) throw std::invalid_argument("fvm window: grid must hold whole periods");
  for (std::size_t i = p; i < n; ++i) {
    if (std::abs(grid.a_cells[i] - grid.a_cells[i - p]) > 1e-12 * grid.a_cells[i]) {
      throw std::invalid_argument("fvm window: capacities are not periodic in cells_per_period");
    }
  }
  const double rest_rho = state.rho.back();
  const double rest_m = state.m.back();
  const std::size_t probe = n - 1 - window.lead_periods * p;
  const std::size_t shift = window.shift_periods * p;

  auto disturbed = [&] {
    return std::abs(state.rho[probe] - rest_rho) > window.tolerance ||
           std::abs(state.m[probe] - rest_m) > window.tolerance;
  };
  auto move = [&] {
    const double room = std::floor((window.x_max - grid.x_hi) / grid.dx + 1e-9);
    const std::size_t k = room >= static_cast<double>(shift) ? shift
                          : static_cast<std::size_t>(std::max(room, 0.0)) / p * p;
    if (k == 0) return false;
    state.rho.erase(state.rho.begin(), state.rho.begin() + static_cast<std::ptrdiff_t>(k));
    state.m.erase(state.m.begin(), state.m.begin() + static_cast<std::ptrdiff_t>(k));
    state.rho.resize(n, rest_rho);
    state.m.resize(n, rest_m);
    grid.x_lo += static_cast<double>(k) * grid.dx;
    grid.x_hi += static_cast<double>(k) * grid.dx;
    return true;
  };

  std::vector<FvmSnapshot> out;
  out.reserve(snapshot_times.size());
  double prev = state.t;
  bool can_move = true;
  for (double target : snapshot_times) {
    if (target < prev) throw std::invalid_argument("fvm run: snapshot times must be nondecreasing");
    prev = target;
    while (state.t < target) {
      const double remaining = target - state.t;
      const double dt = step(state, grid, gas, cfl, remaining);
      if (dt >= remaining) state.t = target;
      if (stats) {
        ++stats->steps;
        stats->min_dt = std::min(stats->min_dt, dt);
      }
      if (can_move && disturbed()) can_move = move();
    }
    out.push_back(make_snapshot(state, grid));
  }
  return out;
}

double total_mass(const FvmState& state, const FvmGrid& grid) {
  double s = 0.0;
  for (std::size_t i = 0; i < grid.n_cells; ++i) s += grid.a_cells[i] * state.rho[i];
  return s * grid.dx;
}

double total_momentum(const FvmState& state, const FvmGrid& grid) {
  double s = 0.0;
  for (std::size_t i = 0; i < grid.n_cells; ++i) s += grid.a_cells[i] * state.m[i];
  return s * grid.dx;
}

}  // namespace pipewave

// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
//
// The scenario-reproduction criterion runs both presets at full scale
// (about 10 minutes on one core). Set PIPEWAVE_ACCEPTANCE_SCALE=ci to run
// only the reduced-domain variant.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pipewave/averaging.hpp"
#include "pipewave/compare.hpp"
#include "pipewave/dispersion.hpp"
#include "pipewave/fvm.hpp"
#include "pipewave/homogenize.hpp"
#include "pipewave/scenario.hpp"
#include "pipewave/spectral.hpp"
#include "pipewave/ssprk3.hpp"

using namespace pipewave;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED[" << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rho0() { return 0.3; }

// ---------------------------------------------------------------------------

void operator_identities(Outcome& o) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<int> modes(1, 6);
  auto random_function = [&] {
    const int m = modes(rng);
    std::vector<double> c(m), s(m);
    for (int k = 0; k < m; ++k) {
      c[k] = coef(rng) / (k + 1);
      s[k] = coef(rng) / (k + 1);
    }
    const double offset = 2.0 * coef(rng);
    return PeriodicFunction::from_function([=](double y) {
      double v = offset;
      for (int k = 0; k < m; ++k) {
        v += c[k] * std::cos(2.0 * M_PI * (k + 1) * y) + s[k] * std::sin(2.0 * M_PI * (k + 1) * y);
      }
      return v;
    });
  };
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto f = random_function();
    const auto g = random_function();
    worst = std::max(worst, std::abs(mean(fluctuation(f))));
    worst = std::max(worst, std::abs(mean(bracket(f))));
    worst = std::max(worst, std::abs(mean(f * bracket(g)) + mean(bracket(f) * g)));
  }
  o.detail << "max residual " << worst << " over 50 random pairs";
  o.require(worst < 1e-10, "identities to 1e-10");
}

void equality_chains(Outcome& o) {
  const auto a = build_scenario("scenario_a");
  const auto b = build_scenario("scenario_b");
  double spread_a = 0.0, spread_b = 0.0;
  std::size_t n_a = 0, n_b = 0;
  for (const auto& c : coefficient_identity_chains(a.profile, rho0())) {
    spread_a = std::max(spread_a, c.spread());
    ++n_a;
  }
  for (const auto& c : coefficient_identity_chains(b.profile, rho0())) {
    spread_b = std::max(spread_b, c.spread());
    ++n_b;
  }
  const auto ca = bracket_coefficients(a.profile, rho0());
  const auto cb = bracket_coefficients(b.profile, rho0());
  o.detail << "scenario_a spread " << spread_a << " (" << n_a << " chains), scenario_b spread "
           << spread_b << " (" << n_b << " chains), C1 = " << ca(1) << ", " << cb(1)
           << ", C9(a) + 1/288 = " << ca(9) + 1.0 / 288.0;
  o.require(n_a >= 12 && n_b >= 12, "all chains present");
  o.require(spread_a <= 1e-12, "scenario_a chains to 1e-12");
  o.require(spread_b <= 1e-8, "scenario_b chains to 1e-8");
  o.require(std::abs(ca(1)) < 1e-14 && std::abs(cb(1)) < 1e-12, "C1 = 0");
  o.require(std::abs(ca(9) + 1.0 / 288.0) < 1e-15, "C9 = -1/288");
}

void sign_conditions(Outcome& o) {
  for (const char* name : {"scenario_a", "scenario_b"}) {
    const auto s = build_scenario(name);
    const auto c = bracket_coefficients(s.profile, rho0());
    const auto h = scenario_coefficients(s);
    o.require(c(9) < 0 && c(11) < 0 && c(2) > 0, std::string(name) + " C signs");
    o.require(h.alpha5b > 0 && h.beta11b > 0, std::string(name) + " alpha5b, beta11b > 0");
    const auto scan = stability_scan(h, h.rho0, 100.0, 20001);
    o.detail << name << ": max|Im w| xxt " << scan.max_imag_xxt << ", xxx " << scan.max_imag_xxx;
    if (scan.xxx_instability_k) o.detail << " (xxx complex from k = " << *scan.xxx_instability_k << ")";
    o.detail << "; ";
    o.require(scan.max_imag_xxt < 1e-12, std::string(name) + " xxt real");
    o.require(scan.max_imag_xxx > 1e-6, std::string(name) + " xxx complex somewhere");
  }
}

void sound_speed(Outcome& o) {
  for (const char* name : {"scenario_a", "scenario_b"}) {
    const auto h = scenario_coefficients(build_scenario(name));
    // omega is odd in k along the physical branch, so the one-sided
    // difference from k = 0 is already second-order accurate
    const double k = 1e-5;
    const double fd =
        (omega_xxt(k, h, h.rho0).omega_plus.real() - omega_xxt(0.0, h, h.rho0).omega_plus.real()) / k;
    const double c = std::sqrt(h.a(1) * (h.b(1) + h.b(3) * h.rho0));
    o.detail << name << ": dw/dk " << fd << " vs " << c << "; ";
    o.require(std::abs(std::abs(fd) - c) < 1e-8, std::string(name) + " phase speed");
  }
  const auto m = mean_area_pair(build_scenario("scenario_a").profile);
  const double factor = 1.0 / std::sqrt(m.mean_a * m.mean_inv);
  o.detail << "reduction factor " << factor;
  o.require(std::abs(factor - std::sqrt(3.0) / 2.0) < 1e-10, "sqrt(3)/2");
}

void fvm_balance(Outcome& o) {
  const auto s = build_scenario("scenario_a");
  for (Boundary bc : {Boundary::outflow, Boundary::periodic}) {
    const auto grid = FvmGrid::build(s.profile, -20.0, 20.0, 1280, bc);
    FvmState u{std::vector<double>(grid.n_cells, 0.3), std::vector<double>(grid.n_cells, 0.0), 0.0};
    double worst = 0.0;
    for (int n = 0; n < 1000; ++n) {
      const auto before = u;
      step(u, grid, s.gas, s.cfl);
      for (std::size_t i = 0; i < grid.n_cells; ++i) {
        worst = std::max({worst, std::abs(u.rho[i] - before.rho[i]), std::abs(u.m[i] - before.m[i])});
      }
    }
    o.detail << to_string(bc) << " steady drift " << worst << "; ";
    o.require(worst <= 1e-13, "steady state");
  }
  auto p = s;
  p.x_lo = -50.0;
  p.x_hi = 50.0;
  p.bc = Boundary::periodic;
  const auto grid = fvm_grid(p);
  auto u = fvm_initial_state(p, grid);
  const double m0 = total_mass(u, grid);
  for (int n = 0; n < 10000; ++n) step(u, grid, p.gas, p.cfl);
  const double rel = std::abs(total_mass(u, grid) - m0) / m0;
  o.detail << "periodic mass drift " << rel << " after 10^4 steps (t = " << u.t << ")";
  o.require(rel <= 1e-12, "mass");
}

void fvm_convergence(Outcome& o) {
  auto s = build_scenario("scenario_b");
  s.x_lo = -40.0;
  s.x_hi = 40.0;
  s.bc = Boundary::periodic;
  // The area drives period-scale oscillations (k = 2 pi) that first-order
  // diffusion damps like exp(-nu k^2 t), nu ~ c dx / 2. The run must stay
  // short enough that this factor is near 1 on the coarsest level, otherwise
  // the level differences are not yet in the asymptotic regime.
  const double t_end = 2.0;
  std::vector<std::vector<double>> rho;
  std::vector<FvmGrid> grids;
  for (std::size_t cpp : {64u, 128u, 256u}) {
    s.cells_per_period = cpp;
    grids.push_back(fvm_grid(s));
    const auto snaps = run(fvm_initial_state(s, grids.back()), grids.back(), s.gas, std::vector<double>{t_end}, s.cfl);
    rho.push_back(snaps.back().rho);
  }
  // capacity-weighted restriction of level l+1 onto level l
  auto diff = [&](std::size_t l) {
    const auto& c = rho[l];
    const auto& f = rho[l + 1];
    const auto& af = grids[l + 1].a_cells;
    double err = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double mass = af[2 * i] * f[2 * i] + af[2 * i + 1] * f[2 * i + 1];
      err += std::abs(mass / (af[2 * i] + af[2 * i + 1]) - c[i]) * grids[l].dx;
    }
    return err;
  };
  const double e0 = diff(0), e1 = diff(1);
  const double order = std::log2(e0 / e1);
  o.detail << "L1 differences " << e0 << ", " << e1 << ", order " << order;
  o.require(order >= 0.8, "order >= 0.8");
}

void spectral_checks(Outcome& o) {
  auto lin = [](double a, double x, double b, double y) { return a * x + b * y; };
  double poly = 0.0;
  for (double z : {-2.5, -1.0, -0.25, 0.5}) {
    const double y = ssprk3_step(1.0, 1.0, [z](double u) { return z * u; }, lin);
    poly = std::max(poly, std::abs(y - (1 + z + z * z / 2 + z * z * z / 6)) /
                              std::abs(1 + z + z * z / 2 + z * z * z / 6));
  }
  o.detail << "RK3 polynomial " << poly;
  o.require(poly <= 1e-14, "stability polynomial");

  const auto hb = scenario_coefficients(build_scenario("scenario_b"));
  const SpectralGrid g{-50.0, 50.0, 512};
  const SpectralSolver solver(g, hb);
  std::vector<double> h;
  for (double x : g.points()) h.push_back(std::exp(-x * x / 20.0) + 0.2 * std::sin(2.0 * M_PI * x / 100.0));
  double helm = 0.0;
  for (double c : {hb.alpha5b, hb.beta11b, 1.0}) {
    const auto u = solver.helmholtz_invert(h, c);
    const auto uxx = solver.derivative(u, 2);
    for (std::size_t j = 0; j < u.size(); ++j) helm = std::max(helm, std::abs(u[j] - c * uxx[j] - h[j]));
  }
  o.detail << ", Helmholtz " << helm;
  o.require(helm <= 1e-12, "Helmholtz round trip");

  // linear plane wave, one period
  SpectralOptions lo;
  lo.linear_only = true;
  lo.rho_lin = hb.rho0;
  const SpectralGrid pg{0.0, 40.0, 128};
  const SpectralSolver ps(pg, hb, lo);
  const int mode = 3;
  const double k = 2.0 * M_PI * mode / pg.length();
  const double w = omega_xxt(k, hb, hb.rho0).omega_plus.real();
  const double ratio = -(w / k) * (1.0 + hb.alpha5b * k * k) / hb.a(1);
  SpectralState ws;
  for (double x : pg.points()) {
    ws.rho_bar.push_back(1e-6 * std::cos(k * x));
    ws.q_bar.push_back(ratio * 1e-6 * std::cos(k * x));
  }
  const double period = 2.0 * M_PI / w;
  const auto res = ps.run(ws, std::vector<double>{period});
  // project onto cos/sin of the mode to read the phase
  double cs = 0.0, sn = 0.0;
  const auto pts = pg.points();
  for (std::size_t j = 0; j < pts.size(); ++j) {
    cs += res.snapshots.back().rho_bar[j] * std::cos(k * pts[j]);
    sn += res.snapshots.back().rho_bar[j] * std::sin(k * pts[j]);
  }
  // rho = A cos(kx - phi) with phi = w_num * T - 2 pi
  const double phi = std::atan2(sn, cs);
  const double w_num = (2.0 * M_PI + phi) / period;
  const double speed_err = std::abs(w_num - w) / w;
  o.detail << ", plane-wave speed rel err " << speed_err;
  o.require(speed_err <= 1e-6, "plane-wave phase speed");

  // temporal self-convergence
  const SpectralGrid tg{-50.0, 50.0, 512};
  const SpectralSolver ts(tg, hb);
  SpectralState init;
  for (double x : tg.points()) {
    init.rho_bar.push_back(std::exp(-(x / 5.0) * (x / 5.0)) / 12.0);
    init.q_bar.push_back(0.0);
  }
  const double dt0 = ts.default_dt();
  const double t_end = 64 * dt0;
  std::vector<std::vector<double>> sol;
  for (double dt : {dt0, dt0 / 2, dt0 / 4}) sol.push_back(ts.run(init, std::vector<double>{t_end}, dt).snapshots.back().rho_bar);
  auto norm_diff = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
    return std::sqrt(s);
  };
  const double order = std::log2(norm_diff(sol[0], sol[1]) / norm_diff(sol[1], sol[2]));
  o.detail << ", temporal order " << order;
  o.require(order >= 2.5 && order <= 3.5, "temporal order in [2.5, 3.5]");
}

// ---------------------------------------------------------------------------

struct ScenarioRun {
  ComparisonReport report;
  double fvm_seconds = 0.0;
  double total_seconds = 0.0;
  std::vector<FieldSnapshot> fvm;
};

ScenarioRun run_scenario(const Scenario& s) {
  const auto t0 = Clock::now();
  const auto grid = fvm_grid(s);
  const auto snaps = run_fvm(s);
  ScenarioRun r;
  for (const auto& snap : snaps) r.fvm.push_back(period_average(snap, grid, s.profile.period()));
  r.fvm_seconds = seconds_since(t0);

  const auto h = scenario_coefficients(s);
  const auto sg = spectral_grid(s);
  const SpectralSolver solver(sg, h, spectral_options(s));
  const auto res = solver.run(spectral_initial_state(s, sg), s.snapshot_times);
  std::vector<FieldSnapshot> model;
  for (const auto& snap : res.snapshots) model.push_back(to_physical(snap, s.rho_background, h.delta));
  r.report = compare(r.fvm, model, compare_options(s));
  r.total_seconds = seconds_since(t0);
  return r;
}

// Left/right split: one clear maximum on each side of the pulse center, each
// having travelled at least half the effective sound speed times t.
bool split_ok(const FieldSnapshot& snap, const Scenario& s, double c0, std::ostringstream& detail) {
  double left_max = 0.0, right_max = 0.0, x_left = 0.0, x_right = 0.0;
  for (std::size_t i = 0; i < snap.x.size(); ++i) {
    const double d = snap.rho[i] - s.rho_background;
    if (snap.x[i] < s.pulse.center && d > left_max) {
      left_max = d;
      x_left = snap.x[i];
    }
    if (snap.x[i] > s.pulse.center && d > right_max) {
      right_max = d;
      x_right = snap.x[i];
    }
  }
  detail << "split at t=" << snap.t << ": left peak " << x_left << ", right peak " << x_right;
  const double travel = 0.5 * c0 * snap.t;
  return left_max > 0.25 * s.pulse.amplitude && right_max > 0.25 * s.pulse.amplitude &&
         x_left < s.pulse.center - travel && x_right > s.pulse.center + travel;
}

// Small-amplitude peak tracking against the long-wave speed.
double tracked_speed(Scenario s) {
  s.pulse.amplitude *= 1e-3;
  s.snapshot_times = {20.0, 40.0};
  s.t_end = 40.0;
  s.x_lo = -60.0;
  s.x_hi = 60.0;
  const auto grid = fvm_grid(s);
  const auto snaps = run(fvm_initial_state(s, grid), grid, s.gas, s.snapshot_times, s.cfl);
  std::vector<double> pos;
  for (const auto& snap : snaps) {
    const auto avg = period_average(snap, grid, s.profile.period());
    std::size_t best = 0;
    for (std::size_t i = 0; i < avg.x.size(); ++i) {
      if (avg.x[i] > 0 && avg.rho[i] > avg.rho[best]) best = i;
    }
    pos.push_back(avg.x[best]);
  }
  return (pos[1] - pos[0]) / 20.0;
}

void scenario_reproduction(Outcome& o, bool full) {
  for (const char* name : {"scenario_a", "scenario_b"}) {
    const auto preset = build_scenario(name);
    const auto h = scenario_coefficients(preset);
    const double c0 = long_wave_speed(h, 0.0);

    const double v = tracked_speed(preset);
    o.detail << name << ": small-pulse speed " << v << " vs " << c0 << "; ";
    o.require(std::abs(v - c0) < 0.02 * c0, std::string(name) + " pulse speed");

    std::vector<std::pair<std::string, Scenario>> runs{{"ci", ci_scale(preset)}};
    if (full) runs.emplace_back("full", preset);
    for (const auto& [label, s] : runs) {
      const auto r = run_scenario(s);
      const auto& rep = r.report;
      const std::string tag = std::string(name) + "/" + label;
      o.detail << tag << " (" << r.total_seconds << " s): ";
      std::ostringstream split;
      o.require(split_ok(r.fvm[1], s, c0, split), tag + " split");
      o.detail << split.str() << "; rel_L2_rho";
      for (double e : rep.rel_l2_rho) o.detail << " " << e;
      o.detail << "; peaks_fvm";
      for (auto p : rep.peaks_fvm) o.detail << " " << p;
      o.detail << "; peaks_homog";
      for (auto p : rep.peaks_homog) o.detail << " " << p;
      o.detail << "; ";

      o.require(rep.rel_l2_rho[1] < s.early_error_threshold, tag + " early error");
      bool nondecreasing = true;
      for (std::size_t i = 2; i < rep.rel_l2_rho.size(); ++i) {
        nondecreasing = nondecreasing && rep.rel_l2_rho[i] >= rep.rel_l2_rho[i - 1];
      }
      o.require(nondecreasing, tag + " error nondecreasing");
      if (label == "ci") {
        o.require(r.total_seconds <= 60.0, tag + " runtime");
      } else {
        bool peaks_up = true;
        for (std::size_t i = 2; i < rep.peaks_fvm.size(); ++i) {
          peaks_up = peaks_up && rep.peaks_fvm[i] >= rep.peaks_fvm[i - 1];
        }
        o.require(peaks_up, tag + " peak count nondecreasing");
        o.require(rep.peaks_fvm.back() >= 3, tag + " >= 3 peaks at the final snapshot");
        o.require(r.total_seconds <= 600.0, tag + " runtime");
      }
    }
  }
  if (!full) o.detail << "full-scale runs skipped (PIPEWAVE_ACCEPTANCE_SCALE=ci)";
}

}  // namespace

int main() {
  const char* scale = std::getenv("PIPEWAVE_ACCEPTANCE_SCALE");
  const bool full = !(scale && std::string(scale) == "ci");

  struct Criterion {
    const char* name;
    double budget;  // seconds
    std::function<void(Outcome&)> check;
  };
  const std::vector<Criterion> criteria{
      {"operator identities", 5.0, operator_identities},
      {"coefficient equality chains", 5.0, equality_chains},
      {"sign conditions and dispersion stability", 5.0, sign_conditions},
      {"effective sound speed", 1.0, sound_speed},
      {"fvm well-balancing and conservation", 30.0, fvm_balance},
      {"fvm self-convergence", 120.0, fvm_convergence},
      {"spectral solver verification", 60.0, spectral_checks},
      {"scenario reproduction", full ? 1320.0 : 180.0,
       [full](Outcome& o) { scenario_reproduction(o, full); }},
  };

  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      c.check(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    const double secs = seconds_since(t0);
    if (secs > c.budget) o.require(false, "runtime budget");
    if (!o.pass) ++failures;
    std::printf("%s [%d] %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", index, c.name, secs,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}

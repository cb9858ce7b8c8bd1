// pipewave command line: coefficients, dispersion scans, solver runs and
// solver comparisons for a periodic-area pipe scenario.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "pipewave/compare.hpp"
#include "pipewave/config.hpp"
#include "pipewave/csv.hpp"
#include "pipewave/dispersion.hpp"
#include "pipewave/fvm.hpp"
#include "pipewave/homogenize.hpp"
#include "pipewave/scenario.hpp"
#include "pipewave/spectral.hpp"

namespace pw = pipewave;

namespace {

struct CommonOptions {
  std::string scenario = "scenario_a";
  std::string config;
  std::optional<double> t_end;
  std::string snapshots;
  std::optional<std::size_t> cells_per_period;
  std::optional<std::size_t> n_modes;
  std::optional<double> cfl;
  std::string out_dir = ".";
  std::string bc;
  bool ci_scale = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--scenario", o.scenario, "Preset name (scenario_a, scenario_b)");
  cmd->add_option("--config", o.config, "key=value scenario file (overrides --scenario)");
  cmd->add_option("--t-end", o.t_end, "Final time");
  cmd->add_option("--snapshots", o.snapshots, "Comma-separated snapshot times");
  cmd->add_option("--cells-per-period", o.cells_per_period, "FVM cells per area period");
  cmd->add_option("--n-modes", o.n_modes, "Spectral collocation points");
  cmd->add_option("--cfl", o.cfl, "CFL number of the solver being run (FVM for compare)");
  cmd->add_option("--out-dir", o.out_dir, "Directory for CSV output");
  cmd->add_option("--bc", o.bc, "FVM boundary condition")
      ->check(CLI::IsMember({"outflow", "periodic"}));
  cmd->add_flag("--ci-scale", o.ci_scale, "Use the reduced domain [-100,100] and t_end = 60");
}

pw::Scenario make_scenario(const CommonOptions& o, bool spectral_cfl) {
  pw::Scenario s = o.config.empty() ? pw::build_scenario(o.scenario) : pw::load_config(o.config);
  if (o.ci_scale) s = pw::ci_scale(s);
  if (o.t_end) {
    s.t_end = *o.t_end;
    if (o.snapshots.empty()) {
      std::vector<double> kept;
      for (double t : s.snapshot_times) {
        if (t < s.t_end) kept.push_back(t);
      }
      kept.push_back(s.t_end);
      s.snapshot_times = kept;
    }
  }
  if (!o.snapshots.empty()) s.snapshot_times = pw::parse_number_list(o.snapshots);
  if (o.cells_per_period) s.cells_per_period = *o.cells_per_period;
  if (o.n_modes) s.n_modes = *o.n_modes;
  if (o.cfl) (spectral_cfl ? s.cfl_spectral : s.cfl) = *o.cfl;
  if (!o.bc.empty()) s.bc = pw::boundary_from_string(o.bc);
  s.validate();
  return s;
}

std::string time_tag(double t) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

std::string out_path(const CommonOptions& o, const std::string& file) {
  std::filesystem::create_directories(o.out_dir);
  return (std::filesystem::path(o.out_dir) / file).string();
}

void print_kv(const std::string& k, double v) { std::cout << k << "=" << pw::format_double(v) << "\n"; }

int cmd_coeffs(const CommonOptions& o) {
  const auto s = make_scenario(o, false);
  const auto C = pw::bracket_coefficients(s.profile, s.rho_background);
  const auto H = pw::homog_coefficients(C, s.gas, s.rho_background, s.profile.period());
  std::cout << "# scenario=" << s.name << " profile=" << s.profile.describe() << "\n";
  print_kv("mean_a", C.moments.mean_a);
  print_kv("mean_inv_a", C.moments.mean_inv);
  print_kv("mean_inv_a2", C.moments.mean_inv2);
  print_kv("mean_inv_a3", C.moments.mean_inv3);
  pw::CsvTable table;
  table.scenario = s.name;
  table.solver = "coeffs";
  table.columns = {"index", "C", "alpha", "beta"};
  table.data.assign(4, {});
  for (int i = 1; i <= 15; ++i) {
    print_kv("C" + std::to_string(i), C(i));
    table.data[0].push_back(i);
    table.data[1].push_back(C(i));
    table.data[2].push_back(i <= 8 ? H.a(i) : NAN);
    table.data[3].push_back(i <= 11 ? H.b(i) : NAN);
  }
  for (int i = 1; i <= 8; ++i) print_kv("alpha" + std::to_string(i), H.a(i));
  for (int i = 1; i <= 11; ++i) print_kv("beta" + std::to_string(i), H.b(i));
  print_kv("alpha5b", H.alpha5b);
  print_kv("beta11b", H.beta11b);
  print_kv("phase_speed_k0_background", pw::long_wave_speed(H, s.rho_background));
  print_kv("phase_speed_k0_perturbation", pw::long_wave_speed(H, 0.0));
  if (!o.out_dir.empty()) pw::write_file(out_path(o, s.name + "_coeffs.csv"), pw::to_csv(table));
  return 0;
}

int cmd_dispersion(const CommonOptions& o, double k_max, std::size_t n_k) {
  const auto s = make_scenario(o, false);
  const auto H = pw::scenario_coefficients(s);
  const double rho_lin = s.rho_background;
  pw::CsvTable table;
  table.scenario = s.name;
  table.solver = "dispersion";
  table.extra = {{"rho_lin", pw::format_double(rho_lin)}};
  table.columns = {"k", "re_omega_plus", "im_omega_plus", "form"};
  table.data.assign(4, {});
  for (int form = 0; form < 2; ++form) {
    for (std::size_t j = 0; j < n_k; ++j) {
      const double k = k_max * static_cast<double>(j) / static_cast<double>(n_k - 1);
      const auto w = form == 0 ? pw::omega_xxx(k, H, rho_lin) : pw::omega_xxt(k, H, rho_lin);
      table.data[0].push_back(k);
      table.data[1].push_back(w.omega_plus.real());
      table.data[2].push_back(w.omega_plus.imag());
      table.data[3].push_back(form);  // 0 = xxx, 1 = xxt
    }
  }
  pw::write_file(out_path(o, s.name + "_dispersion.csv"), pw::to_csv(table));
  const auto rep = pw::stability_scan(H, rho_lin, k_max, n_k);
  std::cout << "scenario=" << s.name
            << " phase_speed_k0=" << pw::format_double(pw::long_wave_speed(H, rho_lin))
            << " phase_speed_k0_perturbation=" << pw::format_double(pw::long_wave_speed(H, 0.0))
            << " max_imag_xxx=" << pw::format_double(rep.max_imag_xxx)
            << " max_imag_xxt=" << pw::format_double(rep.max_imag_xxt) << " xxx_instability_k="
            << (rep.xxx_instability_k ? pw::format_double(*rep.xxx_instability_k) : "none")
            << "\n";
  return 0;
}

struct FvmOutput {
  pw::FvmGrid grid;
  std::vector<pw::FvmSnapshot> snapshots;
};

FvmOutput run_fvm(const pw::Scenario& s, const CommonOptions& o, bool write) {
  FvmOutput out{pw::fvm_grid(s), {}};
  pw::FvmRunStats stats;
  out.snapshots = pw::run_fvm(s, &stats);
  if (write) {
    for (const auto& snap : out.snapshots) {
      pw::write_file(out_path(o, s.name + "_fvm_t" + time_tag(snap.t) + ".csv"),
                     pw::to_csv(pw::fvm_table(snap, s.name, out.grid.n_cells, s.cfl)));
    }
  }
  std::cerr << "fvm: " << out.grid.n_cells << " cells, " << stats.steps << " steps\n";
  return out;
}

std::vector<pw::FieldSnapshot> run_homog(const pw::Scenario& s, const CommonOptions& o,
                                         bool write) {
  const auto grid = pw::spectral_grid(s);
  const pw::SpectralSolver solver(grid, pw::scenario_coefficients(s), pw::spectral_options(s));
  const auto res = solver.run(pw::spectral_initial_state(s, grid), s.snapshot_times);
  for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
  std::vector<pw::FieldSnapshot> out;
  for (const auto& snap : res.snapshots) {
    out.push_back(pw::to_physical(snap, s.rho_background, s.profile.period()));
    if (write) {
      pw::write_file(out_path(o, s.name + "_homog_t" + time_tag(snap.t) + ".csv"),
                     pw::to_csv(pw::homog_table(out.back(), s.name)));
    }
  }
  std::cerr << "homog: " << grid.n << " modes, " << res.steps << " steps\n";
  return out;
}

int cmd_compare(const CommonOptions& o) {
  const auto s = make_scenario(o, false);
  const auto fvm = run_fvm(s, o, true);
  const auto homog = run_homog(s, o, true);
  std::vector<pw::FieldSnapshot> averaged;
  for (const auto& snap : fvm.snapshots) {
    averaged.push_back(pw::period_average(snap, fvm.grid, s.profile.period()));
  }
  const auto report = pw::compare(averaged, homog, pw::compare_options(s));
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  const std::string text = pw::to_csv(pw::report_table(report, s.name));
  pw::write_file(out_path(o, s.name + "_report.csv"), text);
  std::cout << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isentropic gas in a periodic pipe: homogenized vs. variable-coefficient solvers"};
  app.require_subcommand(1);

  CommonOptions coeffs_o, disp_o, fvm_o, homog_o, cmp_o;
  double k_max = 50.0;
  std::size_t n_k = 2048;

  auto* coeffs = app.add_subcommand("coeffs", "Print C1..C15 and the alpha/beta coefficients");
  add_common(coeffs, coeffs_o);
  auto* disp = app.add_subcommand("dispersion", "Scan both dispersion relations");
  add_common(disp, disp_o);
  disp->add_option("--k-max", k_max, "Largest wavenumber")->check(CLI::PositiveNumber);
  disp->add_option("--n-k", n_k, "Number of wavenumbers")->check(CLI::Range(2, 100000000));
  auto* fvm = app.add_subcommand("run-fvm", "Run the finite volume solver");
  add_common(fvm, fvm_o);
  auto* homog = app.add_subcommand("run-homog", "Run the pseudospectral homogenized solver");
  add_common(homog, homog_o);
  auto* cmp = app.add_subcommand("compare", "Run both solvers and write the comparison report");
  add_common(cmp, cmp_o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*coeffs) return cmd_coeffs(coeffs_o);
    if (*disp) return cmd_dispersion(disp_o, k_max, n_k);
    if (*fvm) {
      run_fvm(make_scenario(fvm_o, false), fvm_o, true);
      return 0;
    }
    if (*homog) {
      run_homog(make_scenario(homog_o, true), homog_o, true);
      return 0;
    }
    if (*cmp) return cmd_compare(cmp_o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

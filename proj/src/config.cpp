#include "pipewave/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace pipewave {

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "scenario",          "name",
      "profile",           "profile_breakpoints", "profile_values",   "profile_mean",
      "profile_amplitude", "profile_samples",     "period",
      "kappa",             "gamma",               "allow_any_gamma",
      "rho_background",    "pulse_amplitude",     "pulse_width",      "pulse_center",
      "x_lo",              "x_hi",                "t_end",            "snapshots",
      "cells_per_period",  "cfl",                 "n_modes",          "cfl_spectral",
      "bc",                "dealias",             "steepness_threshold",
      "early_error_threshold", "prominence_fraction", "window_half_width", "fvm_window"};
  return keys;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("config: " + key + " expects a number, got '" + text + "'");
  }
  return v;
}

std::size_t parse_count(const std::string& key, const std::string& text) {
  std::size_t v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("config: " + key + " expects a non-negative integer, got '" +
                                text + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw std::invalid_argument("config: " + key + " expects true or false, got '" + text + "'");
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw std::invalid_argument("config: empty entry in list '" + text + "'");
    out.push_back(parse_double("list", item));
  }
  return out;
}

Scenario parse_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  const auto& keys = config_keys();
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" +
                                  key + "'");
    }
    if (!kv.emplace(key, value).second) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": repeated key '" +
                                  key + "'");
    }
  }

  auto get = [&](const std::string& k) -> std::optional<std::string> {
    const auto it = kv.find(k);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };
  auto num = [&](const std::string& k) -> std::optional<double> {
    if (auto v = get(k)) return parse_double(k, *v);
    return std::nullopt;
  };

  Scenario s;
  if (auto preset = get("scenario")) {
    s = build_scenario(*preset);
  } else {
    s.name = "custom";
    for (const char* k : {"profile", "pulse_amplitude", "pulse_width"}) {
      if (!get(k)) {
        throw std::invalid_argument(std::string("config: '") + k +
                                    "' is required when no scenario preset is given");
      }
    }
  }
  if (auto v = get("name")) s.name = *v;

  const double period = num("period").value_or(s.profile.period());
  if (auto kind = get("profile")) {
    if (*kind == "piecewise") {
      const auto values = get("profile_values");
      const auto breaks = get("profile_breakpoints");
      if (!values || !breaks) {
        throw std::invalid_argument("config: piecewise profile needs profile_values and profile_breakpoints");
      }
      s.profile = CrossSectionProfile::piecewise_constant(parse_number_list(*breaks),
                                                          parse_number_list(*values), period);
    } else if (*kind == "sinusoidal") {
      const auto mean = num("profile_mean");
      const auto amp = num("profile_amplitude");
      if (!mean || !amp) {
        throw std::invalid_argument("config: sinusoidal profile needs profile_mean and profile_amplitude");
      }
      s.profile = CrossSectionProfile::sinusoidal(*mean, *amp, period);
    } else if (*kind == "constant") {
      const auto mean = num("profile_mean");
      if (!mean) throw std::invalid_argument("config: constant profile needs profile_mean");
      s.profile = CrossSectionProfile::constant(*mean, period);
    } else if (*kind == "sampled") {
      const auto samples = get("profile_samples");
      if (!samples) throw std::invalid_argument("config: sampled profile needs profile_samples");
      s.profile = CrossSectionProfile::sampled(parse_number_list(*samples), period);
    } else {
      throw std::invalid_argument("config: unknown profile kind '" + *kind +
                                  "' (piecewise, sinusoidal, constant, sampled)");
    }
  } else if (get("period")) {
    throw std::invalid_argument("config: 'period' needs an explicit 'profile'");
  }

  {
    const double kappa = num("kappa").value_or(s.gas.kappa());
    const double gamma = num("gamma").value_or(s.gas.gamma());
    bool any = false;
    if (auto v = get("allow_any_gamma")) any = parse_bool("allow_any_gamma", *v);
    s.gas = GasModel(kappa, gamma, any);
  }
  if (auto v = num("rho_background")) s.rho_background = *v;
  if (auto v = num("pulse_amplitude")) s.pulse.amplitude = *v;
  if (auto v = num("pulse_width")) s.pulse.width = *v;
  if (auto v = num("pulse_center")) s.pulse.center = *v;
  if (auto v = num("x_lo")) s.x_lo = *v;
  if (auto v = num("x_hi")) s.x_hi = *v;
  if (auto v = num("t_end")) s.t_end = *v;
  if (auto v = get("snapshots")) {
    s.snapshot_times = parse_number_list(*v);
  } else if (get("t_end")) {
    // Keep the preset times that still fit, and always end at t_end.
    std::vector<double> kept;
    for (double t : s.snapshot_times) {
      if (t < s.t_end) kept.push_back(t);
    }
    kept.push_back(s.t_end);
    s.snapshot_times = kept;
  }
  if (auto v = get("cells_per_period")) s.cells_per_period = parse_count("cells_per_period", *v);
  if (auto v = num("cfl")) s.cfl = *v;
  if (auto v = get("n_modes")) s.n_modes = parse_count("n_modes", *v);
  if (auto v = num("cfl_spectral")) s.cfl_spectral = *v;
  if (auto v = get("bc")) s.bc = boundary_from_string(*v);
  if (auto v = get("dealias")) s.dealias = parse_bool("dealias", *v);
  if (auto v = num("steepness_threshold")) s.steepness_threshold = *v;
  if (auto v = num("early_error_threshold")) s.early_error_threshold = *v;
  if (auto v = num("prominence_fraction")) s.prominence_fraction = *v;
  if (auto v = num("window_half_width")) s.window_half_width = *v;
  if (auto v = num("fvm_window")) s.fvm_window = *v;

  s.validate();
  return s;
}

Scenario load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  return parse_config(in);
}

}  // namespace pipewave

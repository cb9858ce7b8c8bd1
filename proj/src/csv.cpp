#include "pipewave/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pipewave {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const CsvTable& table) {
  std::string out = "# t=" + format_double(table.t) + " scenario=" + table.scenario +
                    " solver=" + table.solver;
  for (const auto& [k, v] : table.extra) out += " " + k + "=" + v;
  out += "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out += (c ? "," : "") + table.columns[c];
  }
  out += "\n";
  const std::size_t rows = table.data.empty() ? 0 : table.data.front().size();
  for (const auto& col : table.data) {
    if (col.size() != rows) throw std::invalid_argument("to_csv: ragged columns");
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < table.data.size(); ++c) {
      if (c) out += ',';
      out += format_double(table.data[c][r]);
    }
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << content;
  f.close();
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

CsvTable fvm_table(const FvmSnapshot& s, const std::string& scenario, std::size_t n_cells,
                   double cfl) {
  CsvTable t;
  t.t = s.t;
  t.scenario = scenario;
  t.solver = "fvm";
  t.extra = {{"n_cells", std::to_string(n_cells)}, {"cfl", format_double(cfl)}};
  t.columns = {"x", "rho", "m", "q"};
  t.data = {s.x, s.rho, s.m, s.q};
  return t;
}

CsvTable homog_table(const FieldSnapshot& s, const std::string& scenario) {
  CsvTable t;
  t.t = s.t;
  t.scenario = scenario;
  t.solver = "homog";
  t.columns = {"x", "rho", "q"};
  t.data = {s.x, s.rho, s.q};
  return t;
}

CsvTable report_table(const ComparisonReport& r, const std::string& scenario) {
  CsvTable t;
  t.t = r.times.empty() ? 0.0 : r.times.back();
  t.scenario = scenario;
  t.solver = "compare";
  t.columns = {"time", "rel_L2_rho", "rel_L2_q", "peaks_fvm", "peaks_homog", "leading_speed"};
  std::vector<double> pf(r.peaks_fvm.begin(), r.peaks_fvm.end());
  std::vector<double> ph(r.peaks_homog.begin(), r.peaks_homog.end());
  t.data = {r.times, r.rel_l2_rho, r.rel_l2_q, pf, ph, r.leading_speed};
  return t;
}

CsvTable parse_csv(const std::string& content) {
  std::istringstream in(content);
  std::string line;
  CsvTable t;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw std::runtime_error("csv: missing '# t=... scenario=... solver=...' header");
  }
  {
    std::istringstream hs(line.substr(2));
    std::string field;
    bool have_t = false;
    while (hs >> field) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) throw std::runtime_error("csv: bad header field '" + field + "'");
      const std::string k = field.substr(0, eq);
      const std::string v = field.substr(eq + 1);
      if (k == "t") {
        t.t = std::stod(v);
        have_t = true;
      } else if (k == "scenario") {
        t.scenario = v;
      } else if (k == "solver") {
        t.solver = v;
      } else {
        t.extra.emplace_back(k, v);
      }
    }
    if (!have_t || t.scenario.empty() || t.solver.empty()) {
      throw std::runtime_error("csv: header needs t, scenario and solver");
    }
  }
  if (!std::getline(in, line)) throw std::runtime_error("csv: missing column row");
  {
    std::istringstream cs(line);
    std::string c;
    while (std::getline(cs, c, ',')) t.columns.push_back(c);
  }
  t.data.assign(t.columns.size(), {});
  std::size_t row = 2;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::istringstream rs(line);
    std::string cell;
    std::size_t c = 0;
    while (std::getline(rs, cell, ',')) {
      if (c >= t.columns.size()) {
        throw std::runtime_error("csv: too many fields on line " + std::to_string(row));
      }
      try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        t.data[c].push_back(v);
      } catch (const std::exception&) {
        throw std::runtime_error("csv: bad number '" + cell + "' on line " + std::to_string(row));
      }
      ++c;
    }
    if (c != t.columns.size()) {
      throw std::runtime_error("csv: too few fields on line " + std::to_string(row));
    }
  }
  return t;
}

}  // namespace pipewave

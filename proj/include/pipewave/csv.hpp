#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pipewave/compare.hpp"
#include "pipewave/fvm.hpp"
#include "pipewave/scenario.hpp"

namespace pipewave {

/// 17 significant digits, round-trip exact.
std::string format_double(double v);

struct CsvTable {
  double t = 0.0;
  std::string scenario;
  std::string solver;
  std::vector<std::pair<std::string, std::string>> extra;  // appended to the header line
  std::vector<std::string> columns;
  std::vector<std::vector<double>> data;  // one vector per column
};

std::string to_csv(const CsvTable& table);
/// Throws std::runtime_error if the file cannot be written.
void write_file(const std::string& path, const std::string& content);

CsvTable fvm_table(const FvmSnapshot& s, const std::string& scenario, std::size_t n_cells,
                   double cfl);
CsvTable homog_table(const FieldSnapshot& s, const std::string& scenario);
CsvTable report_table(const ComparisonReport& r, const std::string& scenario);

/// Parses a file written by to_csv back into a table.
CsvTable parse_csv(const std::string& content);

}  // namespace pipewave

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pipewave/fvm.hpp"
#include "pipewave/scenario.hpp"
#include "pipewave/spectral.hpp"

namespace pipewave {

/// Centered moving average over exactly one period. Cells only partly inside
/// the window get fractional weights; ends are extended per `bc`.
std::vector<double> period_average(std::span<const double> field, double dx, double period,
                                   Boundary bc);

/// Period averages of rho and q = a m on the snapshot grid.
FieldSnapshot period_average(const FvmSnapshot& snap, const FvmGrid& grid, double period);

struct CompareOptions {
  double rho0 = 0.3;
  double pulse_center = 0.0;
  double pulse_amplitude = 0.05;
  double pulse_width = 8.0;
  double prominence_fraction = 0.1;
  double window_half_width = 50.0;
  double steepness_threshold = 0.05;
};

// Peaks are counted inside the comparison window and right of
// pulse_center - pulse_width/2, so the unsplit pulse at t = 0 is not lost to a
// half-cell offset and the left-going half is never counted.
struct ComparisonReport {
  std::vector<double> times;
  std::vector<double> rel_l2_rho;
  std::vector<double> rel_l2_q;
  std::vector<std::size_t> peaks_fvm;
  std::vector<std::size_t> peaks_homog;
  std::vector<double> leading_speed;  // NaN for the first snapshot
  std::vector<double> peak_position;  // x of the tallest right-going maximum
  std::vector<double> max_slope;      // max |d rho/dx| of the reference
  std::vector<bool> steep;            // max_slope above the threshold
  std::vector<std::string> warnings;
};

/// Local maxima with topographic prominence >= min_prominence among samples
/// with x_min <= x <= x_max. Prominence looks at the whole series.
std::size_t count_peaks(std::span<const double> x, std::span<const double> values, double x_min,
                        double x_max, double min_prominence);

/// `reference` is the period-averaged FVM series. `model` is either on the
/// same grid or on a uniform periodic grid, in which case it is evaluated at
/// the reference points by its Fourier series. Snapshot times must match.
ComparisonReport compare(const std::vector<FieldSnapshot>& reference,
                         const std::vector<FieldSnapshot>& model, const CompareOptions& options);

CompareOptions compare_options(const Scenario& s);

}  // namespace pipewave

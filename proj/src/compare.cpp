#include "pipewave/compare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pipewave {

std::vector<double> period_average(std::span<const double> field, double dx, double period,
                                   Boundary bc) {
  const double width = period / dx;  // window length in cells
  if (width < 8.0 - 1e-9) {
    throw std::invalid_argument("period_average: need at least 8 cells per period");
  }
  // Cell j - i covers [j - i - 1/2, j - i + 1/2] in cell units; the window is
  // [-width/2, width/2].
  const double half = 0.5 * width;
  const auto reach = static_cast<long>(std::ceil(half - 0.5));
  std::vector<double> w(static_cast<std::size_t>(2 * reach + 1));
  for (long d = -reach; d <= reach; ++d) {
    const double lo = std::max(static_cast<double>(d) - 0.5, -half);
    const double hi = std::min(static_cast<double>(d) + 0.5, half);
    w[static_cast<std::size_t>(d + reach)] = std::max(0.0, hi - lo) / width;
  }
  const auto n = static_cast<long>(field.size());
  std::vector<double> out(field.size());
  for (long i = 0; i < n; ++i) {
    double s = 0.0;
    for (long d = -reach; d <= reach; ++d) {
      long j = i + d;
      if (bc == Boundary::periodic) {
        j = ((j % n) + n) % n;
      } else {
        j = std::clamp(j, 0L, n - 1);
      }
      s += w[static_cast<std::size_t>(d + reach)] * field[static_cast<std::size_t>(j)];
    }
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

FieldSnapshot period_average(const FvmSnapshot& snap, const FvmGrid& grid, double period) {
  FieldSnapshot f;
  f.t = snap.t;
  f.x = snap.x;
  f.rho = period_average(snap.rho, grid.dx, period, grid.bc);
  f.q = period_average(snap.q, grid.dx, period, grid.bc);
  return f;
}

CompareOptions compare_options(const Scenario& s) {
  CompareOptions o;
  o.rho0 = s.rho_background;
  o.pulse_center = s.pulse.center;
  o.pulse_amplitude = s.pulse.amplitude;
  o.pulse_width = s.pulse.width;
  o.prominence_fraction = s.prominence_fraction;
  o.window_half_width = s.window_half_width;
  o.steepness_threshold = s.steepness_threshold;
  return o;
}

std::size_t count_peaks(std::span<const double> x, std::span<const double> values, double x_min,
                        double x_max, double min_prominence) {
  const std::size_t n = values.size();
  std::size_t first = 0;
  while (first < n && x[first] < x_min) ++first;
  std::size_t end = first;
  while (end < n && x[end] <= x_max) ++end;
  std::size_t count = 0;
  // A maximum belongs to the region when its plateau ends inside it.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double v = values[i];
    if (!(v > values[i - 1])) continue;
    // Walk across a plateau.
    std::size_t e = i;
    while (e + 1 < n && values[e + 1] == v) ++e;
    if (e < first || e >= end || e + 1 >= n || !(values[e + 1] < v)) {
      i = e;
      continue;
    }
    double left_min = v;
    for (std::size_t j = i; j-- > 0;) {
      if (values[j] > v) break;
      left_min = std::min(left_min, values[j]);
    }
    double right_min = v;
    for (std::size_t j = e + 1; j < n; ++j) {
      if (values[j] > v) break;
      right_min = std::min(right_min, values[j]);
    }
    if (v - std::max(left_min, right_min) >= min_prominence) ++count;
    i = e;
  }
  return count;
}

namespace {

bool same_grid(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

double sq(double v) { return v * v; }

}  // namespace

ComparisonReport compare(const std::vector<FieldSnapshot>& reference,
                         const std::vector<FieldSnapshot>& model, const CompareOptions& options) {
  if (reference.size() != model.size()) {
    throw std::invalid_argument("compare: series have different snapshot counts");
  }
  ComparisonReport r;
  const double prominence = options.prominence_fraction * options.pulse_amplitude;
  const double right_of_center = options.pulse_center - 0.5 * options.pulse_width;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  for (std::size_t k = 0; k < reference.size(); ++k) {
    const FieldSnapshot& ref = reference[k];
    const FieldSnapshot& mod = model[k];
    if (std::abs(ref.t - mod.t) > 1e-9 * std::max(1.0, std::abs(ref.t))) {
      throw std::invalid_argument("compare: snapshot times do not match");
    }
    const std::size_t n = ref.x.size();
    if (n < 3 || ref.rho.size() != n || ref.q.size() != n) {
      throw std::invalid_argument("compare: malformed reference snapshot");
    }

    // Tallest right-going maximum of the reference density.
    std::size_t i_peak = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (ref.x[i] < options.pulse_center) continue;
      if (i_peak == n || ref.rho[i] > ref.rho[i_peak]) i_peak = i;
    }
    if (i_peak == n) throw std::invalid_argument("compare: no reference points right of the pulse");
    const double x_peak = ref.x[i_peak];

    std::vector<double> xs;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(ref.x[i] - x_peak) <= options.window_half_width) {
        xs.push_back(ref.x[i]);
        idx.push_back(i);
      }
    }
    std::vector<double> m_rho, m_q;
    if (same_grid(ref.x, mod.x)) {
      for (std::size_t i : idx) {
        m_rho.push_back(mod.rho[i]);
        m_q.push_back(mod.q[i]);
      }
    } else {
      const std::size_t nm = mod.x.size();
      if (nm < 2) throw std::invalid_argument("compare: malformed model snapshot");
      const double h = mod.x[1] - mod.x[0];
      const double length = h * static_cast<double>(nm);
      m_rho = spectral_interpolate(mod.rho, mod.x[0], length, xs);
      m_q = spectral_interpolate(mod.q, mod.x[0], length, xs);
    }

    double e_rho = 0.0, n_rho = 0.0, e_q = 0.0, n_q = 0.0;
    for (std::size_t p = 0; p < idx.size(); ++p) {
      const std::size_t i = idx[p];
      e_rho += sq(ref.rho[i] - m_rho[p]);
      n_rho += sq(ref.rho[i] - options.rho0);
      e_q += sq(ref.q[i] - m_q[p]);
      n_q += sq(ref.q[i]);
    }
    r.times.push_back(ref.t);
    r.rel_l2_rho.push_back(n_rho > 0.0 ? std::sqrt(e_rho / n_rho) : std::sqrt(e_rho));
    r.rel_l2_q.push_back(n_q > 0.0 ? std::sqrt(e_q / n_q) : std::sqrt(e_q));

    const double peak_x_min = std::max(right_of_center, x_peak - options.window_half_width);
    const double peak_x_max = x_peak + options.window_half_width;
    r.peaks_fvm.push_back(count_peaks(ref.x, ref.rho, peak_x_min, peak_x_max, prominence));
    r.peaks_homog.push_back(count_peaks(mod.x, mod.rho, peak_x_min, peak_x_max, prominence));
    r.peak_position.push_back(x_peak);
    if (k == 0) {
      r.leading_speed.push_back(nan);
    } else {
      const double dt = ref.t - reference[k - 1].t;
      r.leading_speed.push_back(dt > 0.0 ? (x_peak - r.peak_position[k - 1]) / dt : nan);
    }

    double slope = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      slope = std::max(slope, std::abs(ref.rho[i + 1] - ref.rho[i]) / (ref.x[i + 1] - ref.x[i]));
    }
    r.max_slope.push_back(slope);
    const bool steep = slope > options.steepness_threshold;
    r.steep.push_back(steep);
    if (steep) {
      r.warnings.push_back("t=" + std::to_string(ref.t) + ": max |rho_x| = " +
                           std::to_string(slope) +
                           " exceeds the steepness threshold; wave breaking likely, "
                           "the homogenized model may not apply");
    }
  }
  return r;
}

}  // namespace pipewave

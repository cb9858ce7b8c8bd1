#include "pipewave/medium.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace pipewave {

GasModel::GasModel(double kappa, double gamma, bool allow_any_gamma)
    : kappa_(kappa), gamma_(gamma) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("GasModel: kappa must be positive");
  }
  if (!std::isfinite(gamma)) {
    throw std::invalid_argument("GasModel: gamma must be finite");
  }
  if (!allow_any_gamma && !(gamma > 1.0 && gamma < 5.0 / 3.0)) {
    throw std::invalid_argument("GasModel: gamma must lie in (1, 5/3)");
  }
}

PressureValues GasModel::pressure(double rho) const {
  if (!(rho > 0.0)) {
    throw std::domain_error("pressure: non-positive density (vacuum state)");
  }
  const double r_gm1 = std::pow(rho, gamma_ - 1.0);
  return {kappa_ * rho * r_gm1, kappa_ * gamma_ * r_gm1,
          kappa_ * gamma_ * (gamma_ - 1.0) * r_gm1 / rho};
}

namespace {

// x = n * period + s with s in [0, period).
std::pair<double, double> split_period(double x, double period) {
  const double n = std::floor(x / period);
  double s = x - n * period;
  if (s >= period) s -= period;
  if (s < 0.0) s = 0.0;
  return {n, s};
}

}  // namespace

CrossSectionProfile CrossSectionProfile::piecewise_constant(std::vector<double> breakpoints,
                                                            std::vector<double> values,
                                                            double period) {
  if (!(period > 0.0)) throw std::invalid_argument("profile: period must be positive");
  if (breakpoints.empty() || breakpoints.size() != values.size()) {
    throw std::invalid_argument("profile: need one value per breakpoint");
  }
  if (breakpoints.front() != 0.0) {
    throw std::invalid_argument("profile: first breakpoint must be 0");
  }
  for (std::size_t j = 1; j < breakpoints.size(); ++j) {
    if (!(breakpoints[j] > breakpoints[j - 1])) {
      throw std::invalid_argument("profile: breakpoints must be strictly increasing");
    }
  }
  if (!(breakpoints.back() < period)) {
    throw std::invalid_argument("profile: breakpoints must lie in [0, period)");
  }
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("profile: area values must be positive");
    }
  }
  CrossSectionProfile p;
  p.kind_ = Kind::piecewise_constant;
  p.period_ = period;
  p.breakpoints_ = std::move(breakpoints);
  p.values_ = std::move(values);
  double total = 0.0;
  for (std::size_t j = 0; j < p.values_.size(); ++j) {
    const double hi = j + 1 < p.breakpoints_.size() ? p.breakpoints_[j + 1] : period;
    total += p.values_[j] * (hi - p.breakpoints_[j]);
  }
  p.mean_ = total / period;
  return p;
}

CrossSectionProfile CrossSectionProfile::constant(double value, double period) {
  return piecewise_constant({0.0}, {value}, period);
}

CrossSectionProfile CrossSectionProfile::sinusoidal(double mean, double amplitude, double period) {
  if (!(period > 0.0)) throw std::invalid_argument("profile: period must be positive");
  if (!(mean > 0.0) || !(std::abs(amplitude) < mean)) {
    throw std::invalid_argument("profile: sinusoid needs |amplitude| < mean");
  }
  CrossSectionProfile p;
  p.kind_ = Kind::sinusoidal;
  p.period_ = period;
  p.mean_ = mean;
  p.amplitude_ = amplitude;
  return p;
}

CrossSectionProfile CrossSectionProfile::sampled(std::vector<double> samples, double period) {
  if (!(period > 0.0)) throw std::invalid_argument("profile: period must be positive");
  if (samples.size() < 2) throw std::invalid_argument("profile: need at least two samples");
  for (double v : samples) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("profile: sampled area must be positive");
    }
  }
  CrossSectionProfile p;
  p.kind_ = Kind::sampled;
  p.period_ = period;
  p.values_ = std::move(samples);
  double sum = 0.0;
  for (double v : p.values_) sum += v;
  p.mean_ = sum / static_cast<double>(p.values_.size());
  return p;
}

bool CrossSectionProfile::is_constant() const {
  switch (kind_) {
    case Kind::sinusoidal:
      return amplitude_ == 0.0;
    case Kind::piecewise_constant:
    case Kind::sampled:
      return std::all_of(values_.begin(), values_.end(),
                         [&](double v) { return v == values_.front(); });
  }
  return false;
}

double CrossSectionProfile::operator()(double x) const {
  const auto [n, s] = split_period(x, period_);
  (void)n;
  switch (kind_) {
    case Kind::piecewise_constant: {
      const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), s);
      return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
    }
    case Kind::sinusoidal:
      return mean_ + amplitude_ * std::sin(2.0 * std::numbers::pi * s / period_);
    case Kind::sampled: {
      const std::size_t m = values_.size();
      const double u = s / period_ * static_cast<double>(m);
      const auto j = std::min(static_cast<std::size_t>(u), m - 1);
      const double w = u - static_cast<double>(j);
      return (1.0 - w) * values_[j] + w * values_[(j + 1) % m];
    }
  }
  return 0.0;
}

double CrossSectionProfile::derivative(double x) const {
  if (kind_ == Kind::piecewise_constant && is_constant()) return 0.0;
  if (kind_ != Kind::sinusoidal) {
    throw std::logic_error("profile derivative is only defined for smooth profiles");
  }
  const double w = 2.0 * std::numbers::pi / period_;
  return amplitude_ * w * std::cos(w * x);
}

// Integral of a over [0, s] for s in [0, period].
double CrossSectionProfile::integral_from_period_start(double s) const {
  switch (kind_) {
    case Kind::piecewise_constant: {
      double total = 0.0;
      for (std::size_t j = 0; j < values_.size(); ++j) {
        const double lo = breakpoints_[j];
        if (s <= lo) break;
        const double hi = j + 1 < breakpoints_.size() ? breakpoints_[j + 1] : period_;
        total += values_[j] * (std::min(s, hi) - lo);
      }
      return total;
    }
    case Kind::sinusoidal: {
      const double w = 2.0 * std::numbers::pi / period_;
      // 1 - cos(ws) = 2 sin^2(ws/2)
      const double h = std::sin(0.5 * w * s);
      return mean_ * s + amplitude_ * 2.0 * h * h / w;
    }
    case Kind::sampled: {
      const std::size_t m = values_.size();
      const double h = period_ / static_cast<double>(m);
      double total = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        const double lo = static_cast<double>(j) * h;
        if (s <= lo) break;
        const double len = std::min(s - lo, h);
        const double v0 = values_[j];
        const double v1 = values_[(j + 1) % m];
        const double end_value = v0 + (v1 - v0) * len / h;
        total += 0.5 * (v0 + end_value) * len;
      }
      return total;
    }
  }
  return 0.0;
}

double CrossSectionProfile::cell_average(double x_lo, double x_hi) const {
  if (!(x_hi > x_lo)) {
    throw std::invalid_argument("cell_average: degenerate interval");
  }
  const auto [n_lo, s_lo] = split_period(x_lo, period_);
  const double rel_hi = x_hi - n_lo * period_;
  const auto [n_hi, s_hi] = split_period(rel_hi, period_);

  if (kind_ == Kind::piecewise_constant && n_hi == 0.0) {
    // Interval inside one period copy: return the piece value exactly when it
    // does not straddle a breakpoint.
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), s_lo);
    const auto j = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
    const double piece_hi = j + 1 < breakpoints_.size() ? breakpoints_[j + 1] : period_;
    if (s_hi <= piece_hi) return values_[j];
  }
  if (kind_ == Kind::sinusoidal) {
    const double w = 2.0 * std::numbers::pi / period_;
    const double len = x_hi - x_lo;
    // cos(w lo) - cos(w hi) = 2 sin(w (lo+hi)/2) sin(w (hi-lo)/2)
    const double diff = 2.0 * std::sin(0.5 * w * (s_lo + rel_hi)) * std::sin(0.5 * w * len);
    return mean_ + amplitude_ * diff / (w * len);
  }
  const double full = mean_ * period_;
  const double integral =
      n_hi * full + integral_from_period_start(s_hi) - integral_from_period_start(s_lo);
  return integral / (x_hi - x_lo);
}

std::string CrossSectionProfile::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::piecewise_constant:
      os << "piecewise(";
      for (std::size_t j = 0; j < values_.size(); ++j) {
        os << (j ? ";" : "") << breakpoints_[j] << ":" << values_[j];
      }
      os << ")";
      break;
    case Kind::sinusoidal:
      os << "sinusoidal(" << mean_ << "," << amplitude_ << ")";
      break;
    case Kind::sampled:
      os << "sampled(" << values_.size() << ")";
      break;
  }
  os << " period=" << period_;
  return os.str();
}

}  // namespace pipewave

#pragma once

#include <string>
#include <vector>

namespace pipewave {

/// Pressure and its first two density derivatives at one state.
struct PressureValues {
  double p;
  double dp;
  double d2p;
};

/// Polytropic pressure law P(rho) = kappa * rho^gamma.
///
/// gamma is restricted to (1, 5/3) unless the caller opts out; kappa must be
/// positive. Instances are immutable.
class GasModel {
 public:
  explicit GasModel(double kappa = 1.0, double gamma = 1.4, bool allow_any_gamma = false);

  double kappa() const { return kappa_; }
  double gamma() const { return gamma_; }

  /// Throws std::domain_error for rho <= 0 (vacuum).
  PressureValues pressure(double rho) const;
  double p(double rho) const { return pressure(rho).p; }
  double dp(double rho) const { return pressure(rho).dp; }
  double d2p(double rho) const { return pressure(rho).d2p; }

 private:
  double kappa_;
  double gamma_;
};

/// Strictly positive periodic cross-sectional area a(x) with period delta.
class CrossSectionProfile {
 public:
  enum class Kind { piecewise_constant, sinusoidal, sampled };

  /// breakpoints[0] must be 0, strictly increasing and below the period;
  /// piece j covers [breakpoints[j], breakpoints[j+1]) (left-closed).
  static CrossSectionProfile piecewise_constant(std::vector<double> breakpoints,
                                                std::vector<double> values, double period);
  static CrossSectionProfile constant(double value, double period = 1.0);
  /// a(x) = mean + amplitude * sin(2 pi x / period), |amplitude| < mean.
  static CrossSectionProfile sinusoidal(double mean, double amplitude, double period);
  /// Uniform samples over one period, sample j at x = j * period / n,
  /// interpolated piecewise-linearly.
  static CrossSectionProfile sampled(std::vector<double> samples, double period);

  Kind kind() const { return kind_; }
  double period() const { return period_; }
  bool is_smooth() const { return kind_ == Kind::sinusoidal; }
  bool is_constant() const;

  double operator()(double x) const;
  /// da/dx; only available for smooth analytic kinds.
  double derivative(double x) const;
  /// Exact mean of a over [x_lo, x_hi] (piecewise-linear trapezoid for sampled).
  double cell_average(double x_lo, double x_hi) const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  double mean_value() const { return mean_; }
  double amplitude() const { return amplitude_; }
  const std::vector<double>& samples() const { return values_; }

  std::string describe() const;

 private:
  CrossSectionProfile() = default;

  double integral_from_period_start(double s) const;

  Kind kind_ = Kind::piecewise_constant;
  double period_ = 1.0;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
  double mean_ = 0.0;
  double amplitude_ = 0.0;
};

}  // namespace pipewave

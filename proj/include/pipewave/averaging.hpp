#pragma once

// Period averaging operators on functions of the fast variable y.
//
//   mean(b)        <b>    = (1/period) * integral of b over one period
//   fluctuation(b) {b}    = b - <b>
//   bracket(b)     [[b]]  = zero-mean antiderivative of {b}
//
// A PeriodicFunction always carries N uniform samples. Piecewise-polynomial
// functions (anything built from a piecewise-constant area) additionally carry
// an exact representation, and every operator works on that representation so
// jumps never enter a quadrature rule.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace pipewave {

/// Piecewise polynomial on the unit period [0, 1).
///
/// Piece j covers [breaks[j], breaks[j+1]) (the last piece ends at 1) and is
/// stored in the local monomial basis (s - breaks[j])^k.
class PiecewisePolynomial {
 public:
  PiecewisePolynomial(std::vector<double> breaks, std::vector<std::vector<double>> coeffs);

  static PiecewisePolynomial piecewise_constant(std::vector<double> breaks,
                                                std::vector<double> values);
  static PiecewisePolynomial constant(double c);

  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<std::vector<double>>& coeffs() const { return coeffs_; }
  std::size_t pieces() const { return breaks_.size(); }
  std::size_t degree() const;
  bool is_piecewise_constant() const { return degree() == 0; }

  /// Left-closed evaluation; s is wrapped into [0, 1).
  double operator()(double s) const;
  double integral() const;
  /// F(s) = integral of p over [0, s]; continuous across breaks.
  PiecewisePolynomial antiderivative() const;
  /// Same function re-expanded on a superset of the current breaks.
  PiecewisePolynomial refined(const std::vector<double>& breaks) const;

  PiecewisePolynomial operator+(const PiecewisePolynomial& rhs) const;
  PiecewisePolynomial operator*(const PiecewisePolynomial& rhs) const;
  PiecewisePolynomial operator*(double c) const;
  PiecewisePolynomial operator+(double c) const;

 private:
  double piece_end(std::size_t j) const { return j + 1 < breaks_.size() ? breaks_[j + 1] : 1.0; }

  std::vector<double> breaks_;
  std::vector<std::vector<double>> coeffs_;
};

/// Function of y with period `period`, sampled at y_j = j * period / N.
class PeriodicFunction {
 public:
  static constexpr std::size_t default_samples = 1024;

  explicit PeriodicFunction(std::vector<double> samples, double period = 1.0);
  PeriodicFunction(PiecewisePolynomial exact, std::size_t n, double period = 1.0);

  static PeriodicFunction from_function(const std::function<double(double)>& f,
                                        std::size_t n = default_samples, double period = 1.0);
  static PeriodicFunction constant(double c, std::size_t n = default_samples,
                                   double period = 1.0);

  std::size_t size() const { return samples_.size(); }
  double period() const { return period_; }
  std::span<const double> samples() const { return samples_; }
  double operator[](std::size_t j) const { return samples_[j]; }
  bool has_exact() const { return exact_.has_value(); }
  const std::optional<PiecewisePolynomial>& exact() const { return exact_; }

  /// Value at an arbitrary y: exact when available, otherwise the
  /// trigonometric interpolant of the samples.
  double evaluate(double y) const;

 private:
  std::vector<double> samples_;
  double period_;
  std::optional<PiecewisePolynomial> exact_;
};

double mean(const PeriodicFunction& f);
PeriodicFunction fluctuation(const PeriodicFunction& f);
PeriodicFunction bracket(const PeriodicFunction& f);
/// d/dy by spectral differentiation; rejects functions that carry an exact
/// piecewise representation with jumps.
PeriodicFunction derivative(const PeriodicFunction& f);

enum class PointwiseOp { add, subtract, multiply, divide, power };

/// Combines two functions sample by sample, keeping the exact representation
/// whenever the result is still piecewise-polynomial. For `power` the
/// exponent is read from g, which must be constant.
PeriodicFunction pointwise(const PeriodicFunction& f, const PeriodicFunction& g, PointwiseOp op);
PeriodicFunction power(const PeriodicFunction& f, double exponent);

PeriodicFunction operator+(const PeriodicFunction& f, const PeriodicFunction& g);
PeriodicFunction operator-(const PeriodicFunction& f, const PeriodicFunction& g);
PeriodicFunction operator*(const PeriodicFunction& f, const PeriodicFunction& g);
PeriodicFunction operator/(const PeriodicFunction& f, const PeriodicFunction& g);
PeriodicFunction operator*(double c, const PeriodicFunction& f);
PeriodicFunction operator+(const PeriodicFunction& f, double c);
PeriodicFunction operator-(const PeriodicFunction& f);

}  // namespace pipewave

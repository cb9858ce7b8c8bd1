#include "pipewave/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>

#include "pipewave/fft.hpp"

namespace pipewave {

namespace {

const RealFft& fft_for(std::size_t n) {
  thread_local std::map<std::size_t, RealFft> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, RealFft(n)).first;
  return it->second;
}

double wrap_unit(double s) {
  s -= std::floor(s);
  if (s >= 1.0) s = 0.0;
  return s;
}

double horner(const std::vector<double>& c, double t) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
  return v;
}

// Coefficients of p(t + h) given those of p(t).
std::vector<double> taylor_shift(const std::vector<double>& c, double h) {
  std::vector<double> out(c);
  const std::size_t n = out.size();
  // Repeated synthetic division (Horner shift), O(n^2).
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j > i; --j) out[j - 1] += h * out[j];
  }
  return out;
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<double> merge_breaks(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void check_sample_count(std::size_t n) {
  if (n < 16 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("PeriodicFunction: sample count must be a power of two >= 16");
  }
}

void check_compatible(const PeriodicFunction& f, const PeriodicFunction& g) {
  if (f.size() != g.size() || f.period() != g.period()) {
    throw std::invalid_argument("PeriodicFunction: operands have different grids");
  }
}

std::vector<double> sample_exact(const PiecewisePolynomial& p, std::size_t n) {
  std::vector<double> s(n);
  for (std::size_t j = 0; j < n; ++j) s[j] = p(static_cast<double>(j) / static_cast<double>(n));
  return s;
}

bool is_integer(double x) { return std::isfinite(x) && x == std::round(x); }

}  // namespace

// ---------------------------------------------------------------------------
// PiecewisePolynomial

PiecewisePolynomial::PiecewisePolynomial(std::vector<double> breaks,
                                         std::vector<std::vector<double>> coeffs)
    : breaks_(std::move(breaks)), coeffs_(std::move(coeffs)) {
  if (breaks_.empty() || breaks_.size() != coeffs_.size()) {
    throw std::invalid_argument("PiecewisePolynomial: one coefficient list per break");
  }
  if (breaks_.front() != 0.0 || !(breaks_.back() < 1.0)) {
    throw std::invalid_argument("PiecewisePolynomial: breaks must start at 0 and stay below 1");
  }
  for (std::size_t j = 1; j < breaks_.size(); ++j) {
    if (!(breaks_[j] > breaks_[j - 1])) {
      throw std::invalid_argument("PiecewisePolynomial: breaks must be strictly increasing");
    }
  }
  for (auto& c : coeffs_) {
    if (c.empty()) c.push_back(0.0);
  }
}

PiecewisePolynomial PiecewisePolynomial::piecewise_constant(std::vector<double> breaks,
                                                            std::vector<double> values) {
  std::vector<std::vector<double>> coeffs;
  coeffs.reserve(values.size());
  for (double v : values) coeffs.push_back({v});
  return {std::move(breaks), std::move(coeffs)};
}

PiecewisePolynomial PiecewisePolynomial::constant(double c) { return {{0.0}, {{c}}}; }

std::size_t PiecewisePolynomial::degree() const {
  std::size_t d = 0;
  for (const auto& c : coeffs_) d = std::max(d, c.size() - 1);
  return d;
}

double PiecewisePolynomial::operator()(double s) const {
  s = wrap_unit(s);
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), s);
  const auto j = static_cast<std::size_t>(it - breaks_.begin()) - 1;
  return horner(coeffs_[j], s - breaks_[j]);
}

double PiecewisePolynomial::integral() const {
  double total = 0.0;
  for (std::size_t j = 0; j < breaks_.size(); ++j) {
    const double h = piece_end(j) - breaks_[j];
    double hp = h;
    for (std::size_t k = 0; k < coeffs_[j].size(); ++k) {
      total += coeffs_[j][k] * hp / static_cast<double>(k + 1);
      hp *= h;
    }
  }
  return total;
}

PiecewisePolynomial PiecewisePolynomial::antiderivative() const {
  std::vector<std::vector<double>> out;
  out.reserve(coeffs_.size());
  double offset = 0.0;
  for (std::size_t j = 0; j < breaks_.size(); ++j) {
    std::vector<double> c(coeffs_[j].size() + 1);
    c[0] = offset;
    for (std::size_t k = 0; k < coeffs_[j].size(); ++k) {
      c[k + 1] = coeffs_[j][k] / static_cast<double>(k + 1);
    }
    offset = horner(c, piece_end(j) - breaks_[j]);
    out.push_back(std::move(c));
  }
  return {breaks_, std::move(out)};
}

PiecewisePolynomial PiecewisePolynomial::refined(const std::vector<double>& breaks) const {
  std::vector<std::vector<double>> out;
  out.reserve(breaks.size());
  std::size_t j = 0;
  for (double b : breaks) {
    while (j + 1 < breaks_.size() && breaks_[j + 1] <= b) ++j;
    out.push_back(taylor_shift(coeffs_[j], b - breaks_[j]));
  }
  return {breaks, std::move(out)};
}

PiecewisePolynomial PiecewisePolynomial::operator+(const PiecewisePolynomial& rhs) const {
  const auto breaks = merge_breaks(breaks_, rhs.breaks_);
  auto a = refined(breaks);
  const auto b = rhs.refined(breaks);
  std::vector<std::vector<double>> out;
  for (std::size_t j = 0; j < breaks.size(); ++j) {
    auto c = a.coeffs_[j];
    if (c.size() < b.coeffs_[j].size()) c.resize(b.coeffs_[j].size(), 0.0);
    for (std::size_t k = 0; k < b.coeffs_[j].size(); ++k) c[k] += b.coeffs_[j][k];
    out.push_back(std::move(c));
  }
  return {breaks, std::move(out)};
}

PiecewisePolynomial PiecewisePolynomial::operator*(const PiecewisePolynomial& rhs) const {
  const auto breaks = merge_breaks(breaks_, rhs.breaks_);
  const auto a = refined(breaks);
  const auto b = rhs.refined(breaks);
  std::vector<std::vector<double>> out;
  for (std::size_t j = 0; j < breaks.size(); ++j) out.push_back(poly_mul(a.coeffs_[j], b.coeffs_[j]));
  return {breaks, std::move(out)};
}

PiecewisePolynomial PiecewisePolynomial::operator*(double c) const {
  auto out = coeffs_;
  for (auto& piece : out) {
    for (auto& v : piece) v *= c;
  }
  return {breaks_, std::move(out)};
}

PiecewisePolynomial PiecewisePolynomial::operator+(double c) const {
  auto out = coeffs_;
  for (auto& piece : out) piece[0] += c;
  return {breaks_, std::move(out)};
}

// ---------------------------------------------------------------------------
// PeriodicFunction

PeriodicFunction::PeriodicFunction(std::vector<double> samples, double period)
    : samples_(std::move(samples)), period_(period) {
  check_sample_count(samples_.size());
  if (!(period > 0.0)) throw std::invalid_argument("PeriodicFunction: period must be positive");
}

PeriodicFunction::PeriodicFunction(PiecewisePolynomial exact, std::size_t n, double period)
    : samples_(sample_exact(exact, n)), period_(period), exact_(std::move(exact)) {
  check_sample_count(n);
  if (!(period > 0.0)) throw std::invalid_argument("PeriodicFunction: period must be positive");
}

PeriodicFunction PeriodicFunction::from_function(const std::function<double(double)>& f,
                                                 std::size_t n, double period) {
  check_sample_count(n);
  std::vector<double> s(n);
  for (std::size_t j = 0; j < n; ++j) {
    s[j] = f(period * static_cast<double>(j) / static_cast<double>(n));
  }
  return PeriodicFunction(std::move(s), period);
}

PeriodicFunction PeriodicFunction::constant(double c, std::size_t n, double period) {
  return {PiecewisePolynomial::constant(c), n, period};
}

double PeriodicFunction::evaluate(double y) const {
  if (exact_) return (*exact_)(y / period_);
  const auto& fft = fft_for(size());
  const auto spec = fft.forward(samples_);
  const std::size_t n = size();
  const double theta = 2.0 * std::numbers::pi * y / period_;
  double v = spec[0].real();
  for (std::size_t k = 1; k < n / 2; ++k) {
    v += 2.0 * std::real(spec[k] * std::polar(1.0, theta * static_cast<double>(k)));
  }
  v += spec[n / 2].real() * std::cos(theta * static_cast<double>(n / 2));
  return v / static_cast<double>(n);
}

// ---------------------------------------------------------------------------
// Operators

double mean(const PeriodicFunction& f) {
  if (f.exact()) return f.exact()->integral();
  double sum = 0.0;
  for (double v : f.samples()) sum += v;
  return sum / static_cast<double>(f.size());
}

PeriodicFunction fluctuation(const PeriodicFunction& f) { return f + (-mean(f)); }

PeriodicFunction bracket(const PeriodicFunction& f) {
  if (f.exact()) {
    const auto& p = *f.exact();
    const auto anti = (p + (-p.integral())).antiderivative();
    // d/dy = (1/period) d/ds, so the y-antiderivative carries a factor period.
    auto zero_mean = (anti + (-anti.integral())) * f.period();
    return {std::move(zero_mean), f.size(), f.period()};
  }
  const std::size_t n = f.size();
  const auto& fft = fft_for(n);
  auto spec = fft.forward(f.samples());
  spec[0] = 0.0;
  spec[n / 2] = 0.0;
  for (std::size_t k = 1; k < n / 2; ++k) {
    const double wavenumber = 2.0 * std::numbers::pi * static_cast<double>(k) / f.period();
    spec[k] /= std::complex<double>(0.0, wavenumber);
  }
  return PeriodicFunction(fft.inverse(spec), f.period());
}

PeriodicFunction derivative(const PeriodicFunction& f) {
  if (f.exact() && !f.exact()->is_piecewise_constant()) {
    throw std::logic_error("derivative: piecewise representation may carry jumps");
  }
  if (f.exact() && f.exact()->pieces() > 1) {
    throw std::logic_error("derivative: piecewise-constant function has jumps");
  }
  const std::size_t n = f.size();
  const auto& fft = fft_for(n);
  auto spec = fft.forward(f.samples());
  spec[n / 2] = 0.0;
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double wavenumber = 2.0 * std::numbers::pi * static_cast<double>(k) / f.period();
    spec[k] *= std::complex<double>(0.0, wavenumber);
  }
  return PeriodicFunction(fft.inverse(spec), f.period());
}

PeriodicFunction power(const PeriodicFunction& f, double exponent) {
  if (f.exact()) {
    const auto& p = *f.exact();
    if (p.is_piecewise_constant() && std::isfinite(exponent)) {
      std::vector<double> values;
      for (const auto& c : p.coeffs()) {
        if (c[0] == 0.0 && exponent < 0.0) {
          throw std::domain_error("power: negative exponent of a vanishing function");
        }
        if (c[0] < 0.0 && !is_integer(exponent)) {
          throw std::domain_error("power: fractional exponent of a negative function");
        }
        values.push_back(std::pow(c[0], exponent));
      }
      return {PiecewisePolynomial::piecewise_constant(p.breaks(), std::move(values)), f.size(),
              f.period()};
    }
    if (is_integer(exponent) && exponent >= 0.0) {
      auto out = PiecewisePolynomial::constant(1.0);
      for (int k = 0; k < static_cast<int>(exponent); ++k) out = out * p;
      return {std::move(out), f.size(), f.period()};
    }
  }
  std::vector<double> s(f.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double v = f[j];
    if (v == 0.0 && exponent < 0.0) {
      throw std::domain_error("power: negative exponent of a vanishing function");
    }
    if (v < 0.0 && !is_integer(exponent)) {
      throw std::domain_error("power: fractional exponent of a negative function");
    }
    s[j] = std::pow(v, exponent);
  }
  return PeriodicFunction(std::move(s), f.period());
}

PeriodicFunction pointwise(const PeriodicFunction& f, const PeriodicFunction& g, PointwiseOp op) {
  check_compatible(f, g);
  if (op == PointwiseOp::power) {
    const auto& s = g.samples();
    if (!std::all_of(s.begin(), s.end(), [&](double v) { return v == s.front(); })) {
      throw std::invalid_argument("pointwise power: exponent must be constant");
    }
    return power(f, s.front());
  }
  if (op == PointwiseOp::divide) {
    const auto& s = g.samples();
    double scale = 0.0;
    for (double v : s) scale = std::max(scale, std::abs(v));
    for (double v : s) {
      if (!(std::abs(v) > 1e-13 * scale) || scale == 0.0) {
        throw std::domain_error("pointwise divide: divisor vanishes");
      }
    }
    if (g.exact() && g.exact()->is_piecewise_constant()) {
      return pointwise(f, power(g, -1.0), PointwiseOp::multiply);
    }
  }
  if (f.exact() && g.exact() && op != PointwiseOp::divide) {
    const auto& a = *f.exact();
    const auto& b = *g.exact();
    switch (op) {
      case PointwiseOp::add:
        return {a + b, f.size(), f.period()};
      case PointwiseOp::subtract:
        return {a + b * -1.0, f.size(), f.period()};
      case PointwiseOp::multiply:
        return {a * b, f.size(), f.period()};
      default:
        break;
    }
  }
  std::vector<double> s(f.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    switch (op) {
      case PointwiseOp::add:
        s[j] = f[j] + g[j];
        break;
      case PointwiseOp::subtract:
        s[j] = f[j] - g[j];
        break;
      case PointwiseOp::multiply:
        s[j] = f[j] * g[j];
        break;
      case PointwiseOp::divide:
        s[j] = f[j] / g[j];
        break;
      case PointwiseOp::power:
        break;
    }
  }
  return PeriodicFunction(std::move(s), f.period());
}

PeriodicFunction operator+(const PeriodicFunction& f, const PeriodicFunction& g) {
  return pointwise(f, g, PointwiseOp::add);
}
PeriodicFunction operator-(const PeriodicFunction& f, const PeriodicFunction& g) {
  return pointwise(f, g, PointwiseOp::subtract);
}
PeriodicFunction operator*(const PeriodicFunction& f, const PeriodicFunction& g) {
  return pointwise(f, g, PointwiseOp::multiply);
}
PeriodicFunction operator/(const PeriodicFunction& f, const PeriodicFunction& g) {
  return pointwise(f, g, PointwiseOp::divide);
}

PeriodicFunction operator*(double c, const PeriodicFunction& f) {
  if (f.exact()) return {*f.exact() * c, f.size(), f.period()};
  std::vector<double> s(f.samples().begin(), f.samples().end());
  for (auto& v : s) v *= c;
  return PeriodicFunction(std::move(s), f.period());
}

PeriodicFunction operator+(const PeriodicFunction& f, double c) {
  if (f.exact()) return {*f.exact() + c, f.size(), f.period()};
  std::vector<double> s(f.samples().begin(), f.samples().end());
  for (auto& v : s) v += c;
  return PeriodicFunction(std::move(s), f.period());
}

PeriodicFunction operator-(const PeriodicFunction& f) { return -1.0 * f; }

}  // namespace pipewave

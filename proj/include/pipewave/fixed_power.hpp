#pragma once

#include <bit>
#include <cmath>
#include <cstdint>

namespace pipewave {

/// x^beta for a fixed beta, evaluated as (m_k 2^e)^beta (1 + eps)^beta where
/// x = m 2^e and m_k is the center of the mantissa bin holding m. |eps| < 2e-3,
/// so six binomial terms are exact to round-off. Zero, negative, non-finite and
/// extreme inputs go to std::pow.
class FixedPower {
 public:
  explicit FixedPower(double beta) : beta_(beta) {
    for (int k = 0; k < bins; ++k) {
      const double mk = 0.5 + (k + 0.5) / (2.0 * bins);
      inv_m_[k] = 1.0 / mk;
      m_pow_[k] = std::pow(mk, beta);
    }
    for (int e = 0; e < 2 * exp_range + 1; ++e) {
      two_pow_[e] = std::pow(std::ldexp(1.0, e - exp_range), beta);
    }
    coef_[0] = 1.0;
    for (int j = 1; j <= terms; ++j) coef_[j] = coef_[j - 1] * (beta - (j - 1)) / j;
  }

  double beta() const { return beta_; }

  double operator()(double x) const {
    const auto bits = std::bit_cast<std::uint64_t>(x);
    const int e = static_cast<int>((bits >> 52) & 0x7ff) - 1022;
    if (e < -exp_range || e > exp_range || !(x > 0.0)) return std::pow(x, beta_);
    const int k = static_cast<int>((bits >> (52 - bin_bits)) & (bins - 1));
    const double m = std::bit_cast<double>((bits & mantissa_mask) | half_exponent);
    const double eps = m * inv_m_[k] - 1.0;
    double s = coef_[terms];
    for (int j = terms - 1; j >= 0; --j) s = s * eps + coef_[j];
    return m_pow_[k] * two_pow_[e + exp_range] * s;
  }

 private:
  static constexpr int bin_bits = 8;
  static constexpr int bins = 1 << bin_bits;
  static constexpr int exp_range = 60;
  static constexpr int terms = 6;
  static constexpr std::uint64_t mantissa_mask = (std::uint64_t{1} << 52) - 1;
  static constexpr std::uint64_t half_exponent = std::uint64_t{1022} << 52;

  double beta_;
  double inv_m_[bins];
  double m_pow_[bins];
  double two_pow_[2 * exp_range + 1];
  double coef_[terms + 1];
};

}  // namespace pipewave

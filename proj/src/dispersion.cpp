#include "pipewave/dispersion.hpp"

#include <cmath>
#include <stdexcept>

namespace pipewave {

const char* to_string(DispersionForm form) {
  return form == DispersionForm::xxx ? "xxx" : "xxt";
}

namespace {

DispersionSample make_pair(double k, std::complex<double> omega, DispersionForm form) {
  return {k, omega, -omega, form};
}

}  // namespace

DispersionSample omega_xxx(double k, const HomogCoefficients& h, double rho_lin) {
  using namespace std::complex_literals;
  const double k2 = k * k;
  const std::complex<double> left = h.a(1) + 1i * k * h.a(2) - k2 * h.a(5);
  const std::complex<double> right = h.b(1) + h.b(3) * rho_lin +
                                     1i * k * (h.b(4) + h.b(10) * rho_lin) - k2 * h.b(11);
  return make_pair(k, std::abs(k) * std::sqrt(left * right), DispersionForm::xxx);
}

DispersionSample omega_xxt(double k, const HomogCoefficients& h, double rho_lin) {
  const double k2 = k * k;
  const double den_rho = 1.0 + h.alpha5b * k2;
  if (den_rho == 0.0) throw std::domain_error("omega_xxt: 1 + alpha5b k^2 vanishes");
  const double den_q = 1.0 + h.beta11b * k2;
  const double ratio = h.a(1) * (h.b(1) + h.b(3) * rho_lin) / (den_rho * den_q);
  const std::complex<double> root = std::sqrt(std::complex<double>(ratio, 0.0));
  return make_pair(k, std::abs(k) * root, DispersionForm::xxt);
}

double long_wave_speed(const HomogCoefficients& h, double rho_lin) {
  const double s = h.a(1) * (h.b(1) + h.b(3) * rho_lin);
  if (!(s >= 0.0)) throw std::domain_error("long_wave_speed: imaginary sound speed");
  return std::sqrt(s);
}

StabilityReport stability_scan(const HomogCoefficients& h, double rho_lin, double k_max,
                               std::size_t n_samples) {
  if (!(k_max > 0.0) || n_samples < 2) {
    throw std::invalid_argument("stability_scan: need k_max > 0 and at least two samples");
  }
  StabilityReport report;
  report.k_max = k_max;
  report.n_samples = n_samples;
  auto imag_xxx = [&](double k) { return std::abs(omega_xxx(k, h, rho_lin).omega_plus.imag()); };

  double k_prev = 0.0;
  for (std::size_t j = 0; j < n_samples; ++j) {
    const double k = k_max * static_cast<double>(j) / static_cast<double>(n_samples - 1);
    const double im_xxx = imag_xxx(k);
    const double im_xxt = std::abs(omega_xxt(k, h, rho_lin).omega_plus.imag());
    report.max_imag_xxx = std::max(report.max_imag_xxx, im_xxx);
    report.max_imag_xxt = std::max(report.max_imag_xxt, im_xxt);
    if (!report.xxx_instability_k && im_xxx > instability_threshold) {
      double lo = k_prev;
      double hi = k;
      for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (imag_xxx(mid) > instability_threshold ? hi : lo) = mid;
      }
      report.xxx_instability_k = hi;
    }
    k_prev = k;
  }
  return report;
}

}  // namespace pipewave

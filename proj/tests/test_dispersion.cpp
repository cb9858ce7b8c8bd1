#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pipewave/dispersion.hpp"

using namespace pipewave;
using doctest::Approx;

namespace {

constexpr double rho0 = 0.3;

HomogCoefficients coeffs_a() {
  return homogenize(CrossSectionProfile::piecewise_constant({0.0, 0.5}, {0.25, 0.75}, 1.0),
                    GasModel(), rho0);
}
HomogCoefficients coeffs_b() {
  return homogenize(CrossSectionProfile::sinusoidal(0.6, 0.4, 1.0), GasModel(), rho0);
}

}  // namespace

TEST_CASE("k = 0 gives zero frequency") {
  const auto H = coeffs_a();
  CHECK(omega_xxx(0.0, H, rho0).omega_plus == std::complex<double>(0.0, 0.0));
  CHECK(omega_xxt(0.0, H, rho0).omega_plus == std::complex<double>(0.0, 0.0));
}

TEST_CASE("pairs and symmetry") {
  const auto H = coeffs_b();
  for (double k : {0.3, 1.0, 7.0, 40.0}) {
    for (auto s : {omega_xxx(k, H, rho0), omega_xxt(k, H, rho0)}) {
      CHECK(s.omega_minus == -s.omega_plus);
      CHECK(s.k == k);
    }
    CHECK(std::abs(omega_xxx(k, H, rho0).omega_plus) ==
          Approx(std::abs(omega_xxx(-k, H, rho0).omega_plus)).epsilon(1e-14));
    // odd in k: the branches swap under k -> -k
    const auto p = omega_xxt(k, H, rho0);
    const auto m = omega_xxt(-k, H, rho0);
    CHECK(m.omega_minus == -p.omega_plus);
    CHECK(m.omega_plus == -p.omega_minus);
  }
}

TEST_CASE("long-wave speed, both linearization backgrounds") {
  const auto H = coeffs_a();
  CHECK(long_wave_speed(H, rho0) == Approx(0.95297809541148191).epsilon(1e-14));
  CHECK(long_wave_speed(H, 0.0) == Approx(0.80541349200009216).epsilon(1e-14));
  // finite-difference slope of omega at small k
  const double k = 1e-4;
  CHECK(omega_xxx(k, H, rho0).omega_plus.real() / k ==
        Approx(long_wave_speed(H, rho0)).epsilon(1e-8));
  CHECK(omega_xxt(k, H, rho0).omega_plus.real() / k ==
        Approx(long_wave_speed(H, rho0)).epsilon(1e-8));
}

TEST_CASE("geometric reduction of the sound speed") {
  const auto H = coeffs_a();
  const double uniform = std::sqrt(GasModel().dp(rho0));
  CHECK(long_wave_speed(H, 0.0) / uniform == Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
}

TEST_CASE("xxt relation is real and its phase speed decays") {
  for (const auto& H : {coeffs_a(), coeffs_b()}) {
    double prev = 1e300;
    for (int j = 0; j <= 1000; ++j) {
      const double k = 0.1 * j;
      const auto w = omega_xxt(k, H, rho0).omega_plus;
      CHECK(w.imag() == 0.0);
      if (k > 1.0) {
        CHECK(w.real() / k < prev);
      }
      if (k > 0.0) prev = w.real() / k;
    }
    // |omega| -> c0 / sqrt(alpha5b beta11b) / k for large k
    const double c0 = long_wave_speed(H, rho0);
    for (double k : {10.0, 100.0, 1000.0}) {
      const double w = omega_xxt(k, H, rho0).omega_plus.real();
      const double exact = k * c0 / std::sqrt((1 + H.alpha5b * k * k) * (1 + H.beta11b * k * k));
      CHECK(w == Approx(exact).epsilon(1e-14));
    }
    const double far = omega_xxt(1000.0, H, rho0).omega_plus.real() * 1000.0;
    CHECK(far == Approx(c0 / std::sqrt(H.alpha5b * H.beta11b)).epsilon(1e-4));
  }
}

TEST_CASE("xxx relation goes complex for scenario_a") {
  const auto H = coeffs_a();
  const auto rep = stability_scan(H, rho0, 50.0, 2048);
  CHECK(rep.max_imag_xxt < 1e-12);
  CHECK(rep.max_imag_xxx > 1e-6);
  REQUIRE(rep.xxx_instability_k.has_value());
  // alpha1 - k^2 alpha5 changes sign at k^2 = alpha1/alpha5 = 96
  CHECK(*rep.xxx_instability_k == Approx(std::sqrt(96.0)).epsilon(1e-9));
  CHECK(std::abs(omega_xxx(9.0, H, rho0).omega_plus.imag()) < 1e-12);
  CHECK(std::abs(omega_xxx(10.5, H, rho0).omega_plus.imag()) > 1e-6);
}

TEST_CASE("stability scan of scenario_b") {
  const auto rep = stability_scan(coeffs_b(), rho0, 50.0, 2048);
  CHECK(rep.max_imag_xxt < 1e-12);
  CHECK(rep.max_imag_xxx > 1e-6);
  CHECK(rep.xxx_instability_k.has_value());
}

TEST_CASE("constant area is dispersionless and stable") {
  const auto H = homogenize(CrossSectionProfile::constant(1.0), GasModel(), rho0);
  const auto rep = stability_scan(H, rho0, 100.0, 1000);
  CHECK(rep.max_imag_xxx == 0.0);
  CHECK(rep.max_imag_xxt == 0.0);
  CHECK_FALSE(rep.xxx_instability_k.has_value());
  CHECK(omega_xxt(37.0, H, rho0).omega_plus.real() / 37.0 ==
        Approx(long_wave_speed(H, rho0)).epsilon(1e-14));
}

TEST_CASE("scan arguments are validated") {
  CHECK_THROWS(stability_scan(coeffs_a(), rho0, 0.0, 10));
  CHECK_THROWS(stability_scan(coeffs_a(), rho0, 1.0, 1));
}

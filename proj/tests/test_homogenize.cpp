#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pipewave/homogenize.hpp"

using namespace pipewave;
using doctest::Approx;

namespace {

constexpr double rho0 = 0.3;

CrossSectionProfile profile_a() {
  return CrossSectionProfile::piecewise_constant({0.0, 0.5}, {0.25, 0.75}, 1.0);
}
CrossSectionProfile profile_b() { return CrossSectionProfile::sinusoidal(0.6, 0.4, 1.0); }

// Scenario_b reference values from tests/oracles/coefficients.py (40-digit
// arithmetic on the a_y forms).
constexpr double b_ref[15] = {0.0,
                              0.0086538622171666065024,
                              9.9380798999990653174,
                              0.0,
                              -53.315265291653814781,
                              -59.990965979160240724,
                              0.0,
                              0.0,
                              -0.0038701248371003159288,
                              24.845199749997663293,
                              -0.020068311199117849268,
                              273.29719724997429623,
                              2.9814239699997195952,
                              7.453559924999298988,
                              0.0};

void check_close(double got, double want, double rel, double abs_floor) {
  CHECK(std::abs(got - want) <= std::max(rel * std::abs(want), abs_floor));
}

}  // namespace

TEST_CASE("area moments") {
  const auto m = mean_area_pair(profile_a());
  CHECK(m.mean_a == 0.5);
  CHECK(m.mean_inv == Approx(8.0 / 3.0).epsilon(1e-15));
  CHECK(m.mean_inv2 == Approx(80.0 / 9.0).epsilon(1e-15));
  CHECK(m.mean_inv3 == Approx(896.0 / 27.0).epsilon(1e-15));

  const auto s = mean_area_pair(profile_b());
  CHECK(s.mean_a == 0.6);
  CHECK(s.mean_inv == Approx(std::sqrt(5.0)).epsilon(1e-15));
  // against brute-force sampling of the smooth profile
  const auto a = unit_cell_area(profile_b(), 1024);
  CHECK(mean(power(a, -2.0)) == Approx(s.mean_inv2).epsilon(1e-13));
  CHECK(mean(power(a, -3.0)) == Approx(s.mean_inv3).epsilon(1e-13));
}

TEST_CASE("scenario_a coefficient table by hand") {
  const auto C = bracket_coefficients(profile_a(), rho0);
  const double r2 = rho0 * rho0;
  CHECK(std::abs(C(1)) < 1e-16);
  CHECK(C(2) == Approx(1.0 / 144.0).epsilon(1e-14));
  CHECK(C(3) == Approx(8.0 / (9.0 * r2)).epsilon(1e-14));
  CHECK(std::abs(C(4)) < 1e-14);
  CHECK(C(5) == Approx(-128.0 / (27.0 * r2)).epsilon(1e-14));
  CHECK(C(6) == Approx(-512.0 / (81.0 * r2)).epsilon(1e-14));
  CHECK(std::abs(C(7)) < 1e-14);
  CHECK(std::abs(C(8)) < 1e-14);
  CHECK(C(9) == Approx(-1.0 / 288.0).epsilon(1e-14));
  CHECK(C(10) == Approx(8.0 / (3.0 * r2)).epsilon(1e-15));
  CHECK(C(11) == Approx(-1.0 / 54.0).epsilon(1e-14));
  CHECK(C(12) == Approx(896.0 / (27.0 * r2)).epsilon(1e-15));
  CHECK(C(13) == Approx(8.0 / (9.0 * rho0)).epsilon(1e-14));
  CHECK(C(14) == Approx(8.0 / (3.0 * rho0)).epsilon(1e-15));
  CHECK(std::abs(C(15)) < 1e-14);
}

TEST_CASE("scenario_b coefficient table against the high-precision oracle") {
  const auto C = bracket_coefficients(profile_b(), rho0);
  for (int i = 1; i <= 15; ++i) {
    CAPTURE(i);
    check_close(C(i), b_ref[i - 1], 1e-12, 1e-14);
  }
}

TEST_CASE("alpha and beta for scenario_a") {
  const GasModel gas;
  const auto H = homogenize(profile_a(), gas, rho0);
  CHECK(H.delta == 1.0);
  CHECK(H.a(1) == -2.0);
  CHECK(H.a(5) == Approx(-1.0 / 48.0).epsilon(1e-13));
  CHECK(H.alpha5b == Approx(1.0 / 96.0).epsilon(1e-13));
  CHECK(H.beta11b == Approx(1.0 / 96.0).epsilon(1e-13));
  CHECK(H.b(1) == Approx(-0.32434544654789126).epsilon(1e-15));
  CHECK(H.b(3) == Approx(-0.43246059539718834).epsilon(1e-14));
  CHECK(H.b(11) == Approx(-0.86492119079437669 / 256.0).epsilon(1e-13));
  // C1 = 0 kills every term it multiplies
  CHECK(std::abs(H.a(2)) < 1e-15);
  CHECK(std::abs(H.b(4)) < 1e-15);
  CHECK(std::abs(H.b(10)) < 1e-15);
  // the mixed-derivative forms are alpha5/alpha1 and beta11/beta1
  CHECK(H.alpha5b == Approx(H.a(5) / H.a(1)).epsilon(1e-13));
  CHECK(H.beta11b == Approx(H.b(11) / H.b(1)).epsilon(1e-13));
}

TEST_CASE("alpha and beta for scenario_b") {
  const auto H = homogenize(profile_b(), GasModel(), rho0);
  CHECK(H.alpha5b == Approx(0.011257909293593085716).epsilon(1e-12));
  CHECK(H.beta11b == Approx(0.013139645128206476304).epsilon(1e-12));
  CHECK(H.b(1) == Approx(-0.38680451555925831951).epsilon(1e-14));
  CHECK(H.b(3) == Approx(-0.51573935407901109268).epsilon(1e-14));
}

TEST_CASE("delta scaling") {
  const GasModel gas;
  const auto C = bracket_coefficients(profile_a(), rho0);
  const auto h1 = homog_coefficients(C, gas, rho0, 1.0);
  const auto h2 = homog_coefficients(C, gas, rho0, 0.5);
  CHECK(h2.a(1) == h1.a(1));
  CHECK(h2.a(3) == Approx(0.5 * h1.a(3)));
  CHECK(h2.b(2) == Approx(0.5 * h1.b(2)));
  CHECK(h2.a(4) == Approx(0.25 * h1.a(4)));
  CHECK(h2.alpha5b == Approx(0.25 * h1.alpha5b));
  CHECK_THROWS_AS(homog_coefficients(C, gas, rho0, 0.0), std::invalid_argument);
}

TEST_CASE("the C table does not depend on the profile period") {
  const auto wide = CrossSectionProfile::piecewise_constant({0.0, 1.5}, {0.25, 0.75}, 3.0);
  const auto C1 = bracket_coefficients(profile_a(), rho0);
  const auto C3 = bracket_coefficients(wide, rho0);
  for (int i = 1; i <= 15; ++i) {
    CAPTURE(i);
    check_close(C3(i), C1(i), 1e-13, 1e-15);
  }
}

TEST_CASE("constant area has no dispersive or nonlinear corrections") {
  const auto H = homogenize(CrossSectionProfile::constant(1.0), GasModel(), rho0);
  CHECK(H.a(1) == -1.0);
  CHECK(H.b(1) == Approx(-0.86492119079437669).epsilon(1e-15));
  for (int i : {2, 3, 4, 5, 6, 7, 8}) CHECK(std::abs(H.a(i)) < 1e-13);
  for (int i : {4, 6, 7, 9, 10, 11}) CHECK(std::abs(H.b(i)) < 1e-13);
  CHECK(std::abs(H.alpha5b) < 1e-15);
  CHECK(std::abs(H.beta11b) < 1e-15);
}

TEST_CASE("identity chains agree") {
  for (const auto& profile : {profile_a(), profile_b()}) {
    const double tol = profile.is_smooth() ? 1e-8 : 1e-12;
    const auto chains = coefficient_identity_chains(profile, rho0);
    CHECK(chains.size() == 12);
    for (const auto& chain : chains) {
      CAPTURE(chain.name);
      CHECK(chain.forms.size() >= 2);
      const double scale = std::max(1.0, std::abs(chain.forms.front().value));
      CHECK(chain.spread() <= tol * scale);
    }
  }
}

TEST_CASE("smooth chains include the a_y forms") {
  const auto smooth = coefficient_identity_chains(profile_b(), rho0);
  const auto piecewise = coefficient_identity_chains(profile_a(), rho0);
  std::size_t n_smooth = 0, n_piece = 0;
  for (const auto& c : smooth) n_smooth += c.forms.size();
  for (const auto& c : piecewise) n_piece += c.forms.size();
  CHECK(n_smooth > n_piece);
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(bracket_coefficients(profile_a(), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(homogenize(profile_a(), GasModel(), -1.0), std::exception);
}

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "pipewave/averaging.hpp"
#include "pipewave/medium.hpp"

namespace pipewave {

/// <a>, <a^-1>, <a^-2>, <a^-3> over one period.
struct AreaMoments {
  double mean_a;
  double mean_inv;
  double mean_inv2;
  double mean_inv3;
};

/// Closed forms for analytic profiles, trapezoid rule for sampled ones.
AreaMoments mean_area_pair(const CrossSectionProfile& profile);

/// The area over one unit cell as a function of the fast variable y = x/delta.
/// Piecewise-constant profiles keep their exact representation.
PeriodicFunction unit_cell_area(const CrossSectionProfile& profile,
                                std::size_t n = PeriodicFunction::default_samples);

/// Bracket-moment table C1..C15 for one profile and background density.
struct BracketCoefficients {
  std::array<double, 15> c{};
  double rho0 = 0.0;
  AreaMoments moments{};
  std::string profile_id;

  /// 1-based access, matching the usual C1..C15 numbering.
  double operator()(int index) const { return c.at(static_cast<std::size_t>(index - 1)); }
};

/// Evaluates every C through forms that never differentiate a, so jumps in a
/// piecewise-constant profile are handled exactly.
BracketCoefficients bracket_coefficients(const CrossSectionProfile& profile, double rho0,
                                         std::size_t n = PeriodicFunction::default_samples);

/// Coefficients of the homogenized evolution system
///   rho_t = sum alpha_i * (term_i),   q_t = sum beta_i * (term_i)
/// plus the mixed-derivative replacements alpha5b, beta11b.
struct HomogCoefficients {
  std::array<double, 8> alpha{};
  std::array<double, 11> beta{};
  double alpha5b = 0.0;
  double beta11b = 0.0;
  double delta = 1.0;
  double rho0 = 0.0;
  double kappa = 1.0;
  double gamma = 1.4;
  AreaMoments moments{};

  double a(int index) const { return alpha.at(static_cast<std::size_t>(index - 1)); }
  double b(int index) const { return beta.at(static_cast<std::size_t>(index - 1)); }
};

HomogCoefficients homog_coefficients(const BracketCoefficients& c, const GasModel& gas,
                                     double rho0, double delta);

/// Convenience: profile -> C table -> alpha/beta with delta = profile period.
HomogCoefficients homogenize(const CrossSectionProfile& profile, const GasModel& gas, double rho0);

/// One independently evaluated form of a coefficient.
struct CoefficientForm {
  std::string label;
  double value;
};

/// All the forms of one coefficient that must agree. `name` is e.g. "C3".
struct IdentityChain {
  std::string name;
  std::vector<CoefficientForm> forms;

  /// max |form_i - form_j|
  double spread() const;
};

/// Identity chains for C1..C9, C11, C13, C15. Forms that involve a_y are only
/// included for smooth profiles, where a_y is taken from the analytic
/// derivative.
std::vector<IdentityChain> coefficient_identity_chains(
    const CrossSectionProfile& profile, double rho0,
    std::size_t n = PeriodicFunction::default_samples);

}  // namespace pipewave

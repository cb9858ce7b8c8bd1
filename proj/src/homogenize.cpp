#include "pipewave/homogenize.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace pipewave {

AreaMoments mean_area_pair(const CrossSectionProfile& profile) {
  switch (profile.kind()) {
    case CrossSectionProfile::Kind::piecewise_constant: {
      AreaMoments m{0.0, 0.0, 0.0, 0.0};
      const auto& b = profile.breakpoints();
      const auto& v = profile.values();
      for (std::size_t j = 0; j < v.size(); ++j) {
        const double hi = j + 1 < b.size() ? b[j + 1] : profile.period();
        const double w = (hi - b[j]) / profile.period();
        m.mean_a += w * v[j];
        m.mean_inv += w / v[j];
        m.mean_inv2 += w / (v[j] * v[j]);
        m.mean_inv3 += w / (v[j] * v[j] * v[j]);
      }
      return m;
    }
    case CrossSectionProfile::Kind::sinusoidal: {
      // Averages of (p + q sin)^-n follow from 1/sqrt(p^2 - q^2) by
      // differentiating with respect to p.
      const double p = profile.mean_value();
      const double q = profile.amplitude();
      const double d = p * p - q * q;
      const double sd = std::sqrt(d);
      return {p, 1.0 / sd, p / (d * sd), (2.0 * p * p + q * q) / (2.0 * d * d * sd)};
    }
    case CrossSectionProfile::Kind::sampled: {
      AreaMoments m{0.0, 0.0, 0.0, 0.0};
      const auto& s = profile.samples();
      for (double v : s) {
        m.mean_a += v;
        m.mean_inv += 1.0 / v;
        m.mean_inv2 += 1.0 / (v * v);
        m.mean_inv3 += 1.0 / (v * v * v);
      }
      const double n = static_cast<double>(s.size());
      return {m.mean_a / n, m.mean_inv / n, m.mean_inv2 / n, m.mean_inv3 / n};
    }
  }
  return {};
}

PeriodicFunction unit_cell_area(const CrossSectionProfile& profile, std::size_t n) {
  if (profile.kind() == CrossSectionProfile::Kind::piecewise_constant) {
    std::vector<double> breaks;
    for (double b : profile.breakpoints()) breaks.push_back(b / profile.period());
    return {PiecewisePolynomial::piecewise_constant(std::move(breaks), profile.values()), n};
  }
  const double delta = profile.period();
  return PeriodicFunction::from_function([&](double y) { return profile(y * delta); }, n);
}

namespace {

void require_positive(const PeriodicFunction& a) {
  const auto s = a.samples();
  if (!std::all_of(s.begin(), s.end(), [](double v) { return v > 0.0; })) {
    throw std::invalid_argument("homogenize: area must be strictly positive");
  }
}

// The a-dependent building blocks shared by the coefficient table and the
// identity chains.
struct CellFunctions {
  PeriodicFunction a;
  PeriodicFunction inv;   // a^-1
  PeriodicFunction inv2;  // a^-2
  PeriodicFunction br_a;       // [[a]]
  PeriodicFunction br_inv;     // [[a^-1]]
  std::optional<PeriodicFunction> ay_inv3;  // a^-3 a_y, smooth profiles only

  CellFunctions(const CrossSectionProfile& profile, std::size_t n)
      : a(unit_cell_area(profile, n)),
        inv(power(a, -1.0)),
        inv2(power(a, -2.0)),
        br_a(bracket(a)),
        br_inv(bracket(inv)) {
    require_positive(a);
    if (profile.is_smooth()) {
      const double delta = profile.period();
      const auto ay = PeriodicFunction::from_function(
          [&](double y) { return delta * profile.derivative(y * delta); }, n);
      ay_inv3 = power(a, -3.0) * ay;
    }
  }
};

}  // namespace

BracketCoefficients bracket_coefficients(const CrossSectionProfile& profile, double rho0,
                                         std::size_t n) {
  if (!(rho0 > 0.0)) throw std::invalid_argument("bracket_coefficients: rho0 must be positive");
  const CellFunctions f(profile, n);
  const AreaMoments m = mean_area_pair(profile);
  const double r = rho0;
  const double r2 = rho0 * rho0;

  BracketCoefficients out;
  out.rho0 = rho0;
  out.moments = m;
  out.profile_id = profile.describe();
  auto& c = out.c;

  const double c1 = mean(f.inv * f.br_a);
  c[0] = c1;
  c[1] = mean(f.inv * bracket(f.br_a));
  c[2] = -(m.mean_inv - m.mean_a * m.mean_inv2) / (2.0 * r2);
  c[3] = -mean(f.a * bracket(f.inv2)) / (2.0 * r);
  c[4] = -(m.mean_inv3 - m.mean_inv * m.mean_inv2) / (2.0 * r2);
  c[5] = -(m.mean_inv3 + m.mean_a * m.mean_inv2 * m.mean_inv2 -
           2.0 * m.mean_inv * m.mean_inv2) /
         (4.0 * r2);
  c[6] = m.mean_inv2 * c1 / (2.0 * r);
  // a^-3 a_y = -(1/2) (a^-2)_y, then one integration by parts.
  c[7] = -mean(f.inv2 * fluctuation(f.a) * f.br_a) / r;
  c[8] = mean(f.a * bracket(f.inv * f.br_a));
  c[9] = m.mean_inv / r2;
  c[10] = mean(f.inv * bracket(f.a * f.br_inv));
  c[11] = m.mean_inv3 / r2;
  c[12] = -(m.mean_inv - m.mean_a * m.mean_inv2) / (2.0 * r);
  c[13] = m.mean_inv / r;
  c[14] = mean(f.a * f.br_inv) / r;
  return out;
}

HomogCoefficients homog_coefficients(const BracketCoefficients& c, const GasModel& gas,
                                     double rho0, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("homog_coefficients: delta must be positive");
  const auto pv = gas.pressure(rho0);
  const double p1 = pv.dp;
  const double p2 = pv.d2p;
  const double A = c.moments.mean_a;
  const double B = c.moments.mean_inv;
  const double d = delta;
  const double d2 = delta * delta;
  const double C1 = c(1), C2 = c(2), C3 = c(3), C4 = c(4), C5 = c(5), C6 = c(6), C7 = c(7),
               C8 = c(8), C9 = c(9), C10 = c(10), C11 = c(11), C12 = c(12), C13 = c(13),
               C14 = c(14);

  HomogCoefficients h;
  h.delta = delta;
  h.rho0 = rho0;
  h.kappa = gas.kappa();
  h.gamma = gas.gamma();
  h.moments = c.moments;
  auto& al = h.alpha;
  auto& be = h.beta;

  al[0] = -1.0 / A;
  al[1] = d * (-C1 / (B * A * A));
  al[2] = d * 2.0 * C13 / (B * A);
  al[3] = d2 * ((4.0 * C13 * C13 + 4.0 * C13 * C14) / (B * p1 * A * A) - C3 / (p1 * A * A) -
                C13 * p2 / (p1 * p1 * A * A));
  al[4] = d2 * (C9 / (B * A * A * A) - C2 / (B * A * A));
  al[5] = d2 * (-2.0 * C3 / (B * A));
  al[6] = d2 * (2.0 * C8 / (B * A * A) - 2.0 * C4 / (B * A));
  al[7] = d2 * (-2.0 * C13 * C1 / (B * B * A * A) + 2.0 * C8 / (B * A * A) - 2.0 * C4 / (B * A));

  be[0] = -p1 / B;
  be[1] = d * (-2.0 * C13 - 2.0 * C14) / (B * A);
  be[2] = d * (-p2 / B);
  be[3] = d * C1 * p1 / (B * B * A);
  be[4] = d2 * (2.0 * C10 + 2.0 * C3) / (B * A);
  be[5] = d2 * (2.0 * C1 * C13 / (B * B * A * A) - C8 / (B * A * A));
  be[6] = d2 * (-2.0 * C1 * C13 / (B * B * A * A) + 4.0 * C7 / (B * B * A) - 2.0 * C4 / (B * A));
  be[7] = d2 * ((-3.0 * C5 + 4.0 * C6 + C12) / (B * B) +
                (4.0 * C13 * C13 + 4.0 * C13 * C14) / (B * B * A));
  be[8] = d2 * (2.0 * C7 * p1 / (B * B * B) + C1 * p2 / (B * B * A) -
                2.0 * C1 * C13 * p1 / (B * B * B * A));
  be[9] = d2 * C1 * p2 / (B * B * A);
  be[10] = d2 * (C11 * p1 / (B * B * B * A) - C2 * p1 / (B * B * A));

  h.alpha5b = d2 * (-C9 / (B * A * A) + C2 / (B * A));
  h.beta11b = d2 * (-C11 / (B * B * A) + C2 / (B * A));
  return h;
}

HomogCoefficients homogenize(const CrossSectionProfile& profile, const GasModel& gas,
                             double rho0) {
  return homog_coefficients(bracket_coefficients(profile, rho0), gas, rho0, profile.period());
}

double IdentityChain::spread() const {
  double lo = forms.front().value;
  double hi = lo;
  for (const auto& f : forms) {
    lo = std::min(lo, f.value);
    hi = std::max(hi, f.value);
  }
  return hi - lo;
}

std::vector<IdentityChain> coefficient_identity_chains(const CrossSectionProfile& profile,
                                                       double rho0, std::size_t n) {
  const CellFunctions f(profile, n);
  const AreaMoments m = mean_area_pair(profile);
  const double r = rho0;
  const double r2 = rho0 * rho0;
  const auto& a = f.a;
  const auto& inv = f.inv;
  const auto& inv2 = f.inv2;
  const auto fl_inv2 = fluctuation(inv2);
  // [[a^-3 a_y]] = -(1/2) {a^-2}
  const auto br_ay_inv3 = -0.5 * fl_inv2;
  const double c1 = mean(inv * f.br_a);

  std::vector<IdentityChain> chains;
  auto add = [&](std::string name, std::vector<CoefficientForm> forms) {
    chains.push_back({std::move(name), std::move(forms)});
  };
  const bool smooth = f.ay_inv3.has_value();

  add("C1", {{"<a^-1 [[a]]>", c1}, {"-<a [[a^-1]]>", -mean(a * f.br_inv)}});
  add("C2", {{"<a^-1 [[[[a]]]]>", mean(inv * bracket(f.br_a))},
             {"<a [[[[a^-1]]]]>", mean(a * bracket(f.br_inv))}});

  {
    std::vector<CoefficientForm> forms{
        {"closed form", -(m.mean_inv - m.mean_a * m.mean_inv2) / (2.0 * r2)},
        {"-<a {a^-2}>/2", -mean(a * fl_inv2) / (2.0 * r2)},
        {"-<a^-2 {a}>/2", -mean(inv2 * fluctuation(a)) / (2.0 * r2)}};
    if (smooth) {
      const auto& g = *f.ay_inv3;
      forms.push_back({"<a [[a_y a^-3]]>", mean(a * bracket(g)) / r2});
      forms.push_back({"-<a_y a^-3 [[a]]>", -mean(g * f.br_a) / r2});
    }
    add("C3", std::move(forms));
  }
  {
    std::vector<CoefficientForm> forms{
        {"-<a [[a^-2]]>/2", -mean(a * bracket(inv2)) / (2.0 * r)},
        {"<a^-2 [[a]]>/2", mean(inv2 * f.br_a) / (2.0 * r)},
        {"<a [[[[a^-3 a_y]]]]> by parts", mean(a * bracket(br_ay_inv3)) / r}};
    if (smooth) {
      const auto& g = *f.ay_inv3;
      forms.push_back({"<a^-3 a_y [[[[a]]]]>", mean(g * bracket(f.br_a)) / r});
      forms.push_back({"<a [[[[a^-3 a_y]]]]>", mean(a * bracket(bracket(g))) / r});
    }
    add("C4", std::move(forms));
  }
  {
    std::vector<CoefficientForm> forms{
        {"closed form", -(m.mean_inv3 - m.mean_inv * m.mean_inv2) / (2.0 * r2)},
        {"<a^-1 [[a^-3 a_y]]> by parts", mean(inv * br_ay_inv3) / r2}};
    if (smooth) {
      const auto& g = *f.ay_inv3;
      forms.push_back({"<a^-1 [[a^-3 a_y]]>", mean(inv * bracket(g)) / r2});
      forms.push_back({"-<a^-3 a_y [[a^-1]]>", -mean(g * f.br_inv) / r2});
    }
    add("C5", std::move(forms));
  }
  {
    // <a^-3 a_y X> = (1/2) <a^-2 X_y> for continuous periodic X.
    std::vector<CoefficientForm> forms{
        {"closed form", -(m.mean_inv3 + m.mean_a * m.mean_inv2 * m.mean_inv2 -
                          2.0 * m.mean_inv * m.mean_inv2) /
                            (4.0 * r2)},
        {"<a^-2 {a [[a^-3 a_y]]}>/2", 0.5 * mean(inv2 * fluctuation(a * br_ay_inv3)) / r2}};
    if (smooth) {
      const auto& g = *f.ay_inv3;
      forms.push_back({"<a^-3 a_y [[a [[a^-3 a_y]]]]>", mean(g * bracket(a * bracket(g))) / r2});
    }
    add("C6", std::move(forms));
  }
  {
    std::vector<CoefficientForm> forms{
        {"<a^-2> C1 / 2", m.mean_inv2 * c1 / (2.0 * r)},
        {"<a^-2 {a [[a^-1]]}>/2", 0.5 * mean(inv2 * fluctuation(a * f.br_inv)) / r},
        {"<a^-1 [[a [[a^-3 a_y]]]]> by parts", mean(inv * bracket(a * br_ay_inv3)) / r}};
    if (smooth) {
      const auto& g = *f.ay_inv3;
      forms.push_back({"<a^-3 a_y [[a [[a^-1]]]]>", mean(g * bracket(a * f.br_inv)) / r});
      forms.push_back({"<a^-1 [[a [[a^-3 a_y]]]]>", mean(inv * bracket(a * bracket(g))) / r});
    }
    add("C7", std::move(forms));
  }
  {
    std::vector<CoefficientForm> forms{
        {"-<a^-2 {a} [[a]]>", -mean(inv2 * fluctuation(a) * f.br_a) / r},
        {"-(C1 - <a><a^-2 [[a]]>)", -(c1 - mean(a) * mean(inv2 * f.br_a)) / r}};
    if (smooth) {
      const auto& g = *f.ay_inv3;
      forms.push_back({"<a [[a^-3 a_y [[a]]]]>", mean(a * bracket(g * f.br_a)) / r});
      forms.push_back({"-<a^-3 a_y [[a]]^2>", -mean(g * f.br_a * f.br_a) / r});
    }
    add("C8", std::move(forms));
  }
  add("C9", {{"<a [[a^-1 [[a]]]]>", mean(a * bracket(inv * f.br_a))},
             {"-<a^-1 [[a]]^2>", -mean(inv * f.br_a * f.br_a)}});
  add("C11", {{"<a^-1 [[a [[a^-1]]]]>", mean(inv * bracket(a * f.br_inv))},
              {"-<a [[a^-1]]^2>", -mean(a * f.br_inv * f.br_inv)}});
  {
    std::vector<CoefficientForm> forms{
        {"closed form", -(m.mean_inv - m.mean_a * m.mean_inv2) / (2.0 * r)},
        {"rho0 * C3", r * (-(m.mean_inv - m.mean_a * m.mean_inv2) / (2.0 * r2))},
        {"-<a {a^-2}>/2", -mean(a * fl_inv2) / (2.0 * r)}};
    if (smooth) {
      const auto& g = *f.ay_inv3;
      forms.push_back({"<a [[a^-3 a_y]]>", mean(a * bracket(g)) / r});
      forms.push_back({"-<a^-3 a_y [[a]]>", -mean(g * f.br_a) / r});
    }
    add("C13", std::move(forms));
  }
  add("C15", {{"<a [[a^-1]]>", mean(a * f.br_inv) / r}, {"-<a^-1 [[a]]>", -c1 / r}});
  return chains;
}

}  // namespace pipewave

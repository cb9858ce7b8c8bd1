#include "pipewave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "pipewave/ssprk3.hpp"

namespace pipewave {

std::vector<double> SpectralGrid::points() const {
  std::vector<double> x(n);
  const double h = dx();
  for (std::size_t j = 0; j < n; ++j) x[j] = x_lo + static_cast<double>(j) * h;
  return x;
}

SpectralSolver::SpectralSolver(SpectralGrid grid, HomogCoefficients h, SpectralOptions options)
    : grid_(grid), h_(h), options_(options), fft_(grid.n) {
  if (grid_.n < 64 || grid_.n % 2 != 0) {
    throw std::invalid_argument("spectral: need an even number of points, at least 64");
  }
  if (!(grid_.length() > 0.0)) throw std::invalid_argument("spectral: empty domain");
  if (!(options_.cfl > 0.0)) throw std::invalid_argument("spectral: cfl must be positive");
  for (double c : {h_.alpha5b, h_.beta11b}) {
    if (!std::isfinite(c)) throw std::invalid_argument("spectral: non-finite coefficients");
  }
  const std::size_t m = fft_.spectrum_size();
  k_.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    k_[j] = 2.0 * std::numbers::pi * static_cast<double>(j) / grid_.length();
  }
  cutoff_ = options_.dealias ? (grid_.n + 2) / 3 : m;
  // Guard the Helmholtz operators against vanishing denominators.
  for (double c : {h_.alpha5b, h_.beta11b}) {
    for (std::size_t j = 0; j < m; ++j) {
      if (std::abs(1.0 + c * k_[j] * k_[j]) < 1e-12) {
        throw std::domain_error("spectral: 1 + c k^2 vanishes (unstable coefficient signs)");
      }
    }
  }
}

void SpectralSolver::apply_mask(std::vector<std::complex<double>>& spec) const {
  for (std::size_t j = cutoff_; j < spec.size(); ++j) spec[j] = 0.0;
}

std::vector<double> SpectralSolver::derivative(std::span<const double> field, int order) const {
  if (field.size() != grid_.n) throw std::invalid_argument("spectral: field size mismatch");
  if (order != 1 && order != 2) throw std::invalid_argument("spectral: derivative order 1 or 2");
  auto spec = fft_.forward(field);
  const std::size_t nyq = grid_.n / 2;
  for (std::size_t j = 0; j < spec.size(); ++j) {
    if (order == 1) {
      spec[j] = j == nyq ? 0.0 : std::complex<double>(0.0, k_[j]) * spec[j];
    } else {
      spec[j] *= -k_[j] * k_[j];
    }
  }
  return fft_.inverse(spec);
}

std::vector<double> SpectralSolver::helmholtz_invert(std::span<const double> field,
                                                     double c) const {
  if (field.size() != grid_.n) throw std::invalid_argument("spectral: field size mismatch");
  auto spec = fft_.forward(field);
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const double den = 1.0 + c * k_[j] * k_[j];
    if (std::abs(den) < 1e-12) {
      throw std::domain_error("helmholtz_invert: 1 + c k^2 vanishes");
    }
    spec[j] /= den;
  }
  return fft_.inverse(spec);
}

namespace {

struct Derivs {
  std::vector<double> u, ux, uxx;
};

}  // namespace

SpectralFields SpectralSolver::rhs(const SpectralState& state) const {
  const std::size_t n = grid_.n;
  if (state.rho_bar.size() != n || state.q_bar.size() != n) {
    throw std::invalid_argument("spectral: state size mismatch");
  }
  const std::size_t nyq = n / 2;
  auto expand = [&](const std::vector<double>& f) {
    auto spec = fft_.forward(f);
    apply_mask(spec);
    Derivs d;
    std::vector<std::complex<double>> s1(spec.size()), s2(spec.size());
    for (std::size_t j = 0; j < spec.size(); ++j) {
      s1[j] = j == nyq ? 0.0 : std::complex<double>(0.0, k_[j]) * spec[j];
      s2[j] = -k_[j] * k_[j] * spec[j];
    }
    d.u = fft_.inverse(spec);
    d.ux = fft_.inverse(s1);
    d.uxx = fft_.inverse(s2);
    return d;
  };
  const Derivs r = expand(state.rho_bar);
  const Derivs q = expand(state.q_bar);

  const auto& H = h_;
  SpectralFields F;
  F.f1.resize(n);
  F.f2.resize(n);
  if (options_.linear_only) {
    const double b1 = H.b(1) + H.b(3) * options_.rho_lin;
    const double b4 = H.b(4) + H.b(10) * options_.rho_lin;
    for (std::size_t j = 0; j < n; ++j) {
      F.f1[j] = H.a(1) * q.ux[j] + H.a(2) * q.uxx[j];
      F.f2[j] = b1 * r.ux[j] + b4 * r.uxx[j];
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      const double rr = r.u[j], rx = r.ux[j], rxx = r.uxx[j];
      const double qq = q.u[j], qx = q.ux[j], qxx = q.uxx[j];
      F.f1[j] = H.a(1) * qx + H.a(2) * qxx + H.a(3) * qq * rx + H.a(4) * qq * qq * qx +
                H.a(6) * qq * rr * rx + H.a(7) * qx * rx + H.a(8) * qq * rxx;
      F.f2[j] = H.b(1) * rx + H.b(2) * qq * qx + H.b(3) * rr * rx + H.b(4) * rxx +
                H.b(5) * qq * rr * qx + H.b(6) * qx * qx + H.b(7) * qq * qxx +
                H.b(8) * qq * qq * rx + H.b(9) * rx * rx + H.b(10) * rr * rxx;
    }
  }
  if (options_.dealias) {
    for (auto* f : {&F.f1, &F.f2}) {
      auto spec = fft_.forward(*f);
      apply_mask(spec);
      *f = fft_.inverse(spec);
    }
  }
  return F;
}

SpectralFields SpectralSolver::time_derivative(const SpectralState& state) const {
  SpectralFields F = rhs(state);
  F.f1 = helmholtz_invert(F.f1, h_.alpha5b);
  F.f2 = helmholtz_invert(F.f2, h_.beta11b);
  return F;
}

void SpectralSolver::step(SpectralState& state, double dt) const {
  if (!(dt > 0.0)) throw std::invalid_argument("spectral: dt must be positive");
  const double t0 = state.t;
  auto L = [&](const SpectralState& s) {
    SpectralFields d = time_derivative(s);
    return SpectralState{std::move(d.f1), std::move(d.f2), s.t};
  };
  auto lincomb = [&](double a, const SpectralState& x, double b, const SpectralState& y) {
    SpectralState out;
    const std::size_t n = x.rho_bar.size();
    out.rho_bar.resize(n);
    out.q_bar.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      out.rho_bar[j] = a * x.rho_bar[j] + b * y.rho_bar[j];
      out.q_bar[j] = a * x.q_bar[j] + b * y.q_bar[j];
      if (!std::isfinite(out.rho_bar[j]) || !std::isfinite(out.q_bar[j])) {
        std::ostringstream os;
        os << "spectral: non-finite value at x=" << grid_.x_lo + j * grid_.dx()
           << " near t=" << t0 << "; blow-up or under-resolution";
        throw std::runtime_error(os.str());
      }
    }
    return out;
  };
  state = ssprk3_step(state, dt, L, lincomb);
  state.t = t0 + dt;
}

double SpectralSolver::default_dt() const {
  const double s = h_.a(1) * (h_.b(1) + h_.b(3) * options_.rho_lin);
  if (!(s > 0.0)) throw std::domain_error("spectral: imaginary long-wave speed");
  return options_.cfl * grid_.dx() / std::sqrt(s);
}

SpectralRunResult SpectralSolver::run(SpectralState initial, std::span<const double> snapshot_times,
                                      std::optional<double> dt) const {
  const double dt_max = dt.value_or(default_dt());
  if (!(dt_max > 0.0)) throw std::invalid_argument("spectral run: dt must be positive");
  SpectralRunResult result;
  SpectralState state = std::move(initial);
  const std::vector<double> x = grid_.points();

  double amplitude = 0.0;
  for (double v : state.rho_bar) amplitude = std::max(amplitude, std::abs(v));
  const std::size_t edge = std::max<std::size_t>(1, grid_.n / 50);
  bool warned = false;

  for (double target : snapshot_times) {
    if (target < state.t) {
      throw std::invalid_argument("spectral run: snapshot times must be nondecreasing");
    }
    const double span = target - state.t;
    if (span > 0.0) {
      const auto steps = static_cast<std::size_t>(std::ceil(span / dt_max * (1.0 - 1e-12)));
      const double h = span / static_cast<double>(steps);
      for (std::size_t s = 0; s < steps; ++s) step(state, h);
      state.t = target;
      result.steps += steps;
    }
    result.snapshots.push_back({state.t, x, state.rho_bar, state.q_bar});

    if (!warned && amplitude > 0.0) {
      double seam = 0.0;
      for (std::size_t j = 0; j < edge; ++j) {
        seam = std::max({seam, std::abs(state.rho_bar[j]), std::abs(state.rho_bar[grid_.n - 1 - j])});
      }
      if (seam > 1e-3 * amplitude) {
        std::ostringstream os;
        os << "spectral: wave reached the periodic seam by t=" << state.t
           << " (|rho_bar| = " << seam << " near the boundary); later snapshots include wrap-around";
        result.warnings.push_back(os.str());
        warned = true;
      }
    }
  }
  return result;
}

double SpectralSolver::mass_rate(const SpectralState& state) const {
  const SpectralFields F = time_derivative(state);
  return integrate_periodic(F.f1, grid_.dx());
}

std::vector<double> spectral_interpolate(std::span<const double> samples, double x_lo,
                                         double length, std::span<const double> points) {
  const std::size_t n = samples.size();
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("spectral_interpolate: need even n");
  const RealFft fft(n);
  const auto spec = fft.forward(samples);
  const std::size_t nyq = n / 2;
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    const double theta = 2.0 * std::numbers::pi * (points[p] - x_lo) / length;
    const std::complex<double> w(std::cos(theta), std::sin(theta));
    std::complex<double> e = 1.0;
    double sum = spec[0].real();
    for (std::size_t j = 1; j < nyq; ++j) {
      // Re-seed the recurrence now and then to keep rounding from piling up.
      if (j % 64 == 0) {
        e = std::polar(1.0, theta * static_cast<double>(j));
      } else {
        e *= w;
      }
      sum += 2.0 * (spec[j] * e).real();
    }
    sum += spec[nyq].real() * std::cos(theta * static_cast<double>(nyq));
    out[p] = sum * inv_n;
  }
  return out;
}

double integrate_periodic(std::span<const double> samples, double dx) {
  double s = 0.0;
  for (double v : samples) s += v;
  return s * dx;
}

}  // namespace pipewave

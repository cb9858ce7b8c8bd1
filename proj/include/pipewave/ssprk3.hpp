#pragma once

namespace pipewave {

/// One Shu-Osher SSP-RK3 step for u' = L(u).
///
/// `lincomb(a, x, b, y)` must return a*x + b*y. Any state type works as long
/// as L and lincomb accept it; a plain double with
/// [](double a, double x, double b, double y) { return a * x + b * y; } is
/// the scalar ODE case.
template <class State, class Deriv, class LinComb>
State ssprk3_step(const State& u, double dt, Deriv&& L, LinComb&& lincomb) {
  const State u1 = lincomb(1.0, u, dt, L(u));
  const State u2 = lincomb(0.75, u, 0.25, lincomb(1.0, u1, dt, L(u1)));
  return lincomb(1.0 / 3.0, u, 2.0 / 3.0, lincomb(1.0, u2, dt, L(u2)));
}

}  // namespace pipewave

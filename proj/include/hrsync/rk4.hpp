#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <utility>

#include "hrsync/errors.hpp"

namespace hrsync {

namespace detail {

template <std::size_t N>
void require_finite(const std::array<double, N>& v, double t) {
  for (double component : v) {
    if (!std::isfinite(component)) throw DivergenceError(t, "non-finite value in RK4 stage");
  }
}

template <std::size_t N>
std::array<double, N> axpy(const std::array<double, N>& base, double scale,
                           const std::array<double, N>& dir) {
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = base[i] + scale * dir[i];
  return out;
}

}  // namespace detail

/// One classical fourth-order Runge-Kutta step of size dt from (state, t).
/// `field(state, t)` must return a std::array of the same extent.
template <std::size_t N, class Field>
std::array<double, N> rk4_step(Field&& field, const std::array<double, N>& state, double t,
                               double dt) {
  const double half = 0.5 * dt;
  const std::array<double, N> k1 = field(state, t);
  detail::require_finite(k1, t);
  const std::array<double, N> k2 = field(detail::axpy(state, half, k1), t + half);
  detail::require_finite(k2, t);
  const std::array<double, N> k3 = field(detail::axpy(state, half, k2), t + half);
  detail::require_finite(k3, t);
  const std::array<double, N> k4 = field(detail::axpy(state, dt, k3), t + dt);
  detail::require_finite(k4, t);

  std::array<double, N> next;
  for (std::size_t i = 0; i < N; ++i) {
    next[i] = state[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  detail::require_finite(next, t);
  return next;
}

/// Integrates from t0 over `steps` steps of size dt and returns the endpoint.
template <std::size_t N, class Field>
std::array<double, N> rk4_integrate(Field&& field, std::array<double, N> state, double t0,
                                    double dt, long steps) {
  for (long i = 0; i < steps; ++i) {
    state = rk4_step(field, state, t0 + static_cast<double>(i) * dt, dt);
  }
  return state;
}

}  // namespace hrsync

#pragma once

// Energy function of the four-variable Hindmarsh-Rose neuron
//
//   H = (p/a) * [ (2/3) f x^3 + (C/a) x^2 + a y^2
//                 + (d/(a m s)) C z^2 - 2 d y z + 2 g x w ],   C = m s d - g n r
//
// and its trajectory derivative dH/dt = grad H . f_d, where f_d is the
// dissipative part of the vector field. grad H is orthogonal to the
// conservative remainder, so grad H . f_d equals grad H . f.

#include "hrsync/model.hpp"

namespace hrsync {

struct EnergyReport {
  double H = 0.0;
  double Hdot = 0.0;
  Vec4 gradient{};
};

namespace detail {

// m s d - g n r
constexpr double cross_coefficient(const NeuronParams& q) { return q.m * q.s * q.d - q.g * q.n * q.r; }

}  // namespace detail

inline double energy(const NeuronState& st, const NeuronParams& q) {
  validate(q);
  detail::require_finite(st);
  const double C = detail::cross_coefficient(q);
  const double x = st.x, y = st.y, z = st.z, w = st.w;
  const double bracket = (2.0 / 3.0) * q.f * x * x * x + (C / q.a) * x * x + q.a * y * y +
                         (q.d / (q.a * q.m * q.s)) * C * z * z - 2.0 * q.d * y * z +
                         2.0 * q.g * x * w;
  return (q.p / q.a) * bracket;
}

inline Vec4 energy_gradient(const NeuronState& st, const NeuronParams& q) {
  validate(q);
  detail::require_finite(st);
  const double C = detail::cross_coefficient(q);
  const double scale = 2.0 * q.p / q.a;
  const double x = st.x, y = st.y, z = st.z, w = st.w;
  return {scale * (q.f * x * x + (C / q.a) * x + q.g * w),
          scale * (q.a * y - q.d * z),
          scale * ((q.d / (q.a * q.m * q.s)) * C * z - q.d * y),
          scale * (q.g * x)};
}

inline double dot(const Vec4& u, const Vec4& v) {
  return u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3];
}

inline double energy_derivative(const NeuronState& st, const NeuronParams& q) {
  return dot(energy_gradient(st, q), dissipative_field(st, q).as_array());
}

inline EnergyReport energy_report(const NeuronState& st, const NeuronParams& q) {
  EnergyReport report;
  report.H = energy(st, q);
  report.gradient = energy_gradient(st, q);
  report.Hdot = dot(report.gradient, dissipative_field(st, q).as_array());
  return report;
}

}  // namespace hrsync

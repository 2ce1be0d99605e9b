#pragma once

// Four-variable Hindmarsh-Rose neuron: parameters, state, vector field and
// its split into a dissipative part and an energy-conserving remainder.
//
//   x' = a*y + b*x^2 - c*x^3 - d*z + xi*I
//   y' = e - f*x^2 - y - g*w
//   z' = m*(-z + s*(x + h))
//   w' = n*(-k*w + r*(y + l))
//
// The w-equation uses the constant l (1.619 mV). Only with l in place of a
// literal 1 is the energy derivative in energy.hpp the time derivative of
// the energy along trajectories.
//
// Units are documentation only; everything is plain dimensionless doubles.

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "hrsync/errors.hpp"

namespace hrsync {

using Vec4 = std::array<double, 4>;

struct NeuronState {
  double x = 0.0;  // membrane potential (mV)
  double y = 0.0;  // fast recovery variable, as a voltage (mV)
  double z = 0.0;  // slow adaptation current
  double w = 0.0;  // slower (calcium-like) current

  constexpr Vec4 as_array() const { return {x, y, z, w}; }
  static constexpr NeuronState from_array(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }
  friend constexpr bool operator==(const NeuronState&, const NeuronState&) = default;
};

struct StateDerivative {
  double dx = 0.0;
  double dy = 0.0;
  double dz = 0.0;
  double dw = 0.0;

  constexpr Vec4 as_array() const { return {dx, dy, dz, dw}; }
  static constexpr StateDerivative from_array(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }
  friend constexpr bool operator==(const StateDerivative&, const StateDerivative&) = default;
};

constexpr StateDerivative operator-(const StateDerivative& u, const StateDerivative& v) {
  return {u.dx - v.dx, u.dy - v.dy, u.dz - v.dz, u.dw - v.dw};
}

constexpr StateDerivative operator+(const StateDerivative& u, const StateDerivative& v) {
  return {u.dx + v.dx, u.dy + v.dy, u.dz + v.dz, u.dw + v.dw};
}

/// Identifies one model constant. `p` is the energy-scale conductance; it
/// does not enter the vector field and so cannot be adapted.
enum class Param { a, b, c, d, xi, I, e, f, g, m, s, h, n, k, r, l, p };

inline constexpr std::array<Param, 17> kAllParams = {
    Param::a, Param::b, Param::c, Param::d, Param::xi, Param::I, Param::e, Param::f, Param::g,
    Param::m, Param::s, Param::h, Param::n, Param::k, Param::r, Param::l, Param::p};

constexpr std::string_view param_name(Param which) {
  switch (which) {
    case Param::a: return "a";
    case Param::b: return "b";
    case Param::c: return "c";
    case Param::d: return "d";
    case Param::xi: return "xi";
    case Param::I: return "I";
    case Param::e: return "e";
    case Param::f: return "f";
    case Param::g: return "g";
    case Param::m: return "m";
    case Param::s: return "s";
    case Param::h: return "h";
    case Param::n: return "n";
    case Param::k: return "k";
    case Param::r: return "r";
    case Param::l: return "l";
    case Param::p: return "p";
  }
  return "?";
}

inline std::optional<Param> find_param(std::string_view name) {
  for (Param which : kAllParams) {
    if (param_name(which) == name) return which;
  }
  return std::nullopt;
}

/// Throws UsageError for names that are not model constants.
inline Param parse_param(std::string_view name) {
  if (auto which = find_param(name)) return *which;
  throw UsageError("unknown parameter '" + std::string(name) + "'");
}

struct NeuronParams {
  double a = 1.0;
  double b = 3.0;      // 1/mV
  double c = 1.0;      // 1/mV^2
  double d = 0.99;     // MOhm
  double xi = 1.0;     // MOhm
  double I = 3.024;    // external current
  double e = 1.01;     // mV
  double f = 5.0128;   // 1/mV
  double g = 0.0278;   // MOhm
  double m = 0.00215;
  double s = 3.966;    // uS
  double h = 1.605;    // mV
  double n = 0.0009;
  double k = 0.9573;
  double r = 3.0;      // uS
  double l = 1.619;    // mV
  double p = -1.0;     // S, energy scale

  /// Published constant set; I defaults to the chaotic bursting value.
  static constexpr NeuronParams canonical(double current = 3.024) {
    NeuronParams params;
    params.I = current;
    return params;
  }

  /// All fields zero except a = 1, which yields the null vector field.
  static constexpr NeuronParams zero_field() {
    NeuronParams params{};
    for (Param which : kAllParams) params.ref(which) = 0.0;
    params.a = 1.0;
    return params;
  }

  constexpr double get(Param which) const { return const_cast<NeuronParams*>(this)->ref(which); }

  constexpr NeuronParams with(Param which, double value) const {
    NeuronParams copy = *this;
    copy.ref(which) = value;
    return copy;
  }

  constexpr double& ref(Param which) {
    switch (which) {
      case Param::a: return a;
      case Param::b: return b;
      case Param::c: return c;
      case Param::d: return d;
      case Param::xi: return xi;
      case Param::I: return I;
      case Param::e: return e;
      case Param::f: return f;
      case Param::g: return g;
      case Param::m: return m;
      case Param::s: return s;
      case Param::h: return h;
      case Param::n: return n;
      case Param::k: return k;
      case Param::r: return r;
      case Param::l: return l;
      case Param::p: return p;
    }
    return p;
  }

  friend constexpr bool operator==(const NeuronParams&, const NeuronParams&) = default;
};

namespace detail {

inline void require_finite(const NeuronState& state) {
  if (!(std::isfinite(state.x) && std::isfinite(state.y) && std::isfinite(state.z) &&
        std::isfinite(state.w))) {
    throw DomainError("non-finite neuron state");
  }
}

inline void require_finite(const NeuronParams& params) {
  for (Param which : kAllParams) {
    if (!std::isfinite(params.get(which))) {
      throw DomainError("non-finite parameter '" + std::string(param_name(which)) + "'");
    }
  }
}

}  // namespace detail

/// Throws DomainError if the record cannot be used in the energy formulas.
inline void validate(const NeuronParams& params) {
  detail::require_finite(params);
  if (params.a == 0.0) throw DomainError("parameter a must be nonzero");
  if (params.m * params.s == 0.0) throw DomainError("product m*s must be nonzero");
}

inline StateDerivative vector_field(const NeuronState& st, const NeuronParams& q) {
  detail::require_finite(st);
  detail::require_finite(q);
  const double x2 = st.x * st.x;
  return {q.a * st.y + q.b * x2 - q.c * x2 * st.x - q.d * st.z + q.xi * q.I,
          q.e - q.f * x2 - st.y - q.g * st.w,
          q.m * (-st.z + q.s * (st.x + q.h)),
          q.n * (-q.k * st.w + q.r * (st.y + q.l))};
}

/// The part of the field that changes the energy: dH/dt = grad H . f_d.
inline StateDerivative dissipative_field(const NeuronState& st, const NeuronParams& q) {
  detail::require_finite(st);
  detail::require_finite(q);
  const double x2 = st.x * st.x;
  return {q.b * x2 - q.c * x2 * st.x + q.xi * q.I,
          q.e - st.y,
          q.m * q.s * q.h - q.m * st.z,
          q.n * q.r * q.l - q.n * q.k * st.w};
}

/// vector_field - dissipative_field; orthogonal to the energy gradient.
inline StateDerivative conservative_field(const NeuronState& st, const NeuronParams& q) {
  return vector_field(st, q) - dissipative_field(st, q);
}

/// Partial derivatives of the vector field with respect to one constant.
inline StateDerivative param_sensitivity(const NeuronState& st, const NeuronParams& q,
                                         Param which) {
  detail::require_finite(st);
  detail::require_finite(q);
  const double x = st.x, y = st.y, z = st.z, w = st.w;
  switch (which) {
    case Param::a: return {y, 0, 0, 0};
    case Param::b: return {x * x, 0, 0, 0};
    case Param::c: return {-x * x * x, 0, 0, 0};
    case Param::d: return {-z, 0, 0, 0};
    case Param::xi: return {q.I, 0, 0, 0};
    case Param::I: return {q.xi, 0, 0, 0};
    case Param::e: return {0, 1, 0, 0};
    case Param::f: return {0, -x * x, 0, 0};
    case Param::g: return {0, -w, 0, 0};
    case Param::m: return {0, 0, -z + q.s * (x + q.h), 0};
    case Param::s: return {0, 0, q.m * (x + q.h), 0};
    case Param::h: return {0, 0, q.m * q.s, 0};
    case Param::n: return {0, 0, 0, -q.k * w + q.r * (y + q.l)};
    case Param::k: return {0, 0, 0, -q.n * w};
    case Param::r: return {0, 0, 0, q.n * (y + q.l)};
    case Param::l: return {0, 0, 0, q.n * q.r};
    case Param::p: break;
  }
  throw UsageError("parameter 'p' does not enter the vector field");
}

inline StateDerivative param_sensitivity(const NeuronState& st, const NeuronParams& q,
                                         std::string_view which) {
  return param_sensitivity(st, q, parse_param(which));
}

}  // namespace hrsync

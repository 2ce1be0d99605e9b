#pragma once

// Fixed-step simulation of one neuron or of a unidirectionally coupled pair.
//
// The pair is a drive-response system: the presynaptic neuron runs free and
// the postsynaptic x-equation receives K * (x_pre - x_post). Optionally one
// postsynaptic constant q is adapted from a start time on by
//
//   dq/dt = -gain * sum_l (d f_l / d q)|_(pre state, pre params) * e_l,
//   e = post_state - pre_state,
//
// integrated as a ninth state component in the same RK4 step.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "hrsync/energy.hpp"
#include "hrsync/errors.hpp"
#include "hrsync/model.hpp"
#include "hrsync/rk4.hpp"

namespace hrsync {

/// Any state component at or beyond this magnitude aborts a run.
inline constexpr double kDivergenceBound = 100.0;

struct AdaptationSpec {
  Param target = Param::I;
  double gain = 1.0;
  double start_time = 100.0;

  void validate() const {
    if (target == Param::p) throw UsageError("parameter 'p' cannot be adapted");
    if (!(gain > 0.0) || !std::isfinite(gain)) throw UsageError("adaptation gain must be > 0");
    if (!(start_time >= 0.0) || !std::isfinite(start_time)) {
      throw UsageError("adaptation start time must be >= 0");
    }
  }
};

struct PairConfig {
  NeuronParams pre = NeuronParams::canonical(3.024);
  NeuronParams post = NeuronParams::canonical(0.85);
  double K = 5.0;  // acts on the postsynaptic x-equation only
  std::optional<AdaptationSpec> adaptation = AdaptationSpec{};

  void validate() const {
    hrsync::validate(pre);
    hrsync::validate(post);
    if (!(K >= 0.0) || !std::isfinite(K)) throw UsageError("coupling strength K must be >= 0");
    if (adaptation) adaptation->validate();
  }

  Param adapted_param() const { return adaptation ? adaptation->target : Param::I; }
};

struct SimSpec {
  double dt = 0.01;
  double t_end = 200.0;
  long record_every = 1;
  NeuronState initial_pre{0.1, 0.2, 0.3, 0.1};
  NeuronState initial_post{0.0, 0.0, 0.0, 0.0};
  double transient = 0.0;  // samples before this time are not recorded

  void validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw UsageError("dt must be > 0");
    if (!(transient >= 0.0) || !std::isfinite(transient)) throw UsageError("transient must be >= 0");
    if (!(t_end > transient) || !std::isfinite(t_end)) {
      throw UsageError("t_end must be greater than transient");
    }
    if (record_every < 1) throw UsageError("record_every must be >= 1");
    detail::require_finite(initial_pre);
    detail::require_finite(initial_post);
  }

  long steps() const { return std::lround(t_end / dt); }
  double time_at(long step) const { return static_cast<double>(step) * dt; }
};

struct TrajectorySample {
  double t = 0.0;
  NeuronState pre_state;
  NeuronState post_state;
  double post_param = 0.0;  // live value of the adapted postsynaptic constant (I by default)
  Vec4 e{};                 // post_state - pre_state
  double H_pre = 0.0;
  double Hdot_pre = 0.0;
  double H_post = 0.0;
  double Hdot_post = 0.0;
};

/// (pre x,y,z,w, post x,y,z,w, adapted parameter)
using JointState = std::array<double, 9>;

namespace detail {

inline NeuronState pre_of(const JointState& j) { return {j[0], j[1], j[2], j[3]}; }
inline NeuronState post_of(const JointState& j) { return {j[4], j[5], j[6], j[7]}; }

inline void guard(const JointState& j, double t) {
  for (std::size_t i = 0; i < 8; ++i) {
    if (!std::isfinite(j[i]) || std::abs(j[i]) >= kDivergenceBound) {
      throw DivergenceError(t, "state left the bounded region");
    }
  }
  if (!std::isfinite(j[8])) throw DivergenceError(t, "adapted parameter is non-finite");
}

inline void guard(const Vec4& v, double t) {
  for (double component : v) {
    if (!std::isfinite(component) || std::abs(component) >= kDivergenceBound) {
      throw DivergenceError(t, "state left the bounded region");
    }
  }
}

}  // namespace detail

inline JointState pack_joint(const NeuronState& pre, const NeuronState& post, double adapted) {
  return {pre.x, pre.y, pre.z, pre.w, post.x, post.y, post.z, post.w, adapted};
}

/// Postsynaptic parameters with the adapted constant replaced by its live value.
inline NeuronParams live_post_params(const JointState& joint, const PairConfig& config) {
  return config.post.with(config.adapted_param(), joint[8]);
}

/// Joint derivative with the adaptation law switched on or off explicitly.
inline JointState coupled_derivative(const JointState& joint, const PairConfig& config,
                                     bool adapting) {
  const NeuronState pre = detail::pre_of(joint);
  const NeuronState post = detail::post_of(joint);

  const StateDerivative d_pre = vector_field(pre, config.pre);
  StateDerivative d_post = vector_field(post, live_post_params(joint, config));
  d_post.dx += config.K * (pre.x - post.x);

  double d_param = 0.0;
  if (adapting && config.adaptation) {
    const Vec4 sens = param_sensitivity(pre, config.pre, config.adaptation->target).as_array();
    const Vec4 err = {post.x - pre.x, post.y - pre.y, post.z - pre.z, post.w - pre.w};
    d_param = -config.adaptation->gain * dot(sens, err);
  }
  return {d_pre.dx,  d_pre.dy,  d_pre.dz,  d_pre.dw, d_post.dx,
          d_post.dy, d_post.dz, d_post.dw, d_param};
}

/// Joint derivative at time t; adaptation is active once t >= start_time.
inline JointState coupled_derivative(const JointState& joint, const PairConfig& config,
                                     double t) {
  const bool adapting = config.adaptation && t >= config.adaptation->start_time;
  return coupled_derivative(joint, config, adapting);
}

inline TrajectorySample make_sample(double t, const JointState& joint, const PairConfig& config) {
  TrajectorySample sample;
  sample.t = t;
  sample.pre_state = detail::pre_of(joint);
  sample.post_state = detail::post_of(joint);
  sample.post_param = joint[8];
  for (std::size_t i = 0; i < 4; ++i) sample.e[i] = joint[4 + i] - joint[i];

  const EnergyReport pre = energy_report(sample.pre_state, config.pre);
  const EnergyReport post = energy_report(sample.post_state, live_post_params(joint, config));
  sample.H_pre = pre.H;
  sample.Hdot_pre = pre.Hdot;
  sample.H_post = post.H;
  sample.Hdot_post = post.Hdot;
  return sample;
}

/// Integrates the coupled pair from t = 0 to spec.t_end.
///
/// Adaptation switches on at the first step whose left endpoint reaches the
/// start time; all four RK4 stages of a step share that decision. Throws
/// DivergenceError when a neuron component reaches kDivergenceBound.
inline std::vector<TrajectorySample> run_pair(const SimSpec& spec, const PairConfig& config) {
  spec.validate();
  config.validate();

  const long steps = spec.steps();
  // Tolerates representation error in i*dt when the start time is a multiple of dt.
  const double switch_slack = 1e-9 * spec.dt;

  std::vector<TrajectorySample> samples;
  samples.reserve(static_cast<std::size_t>(steps / spec.record_every + 1));

  JointState joint = pack_joint(spec.initial_pre, spec.initial_post,
                                config.post.get(config.adapted_param()));
  detail::guard(joint, 0.0);

  for (long i = 0;; ++i) {
    const double t = spec.time_at(i);
    if (i % spec.record_every == 0 && t >= spec.transient - switch_slack) {
      samples.push_back(make_sample(t, joint, config));
    }
    if (i == steps) break;

    const bool adapting =
        config.adaptation && t >= config.adaptation->start_time - switch_slack;
    joint = rk4_step(
        [&](const JointState& j, double) { return coupled_derivative(j, config, adapting); },
        joint, t, spec.dt);
    detail::guard(joint, spec.time_at(i + 1));
  }
  return samples;
}

/// Integrates a single free neuron. Samples mirror it into both the pre and
/// post slots with e = 0 and post_param = params.I. Parameter sets for which
/// the energy is undefined (a = 0 or m*s = 0) still integrate; their samples
/// carry NaN energies.
inline std::vector<TrajectorySample> run_isolated(const SimSpec& spec, const NeuronParams& params) {
  spec.validate();
  detail::require_finite(params);
  const bool has_energy = params.a != 0.0 && params.m * params.s != 0.0;

  const long steps = spec.steps();
  const double slack = 1e-9 * spec.dt;
  std::vector<TrajectorySample> samples;
  samples.reserve(static_cast<std::size_t>(steps / spec.record_every + 1));

  Vec4 state = spec.initial_pre.as_array();
  detail::guard(state, 0.0);
  const auto field = [&](const Vec4& v, double) {
    return vector_field(NeuronState::from_array(v), params).as_array();
  };

  for (long i = 0;; ++i) {
    const double t = spec.time_at(i);
    if (i % spec.record_every == 0 && t >= spec.transient - slack) {
      TrajectorySample sample;
      sample.t = t;
      sample.pre_state = sample.post_state = NeuronState::from_array(state);
      sample.post_param = params.I;
      if (has_energy) {
        const EnergyReport report = energy_report(sample.pre_state, params);
        sample.H_pre = sample.H_post = report.H;
        sample.Hdot_pre = sample.Hdot_post = report.Hdot;
      } else {
        sample.H_pre = sample.H_post = std::numeric_limits<double>::quiet_NaN();
        sample.Hdot_pre = sample.Hdot_post = std::numeric_limits<double>::quiet_NaN();
      }
      samples.push_back(sample);
    }
    if (i == steps) break;
    state = rk4_step(field, state, t, spec.dt);
    detail::guard(state, spec.time_at(i + 1));
  }
  return samples;
}

}  // namespace hrsync

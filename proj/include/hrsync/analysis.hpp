#pragma once

// Turning trajectories into the reported quantities: trailing window
// averages, synchronization error, and coupling-strength sweeps.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <future>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hrsync/errors.hpp"
#include "hrsync/sim.hpp"

namespace hrsync {

enum class AveragingMode {
  Sliding,  // one value per sample once the window is full
  Block,    // one value per non-overlapping block, stamped at the block end
};

struct WindowedSeries {
  std::vector<double> times;
  std::vector<double> values;
  std::size_t window_samples = 0;
};

namespace detail {

// Neumaier-compensated sum.
inline double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

inline bool in_window(double t, double t0, double t1) {
  constexpr double slack = 1e-9;
  return t >= t0 - slack && t <= t1 + slack;
}

}  // namespace detail

/// Average of `values` over a trailing window of duration `window`: the
/// value at times[i] averages the samples in (times[i] - window, times[i]].
/// Sampling must be uniform; the window must span at least one sample
/// spacing and at most the whole series.
inline WindowedSeries windowed_average(std::span<const double> times,
                                       std::span<const double> values, double window,
                                       AveragingMode mode = AveragingMode::Sliding) {
  if (times.size() != values.size()) throw UsageError("times and values differ in length");
  if (times.size() < 2) throw UsageError("windowed average needs at least two samples");

  const double spacing = times[1] - times[0];
  if (!(spacing > 0.0)) throw UsageError("sample times must increase");
  for (std::size_t i = 2; i < times.size(); ++i) {
    if (std::abs((times[i] - times[i - 1]) - spacing) > 1e-6 * spacing) {
      throw UsageError("series is not uniformly sampled");
    }
  }
  if (!(window >= spacing * (1.0 - 1e-9))) {
    throw UsageError("averaging window is shorter than the sample spacing");
  }
  const auto width = static_cast<std::size_t>(std::floor(window / spacing + 1e-9));
  if (width > values.size()) throw UsageError("averaging window is longer than the series");

  WindowedSeries out;
  out.window_samples = width;
  const auto scale = 1.0 / static_cast<double>(width);
  if (mode == AveragingMode::Sliding) {
    out.times.reserve(values.size() - width + 1);
    out.values.reserve(values.size() - width + 1);
    for (std::size_t end = width; end <= values.size(); ++end) {
      out.times.push_back(times[end - 1]);
      out.values.push_back(detail::compensated_sum(values.subspan(end - width, width)) * scale);
    }
  } else {
    for (std::size_t end = width; end <= values.size(); end += width) {
      out.times.push_back(times[end - 1]);
      out.values.push_back(detail::compensated_sum(values.subspan(end - width, width)) * scale);
    }
  }
  return out;
}

/// Pulls one scalar per sample out of a trajectory.
inline std::vector<double> column(std::span<const TrajectorySample> samples,
                                  const std::function<double(const TrajectorySample&)>& pick) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(pick(s));
  return out;
}

inline std::vector<double> sample_times(std::span<const TrajectorySample> samples) {
  return column(samples, [](const TrajectorySample& s) { return s.t; });
}

inline double error_norm(const TrajectorySample& s) {
  return std::sqrt(s.e[0] * s.e[0] + s.e[1] * s.e[1] + s.e[2] * s.e[2] + s.e[3] * s.e[3]);
}

/// Mean of a sampled quantity over samples with t in [t0, t1].
inline double window_mean(std::span<const TrajectorySample> samples, double t0, double t1,
                          const std::function<double(const TrajectorySample&)>& pick) {
  if (!(t0 < t1)) throw UsageError("window start must precede window end");
  std::vector<double> picked;
  for (const auto& s : samples) {
    if (detail::in_window(s.t, t0, t1)) picked.push_back(pick(s));
  }
  if (picked.empty()) throw UsageError("no samples in the requested window");
  return detail::compensated_sum(picked) / static_cast<double>(picked.size());
}

/// Root mean square of the full-state error norm |e|_2 over t in [t0, t1].
inline double sync_rms(std::span<const TrajectorySample> samples, double t0, double t1) {
  const double mean_square = window_mean(samples, t0, t1, [](const TrajectorySample& s) {
    const double n = error_norm(s);
    return n * n;
  });
  return std::sqrt(mean_square);
}

/// Comparison windows either side of the adaptation switch.
struct SummaryWindows {
  double pre_start = 50.0;
  double pre_end = 100.0;
  double post_start = 150.0;
  double post_end = 200.0;

  void validate(const PairConfig& config) const {
    if (!(pre_start < pre_end && pre_end < post_start && post_start < post_end)) {
      throw UsageError("summary windows must be ordered and disjoint");
    }
    if (config.adaptation) {
      const double switch_time = config.adaptation->start_time;
      if (pre_end > switch_time || post_start < switch_time) {
        throw UsageError("summary windows must lie before and after the adaptation start");
      }
    }
  }
};

struct SweepSummary {
  double K = 0.0;
  double pre_adapt_avg_H = 0.0;
  double pre_adapt_avg_Hdot = 0.0;
  double post_adapt_avg_H = 0.0;
  double post_adapt_avg_Hdot = 0.0;
  double pre_adapt_sync_rms = 0.0;
  double post_adapt_sync_rms = 0.0;
};

/// Postsynaptic energy statistics of one pair run.
inline SweepSummary summarize(std::span<const TrajectorySample> samples, double K,
                              const SummaryWindows& windows) {
  const auto H = [](const TrajectorySample& s) { return s.H_post; };
  const auto Hdot = [](const TrajectorySample& s) { return s.Hdot_post; };
  SweepSummary out;
  out.K = K;
  out.pre_adapt_avg_H = window_mean(samples, windows.pre_start, windows.pre_end, H);
  out.pre_adapt_avg_Hdot = window_mean(samples, windows.pre_start, windows.pre_end, Hdot);
  out.post_adapt_avg_H = window_mean(samples, windows.post_start, windows.post_end, H);
  out.post_adapt_avg_Hdot = window_mean(samples, windows.post_start, windows.post_end, Hdot);
  out.pre_adapt_sync_rms = sync_rms(samples, windows.pre_start, windows.pre_end);
  out.post_adapt_sync_rms = sync_rms(samples, windows.post_start, windows.post_end);
  return out;
}

struct SweepOutcome {
  double K = 0.0;
  std::optional<SweepSummary> summary;  // empty when the run diverged
  std::string error;
};

/// Runs one pair simulation per coupling strength, in parallel, and returns
/// the outcomes in input order. A diverging run is reported in its own
/// outcome and does not affect the others.
inline std::vector<SweepOutcome> sweep_K(std::span<const double> K_values, const SimSpec& spec,
                                         const PairConfig& base,
                                         const SummaryWindows& windows = {}) {
  spec.validate();
  for (double K : K_values) {
    if (!(K >= 0.0) || !std::isfinite(K)) throw UsageError("coupling strengths must be >= 0");
  }
  base.validate();
  windows.validate(base);
  if (windows.post_end > spec.t_end + 1e-9 || windows.pre_start < spec.transient - 1e-9) {
    throw UsageError("summary windows exceed the recorded time range");
  }

  std::vector<std::future<SweepOutcome>> pending;
  pending.reserve(K_values.size());
  for (double K : K_values) {
    pending.push_back(std::async(std::launch::async, [K, &spec, &base, &windows] {
      PairConfig config = base;
      config.K = K;
      SweepOutcome outcome;
      outcome.K = K;
      try {
        const auto samples = run_pair(spec, config);
        outcome.summary = summarize(samples, K, windows);
      } catch (const DivergenceError& err) {
        outcome.error = err.what();
      }
      return outcome;
    }));
  }

  std::vector<SweepOutcome> results;
  results.reserve(pending.size());
  for (auto& f : pending) results.push_back(f.get());
  return results;
}

}  // namespace hrsync

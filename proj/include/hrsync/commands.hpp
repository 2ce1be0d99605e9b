#pragma once

// The three command-line workflows, split into a compute step (returns
// data) and a render step (returns CSV/SVG text) so that tests exercise the
// same data path as the executable.
//
//   isolated  free neuron traces: t,x,y,z,w,H,Hdot
//   pair      coupled pair with optional adaptation, postsynaptic averages
//   sweep     per-K summaries before and after adaptation

#include <array>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "hrsync/analysis.hpp"
#include "hrsync/config.hpp"
#include "hrsync/io.hpp"
#include "hrsync/sim.hpp"
#include "hrsync/svg.hpp"

namespace hrsync {

inline constexpr double kEnergyWindow = 10.0;
inline constexpr double kDerivativeWindow = 5.0;
inline constexpr std::string_view kDivergenceMarker = "ERR:divergence";

inline constexpr std::array<std::string_view, 7> kIsolatedHeader = {"t", "x", "y", "z",
                                                                    "w", "H", "Hdot"};
inline constexpr std::array<std::string_view, 17> kPairHeader = {
    "t",  "x1", "y1", "z1",    "w1", "x2",    "y2", "z2",        "w2",
    "I2", "e_norm", "H1", "Hdot1", "H2", "Hdot2", "avgH2_w10", "avgHdot2_w5"};
inline constexpr std::array<std::string_view, 7> kSweepHeader = {
    "K", "preH", "preHdot", "postH", "postHdot", "preSync", "postSync"};

struct PairReport {
  std::vector<TrajectorySample> samples;
  // Aligned with samples; empty until the trailing window is full.
  std::vector<std::optional<double>> avg_H_w10;
  std::vector<std::optional<double>> avg_Hdot_w5;
};

/// Trailing average re-indexed onto the source samples.
inline std::vector<std::optional<double>> aligned_average(const std::vector<double>& times,
                                                          const std::vector<double>& values,
                                                          double window, AveragingMode mode) {
  std::vector<std::optional<double>> out(values.size());
  if (times.size() < 2) return out;
  const double spacing = times[1] - times[0];
  if (window / spacing + 1e-9 > static_cast<double>(values.size())) {
    if (window < spacing) windowed_average(times, values, window, mode);  // throws
    return out;
  }
  const WindowedSeries avg = windowed_average(times, values, window, mode);
  const std::size_t width = avg.window_samples;
  for (std::size_t j = 0; j < avg.values.size(); ++j) {
    const std::size_t end = mode == AveragingMode::Sliding ? j + width - 1 : (j + 1) * width - 1;
    out[end] = avg.values[j];
  }
  return out;
}

inline std::vector<TrajectorySample> compute_isolated(const RunConfig& cfg) {
  cfg.validate();
  return run_isolated(cfg.sim, cfg.pre);
}

inline PairReport compute_pair(const RunConfig& cfg) {
  cfg.validate();
  PairReport report;
  report.samples = run_pair(cfg.sim, cfg.pair());
  const auto times = sample_times(report.samples);
  report.avg_H_w10 = aligned_average(
      times, column(report.samples, [](const TrajectorySample& s) { return s.H_post; }),
      kEnergyWindow, cfg.averaging);
  report.avg_Hdot_w5 = aligned_average(
      times, column(report.samples, [](const TrajectorySample& s) { return s.Hdot_post; }),
      kDerivativeWindow, cfg.averaging);
  return report;
}

inline std::vector<SweepOutcome> compute_sweep(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.K_list.empty()) throw UsageError("K list is empty");
  return sweep_K(cfg.K_list, cfg.sim, cfg.pair(), cfg.windows);
}

namespace detail {

inline bool recorded(double t, double record_start) { return t >= record_start - 1e-9; }

inline std::string stem_of(const std::string& path) {
  if (path.size() > 4 && path.ends_with(".csv")) return path.substr(0, path.size() - 4);
  return path;
}

}  // namespace detail

inline std::string isolated_csv(const std::vector<TrajectorySample>& samples, double record_start) {
  CsvBuilder csv(kIsolatedHeader);
  for (const auto& s : samples) {
    if (!detail::recorded(s.t, record_start)) continue;
    const auto& st = s.pre_state;
    csv.cell(s.t).cell(st.x).cell(st.y).cell(st.z).cell(st.w).cell(s.H_pre).cell(s.Hdot_pre);
    csv.end_row();
  }
  return csv.str();
}

/// Attractor projections onto (x,y,z), (x,y,w) and (x,z,w), keyed by suffix.
inline std::vector<std::pair<std::string, std::string>> isolated_projections(
    const std::vector<TrajectorySample>& samples, double record_start) {
  constexpr std::array<std::array<int, 3>, 3> kTriples = {{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}}};
  constexpr std::array<std::string_view, 4> kNames = {"x", "y", "z", "w"};
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& triple : kTriples) {
    const std::array<std::string_view, 3> header = {kNames[triple[0]], kNames[triple[1]],
                                                    kNames[triple[2]]};
    CsvBuilder csv(header);
    for (const auto& s : samples) {
      if (!detail::recorded(s.t, record_start)) continue;
      const Vec4 v = s.pre_state.as_array();
      csv.cell(v[triple[0]]).cell(v[triple[1]]).cell(v[triple[2]]).end_row();
    }
    out.emplace_back("_" + std::string(header[0]) + std::string(header[1]) +
                         std::string(header[2]),
                     csv.str());
  }
  return out;
}

inline std::string isolated_svg(const std::vector<TrajectorySample>& samples, double record_start) {
  svg::Series x{"x"}, H{"H"}, Hdot{"dH/dt"};
  for (const auto& s : samples) {
    if (!detail::recorded(s.t, record_start)) continue;
    x.x.push_back(s.t), x.y.push_back(s.pre_state.x);
    H.x.push_back(s.t), H.y.push_back(s.H_pre);
    Hdot.x.push_back(s.t), Hdot.y.push_back(s.Hdot_pre);
  }
  const std::vector<svg::Panel> panels = {
      {"Membrane potential", "t", "x", {x}},
      {"Energy", "t", "H", {H}},
      {"Energy derivative", "t", "dH/dt", {Hdot}},
  };
  return svg::render(panels);
}

inline std::string pair_csv(const PairReport& report, double record_start) {
  CsvBuilder csv(kPairHeader);
  for (std::size_t i = 0; i < report.samples.size(); ++i) {
    const auto& s = report.samples[i];
    if (!detail::recorded(s.t, record_start)) continue;
    const auto& a = s.pre_state;
    const auto& b = s.post_state;
    csv.cell(s.t).cell(a.x).cell(a.y).cell(a.z).cell(a.w);
    csv.cell(b.x).cell(b.y).cell(b.z).cell(b.w);
    csv.cell(s.post_param).cell(error_norm(s));
    csv.cell(s.H_pre).cell(s.Hdot_pre).cell(s.H_post).cell(s.Hdot_post);
    csv.cell(report.avg_H_w10[i]).cell(report.avg_Hdot_w5[i]);
    csv.end_row();
  }
  return csv.str();
}

inline std::string pair_svg(const PairReport& report, double record_start) {
  svg::Series avgH{"H2, 10-unit average"}, avgHdot{"dH2/dt, 5-unit average"};
  svg::Series current{"I2"};
  for (std::size_t i = 0; i < report.samples.size(); ++i) {
    const double t = report.samples[i].t;
    if (!detail::recorded(t, record_start)) continue;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    avgH.x.push_back(t), avgH.y.push_back(report.avg_H_w10[i].value_or(nan));
    avgHdot.x.push_back(t), avgHdot.y.push_back(report.avg_Hdot_w5[i].value_or(nan));
    current.x.push_back(t), current.y.push_back(report.samples[i].post_param);
  }
  const std::vector<svg::Panel> panels = {
      {"Postsynaptic energy (10-unit average)", "t", "H", {avgH}},
      {"Postsynaptic energy derivative (5-unit average)", "t", "dH/dt", {avgHdot}},
      {"Adapted external current", "t", "I2", {current}},
  };
  return svg::render(panels);
}

inline std::string sweep_csv(const std::vector<SweepOutcome>& outcomes) {
  CsvBuilder csv(kSweepHeader);
  for (const auto& o : outcomes) {
    csv.cell(o.K);
    if (o.summary) {
      const auto& s = *o.summary;
      csv.cell(s.pre_adapt_avg_H).cell(s.pre_adapt_avg_Hdot);
      csv.cell(s.post_adapt_avg_H).cell(s.post_adapt_avg_Hdot);
      csv.cell(s.pre_adapt_sync_rms).cell(s.post_adapt_sync_rms);
    } else {
      for (std::size_t i = 1; i < kSweepHeader.size(); ++i) csv.raw(kDivergenceMarker);
    }
    csv.end_row();
  }
  return csv.str();
}

inline std::string sweep_svg(const std::vector<SweepOutcome>& outcomes) {
  svg::Series without{"without adaptation"}, with{"with adaptation", true};
  for (const auto& o : outcomes) {
    if (!o.summary) continue;
    without.x.push_back(o.K), without.y.push_back(o.summary->pre_adapt_avg_Hdot);
    with.x.push_back(o.K), with.y.push_back(o.summary->post_adapt_avg_Hdot);
  }
  const std::vector<svg::Panel> panels = {
      {"Average postsynaptic energy derivative vs coupling", "K", "<dH/dt>", {without, with}},
  };
  return svg::render(panels);
}

namespace detail {

inline void emit(const RunConfig& cfg, const std::string& csv, std::ostream& console) {
  if (cfg.out.empty()) {
    console << csv;
    console.flush();
  } else {
    write_text_file(cfg.out, csv);
  }
}

inline void require_plot_target(const RunConfig& cfg) {
  if (cfg.plot && cfg.out.empty()) throw UsageError("--plot requires --out");
}

}  // namespace detail

/// Writes the isolated-neuron table; with plotting on, also <stem>.svg and
/// the three attractor projection tables <stem>_xyz.csv, _xyw.csv, _xzw.csv.
inline void cmd_isolated(const RunConfig& cfg, std::ostream& console) {
  detail::require_plot_target(cfg);
  const auto samples = compute_isolated(cfg);
  detail::emit(cfg, isolated_csv(samples, cfg.record_start), console);
  if (cfg.plot) {
    const std::string stem = detail::stem_of(cfg.out);
    write_text_file(stem + ".svg", isolated_svg(samples, cfg.record_start));
    for (const auto& [suffix, text] : isolated_projections(samples, cfg.record_start)) {
      write_text_file(stem + suffix + ".csv", text);
    }
  }
}

inline void cmd_pair(const RunConfig& cfg, std::ostream& console) {
  detail::require_plot_target(cfg);
  const PairReport report = compute_pair(cfg);
  detail::emit(cfg, pair_csv(report, cfg.record_start), console);
  if (cfg.plot) {
    write_text_file(detail::stem_of(cfg.out) + ".svg", pair_svg(report, cfg.record_start));
  }
}

inline void cmd_sweep(const RunConfig& cfg, std::ostream& console) {
  detail::require_plot_target(cfg);
  const auto outcomes = compute_sweep(cfg);
  detail::emit(cfg, sweep_csv(outcomes), console);
  if (cfg.plot) write_text_file(detail::stem_of(cfg.out) + ".svg", sweep_svg(outcomes));
}

}  // namespace hrsync

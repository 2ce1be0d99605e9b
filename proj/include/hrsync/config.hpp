#pragma once

// Run configuration: a flat `key = value` text format. '#' starts a comment
// and blank lines are ignored. Later assignments override earlier ones,
// which is how command-line flags take precedence over a config file.
//
// Keys
//   dt, t_end, transient, record_every, record_start
//   K, K_list                         coupling strength / sweep list
//   adapt (true|false), adapt_at, gain, adapt_target
//   i1, i2                            shorthand for pre.I, post.I
//   pre.<param>, post.<param>         any model constant, e.g. post.b = 3.1
//   pre_init, post_init               four comma-separated initial values
//   pre_window, post_window           summary windows "start,end"
//   averaging (sliding|block)
//   out, plot (true|false)

#include <cmath>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "hrsync/analysis.hpp"
#include "hrsync/errors.hpp"
#include "hrsync/io.hpp"
#include "hrsync/model.hpp"
#include "hrsync/sim.hpp"

namespace hrsync {

struct RunConfig {
  SimSpec sim;
  NeuronParams pre = NeuronParams::canonical(3.024);
  NeuronParams post = NeuronParams::canonical(0.85);
  double K = 5.0;
  bool adapt = true;
  AdaptationSpec adaptation;
  double record_start = 50.0;  // first time written to the output table
  SummaryWindows windows;
  std::vector<double> K_list{0.0, 0.5, 1.0, 1.5, 2.0};
  AveragingMode averaging = AveragingMode::Sliding;
  std::string out;  // empty: standard output
  bool plot = false;

  PairConfig pair() const {
    PairConfig config;
    config.pre = pre;
    config.post = post;
    config.K = K;
    if (adapt) {
      config.adaptation = adaptation;
    } else {
      config.adaptation.reset();
    }
    return config;
  }

  void validate() const {
    sim.validate();
    pair().validate();
    if (!(record_start >= 0.0 && record_start <= sim.t_end)) {
      throw UsageError("record_start must lie in [0, t_end]");
    }
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline bool parse_bool(std::string_view text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw UsageError("not a boolean: '" + std::string(text) + "'");
}

inline NeuronState parse_state(std::string_view text) {
  const auto values = parse_number_list(text);
  if (values.size() != 4) throw UsageError("initial state needs four values");
  return {values[0], values[1], values[2], values[3]};
}

inline std::pair<double, double> parse_interval(std::string_view text) {
  const auto values = parse_number_list(text);
  if (values.size() != 2) throw UsageError("window needs two values 'start,end'");
  return {values[0], values[1]};
}

inline long parse_count(std::string_view text) {
  const double v = parse_number(text);
  if (std::abs(v) > 1e15 || v != std::floor(v)) {
    throw UsageError("expected an integer: '" + std::string(text) + "'");
  }
  return static_cast<long>(v);
}

}  // namespace detail

/// Applies one assignment. Unknown keys and malformed values throw UsageError.
inline void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  key = detail::trim(key);
  value = detail::trim(value);
  if (key == "dt") cfg.sim.dt = parse_number(value);
  else if (key == "t_end") cfg.sim.t_end = parse_number(value);
  else if (key == "transient") cfg.sim.transient = parse_number(value);
  else if (key == "record_every") cfg.sim.record_every = detail::parse_count(value);
  else if (key == "record_start") cfg.record_start = parse_number(value);
  else if (key == "K") cfg.K = parse_number(value);
  else if (key == "K_list") cfg.K_list = parse_number_list(value);
  else if (key == "adapt") cfg.adapt = detail::parse_bool(value);
  else if (key == "adapt_at") cfg.adaptation.start_time = parse_number(value);
  else if (key == "gain") cfg.adaptation.gain = parse_number(value);
  else if (key == "adapt_target") cfg.adaptation.target = parse_param(value);
  else if (key == "i1") cfg.pre.I = parse_number(value);
  else if (key == "i2") cfg.post.I = parse_number(value);
  else if (key == "pre_init") cfg.sim.initial_pre = detail::parse_state(value);
  else if (key == "post_init") cfg.sim.initial_post = detail::parse_state(value);
  else if (key == "pre_window") {
    std::tie(cfg.windows.pre_start, cfg.windows.pre_end) = detail::parse_interval(value);
  } else if (key == "post_window") {
    std::tie(cfg.windows.post_start, cfg.windows.post_end) = detail::parse_interval(value);
  } else if (key == "averaging") {
    if (value == "sliding") cfg.averaging = AveragingMode::Sliding;
    else if (value == "block") cfg.averaging = AveragingMode::Block;
    else throw UsageError("averaging must be 'sliding' or 'block'");
  } else if (key == "out") cfg.out = std::string(value);
  else if (key == "plot") cfg.plot = detail::parse_bool(value);
  else if (key.starts_with("pre.")) cfg.pre.ref(parse_param(key.substr(4))) = parse_number(value);
  else if (key.starts_with("post.")) cfg.post.ref(parse_param(key.substr(5))) = parse_number(value);
  else throw UsageError("unknown config key '" + std::string(key) + "'");
}

inline void apply_config_text(RunConfig& cfg, std::string_view text) {
  std::istringstream lines{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(lines, line)) {
    ++number;
    // '#' starts a comment anywhere on the line
    const std::string_view body = detail::trim(std::string_view(line).substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("config line " + std::to_string(number) + ": expected key = value");
    }
    try {
      apply_setting(cfg, body.substr(0, eq), body.substr(eq + 1));
    } catch (const UsageError& err) {
      throw UsageError("config line " + std::to_string(number) + ": " + err.what());
    }
  }
}

inline RunConfig load_config(const std::string& path) {
  RunConfig cfg;
  apply_config_text(cfg, read_text_file(path));
  return cfg;
}

}  // namespace hrsync

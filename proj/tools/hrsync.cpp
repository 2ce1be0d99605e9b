// hrsync: energy accounting of a drive-response pair of Hindmarsh-Rose
// neurons.
//
//   hrsync isolated [--config F] [--out F] [--plot] ...
//   hrsync pair     [--K F] [--no-adapt] [--adapt-at F] [--gain F] ...
//   hrsync sweep    [--K-list 0,0.5,1,1.5,2] ...
//
// Exit codes: 0 success, 2 usage/config error, 3 divergence, 4 I/O error.

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "hrsync/commands.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDivergence = 3;
constexpr int kExitIo = 4;

struct Overrides {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> settings;
};

// Registers a flag that becomes a `key = value` assignment applied after the
// config file.
void add_setting(CLI::App* cmd, Overrides& ov, const std::string& flag, const std::string& key,
                 const std::string& help) {
  cmd->add_option_function<std::string>(
      flag, [&ov, key](const std::string& value) { ov.settings.emplace_back(key, value); }, help);
}

void add_common(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--config", ov.config_path, "key = value config file");
  add_setting(cmd, ov, "--out", "out", "output CSV path (default: stdout)");
  cmd->add_flag_callback("--plot", [&ov] { ov.settings.emplace_back("plot", "true"); },
                         "also write an SVG next to the CSV");
  add_setting(cmd, ov, "--dt", "dt", "integration step");
  add_setting(cmd, ov, "--t-end", "t_end", "final time");
  add_setting(cmd, ov, "--transient", "transient", "time discarded before recording");
  add_setting(cmd, ov, "--record-every", "record_every", "sampling stride in steps");
  add_setting(cmd, ov, "--record-start", "record_start", "first time written to the table");
  add_setting(cmd, ov, "--i1", "i1", "presynaptic external current");
}

void add_pair_options(CLI::App* cmd, Overrides& ov) {
  add_setting(cmd, ov, "--i2", "i2", "postsynaptic external current");
  add_setting(cmd, ov, "--adapt-at", "adapt_at", "adaptation start time");
  add_setting(cmd, ov, "--gain", "gain", "adaptation gain");
  cmd->add_flag_callback("--no-adapt", [&ov] { ov.settings.emplace_back("adapt", "false"); },
                         "disable the adaptive law");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy cost of synchronizing two coupled Hindmarsh-Rose neurons"};
  app.require_subcommand(1);

  Overrides ov;
  auto* isolated = app.add_subcommand("isolated", "single free neuron: t,x,y,z,w,H,Hdot");
  auto* pair = app.add_subcommand("pair", "coupled pair with adaptation of I2");
  auto* sweep = app.add_subcommand("sweep", "per-K averages with and without adaptation");

  add_common(isolated, ov);
  add_common(pair, ov);
  add_pair_options(pair, ov);
  add_setting(pair, ov, "--K", "K", "coupling strength");
  add_common(sweep, ov);
  add_pair_options(sweep, ov);
  add_setting(sweep, ov, "--K-list", "K_list", "comma-separated coupling strengths");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    hrsync::RunConfig cfg =
        ov.config_path.empty() ? hrsync::RunConfig{} : hrsync::load_config(ov.config_path);
    for (const auto& [key, value] : ov.settings) hrsync::apply_setting(cfg, key, value);

    if (isolated->parsed()) hrsync::cmd_isolated(cfg, std::cout);
    else if (pair->parsed()) hrsync::cmd_pair(cfg, std::cout);
    else hrsync::cmd_sweep(cfg, std::cout);
  } catch (const hrsync::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const hrsync::DomainError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitUsage;
  } catch (const hrsync::DivergenceError& e) {
    std::cerr << "numerical divergence: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const hrsync::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}

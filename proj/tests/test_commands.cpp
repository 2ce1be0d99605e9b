#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "hrsync/commands.hpp"

using namespace hrsync;
namespace fs = std::filesystem;

namespace {

std::string tmp_path(const std::string& name) {
  return (fs::path(HRSYNC_TEST_TMPDIR) / ("cmd_" + name)).string();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(HRSYNC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST(IsolatedCommand, HeaderAndRows) {
  RunConfig cfg;
  cfg.sim.t_end = 60.0;
  std::ostringstream console;
  cmd_isolated(cfg, console);
  const auto lines = lines_of(console.str());
  ASSERT_FALSE(lines.empty());
  EXPECT_EQ(lines.front(), "t,x,y,z,w,H,Hdot");
  EXPECT_EQ(lines.size(), 1u + 1001u);  // t in [50, 60] at dt = 0.01
  EXPECT_EQ(split(lines[1]).front(), "50");
  EXPECT_EQ(console.str().find('\r'), std::string::npos);
}

TEST(IsolatedCommand, LongRunEnergyBalance) {
  RunConfig cfg;  // defaults, I = 3.024
  const auto samples = compute_isolated(cfg);
  const auto lines = lines_of(isolated_csv(samples, cfg.record_start));
  double sum = 0.0;
  for (std::size_t i = 1; i < lines.size(); ++i) sum += parse_number(split(lines[i])[6]);
  EXPECT_LT(std::abs(sum / static_cast<double>(lines.size() - 1)), 0.5);
}

TEST(IsolatedCommand, PlotWritesSvgAndProjections) {
  RunConfig cfg;
  cfg.sim.t_end = 70.0;
  cfg.out = tmp_path("iso.csv");
  cfg.plot = true;
  std::ostringstream console;
  cmd_isolated(cfg, console);
  EXPECT_TRUE(console.str().empty());
  const std::string svg = read_text_file(tmp_path("iso.svg"));
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  for (const char* suffix : {"_xyz", "_xyw", "_xzw"}) {
    const auto text = read_text_file(tmp_path(std::string("iso") + suffix + ".csv"));
    EXPECT_EQ(lines_of(text).size(), 1u + 2001u);
  }
  EXPECT_EQ(lines_of(read_text_file(tmp_path("iso_xzw.csv"))).front(), "x,z,w");
}

TEST(IsolatedCommand, TransientBeyondEndIsUsageError) {
  RunConfig cfg;
  cfg.sim.transient = 300.0;
  std::ostringstream console;
  EXPECT_THROW(cmd_isolated(cfg, console), UsageError);
}

TEST(PairCommand, ColumnsAndWindowFill) {
  RunConfig cfg;
  cfg.sim.t_end = 30.0;
  cfg.record_start = 0.0;
  cfg.sim.record_every = 10;
  const auto report = compute_pair(cfg);
  const auto lines = lines_of(pair_csv(report, cfg.record_start));
  EXPECT_EQ(lines.front(),
            "t,x1,y1,z1,w1,x2,y2,z2,w2,I2,e_norm,H1,Hdot1,H2,Hdot2,avgH2_w10,avgHdot2_w5");
  // spacing 0.1: 5-unit window fills at row 50 (t = 4.9), 10-unit at row 100 (t = 9.9)
  const auto row = [&](std::size_t i) { return split(lines[1 + i]); };
  EXPECT_EQ(row(48).size(), 17u);
  EXPECT_TRUE(row(48)[16].empty());
  EXPECT_FALSE(row(49)[16].empty());
  EXPECT_TRUE(row(98)[15].empty());
  EXPECT_FALSE(row(99)[15].empty());
}

TEST(PairCommand, AverageColumnsMatchWindowedAverage) {
  RunConfig cfg;
  cfg.sim.t_end = 40.0;
  cfg.record_start = 0.0;
  const auto report = compute_pair(cfg);
  const auto t = sample_times(report.samples);
  const auto Hdot = column(report.samples, [](const TrajectorySample& s) { return s.Hdot_post; });
  const auto avg = windowed_average(t, Hdot, 5.0);
  ASSERT_EQ(report.avg_Hdot_w5.size(), report.samples.size());
  for (std::size_t j = 0; j < avg.values.size(); j += 97) {
    ASSERT_TRUE(report.avg_Hdot_w5[j + 499].has_value());
    EXPECT_EQ(*report.avg_Hdot_w5[j + 499], avg.values[j]);
  }
}

TEST(PairCommand, BlockAveragingFillsBlockEnds) {
  RunConfig cfg;
  cfg.sim.t_end = 20.0;
  cfg.record_start = 0.0;
  cfg.averaging = AveragingMode::Block;
  const auto report = compute_pair(cfg);
  std::size_t filled = 0;
  for (const auto& v : report.avg_H_w10) filled += v.has_value();
  EXPECT_EQ(filled, 2u);
  EXPECT_TRUE(report.avg_H_w10[999].has_value());
}

TEST(SweepCommand, RowsAndErrorMarker) {
  RunConfig cfg;
  cfg.K_list = {0.5, 1e4, 0.5};
  const auto csv = sweep_csv(compute_sweep(cfg));
  const auto lines = lines_of(csv);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "K,preH,preHdot,postH,postHdot,preSync,postSync");
  EXPECT_EQ(lines[1], lines[3]);
  EXPECT_EQ(lines[2], "10000,ERR:divergence,ERR:divergence,ERR:divergence,ERR:divergence,"
                      "ERR:divergence,ERR:divergence");
}

TEST(SweepCommand, EmptyListIsUsageError) {
  RunConfig cfg;
  cfg.K_list.clear();
  std::ostringstream console;
  EXPECT_THROW(cmd_sweep(cfg, console), UsageError);
}

TEST(Commands, PlotNeedsOutputPath) {
  RunConfig cfg;
  cfg.plot = true;
  std::ostringstream console;
  EXPECT_THROW(cmd_pair(cfg, console), UsageError);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("isolated --t-end 60 --out " + tmp_path("ok.csv")), 0);
  EXPECT_EQ(run_cli("isolated --t-end 60 --transient 100"), 2);
  EXPECT_EQ(run_cli("pair --bogus-flag 1"), 2);
  EXPECT_EQ(run_cli("pair --K -1"), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  EXPECT_EQ(run_cli("pair --K 10000 --t-end 60"), 3);
  EXPECT_EQ(run_cli("pair --t-end 60 --out /nonexistent-dir/x.csv"), 4);
  EXPECT_EQ(run_cli("pair --config /nonexistent-dir/run.cfg"), 4);
}

TEST(Cli, FlagsOverrideConfigFile) {
  const std::string cfg_path = tmp_path("override.cfg");
  write_text_file(cfg_path, "t_end = 55\nK = 2\nrecord_every = 100\n");
  const std::string out = tmp_path("override.csv");
  ASSERT_EQ(run_cli("pair --config " + cfg_path + " --t-end 60 --out " + out), 0);
  const auto lines = lines_of(read_text_file(out));
  EXPECT_EQ(split(lines.back()).front(), "60");
  EXPECT_EQ(lines.size(), 1u + 11u);
}

TEST(Cli, SweepWithPlot) {
  const std::string out = tmp_path("sweep.csv");
  ASSERT_EQ(run_cli("sweep --K-list 0,1 --t-end 200 --record-every 5 --plot --out " + out), 0);
  EXPECT_EQ(lines_of(read_text_file(out)).size(), 3u);
  EXPECT_NE(read_text_file(tmp_path("sweep.svg")).find("with adaptation"), std::string::npos);
}

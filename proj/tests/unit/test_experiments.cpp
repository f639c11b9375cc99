#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fluxlag/experiments.hpp"

using namespace fluxlag;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("fluxlag_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

Scenario small_fig1() { return figure_preset("fig1", 50).runs.front(); }

}  // namespace

TEST(Presets, FigureContents) {
  const FigurePreset f1 = figure_preset("fig1");
  ASSERT_EQ(f1.runs.size(), 1u);
  EXPECT_EQ(f1.runs[0].params.m, 1.0);
  EXPECT_EQ(f1.runs[0].initial.preset, "triangle");
  EXPECT_EQ(f1.runs[0].mesh.n, 1000u);

  const FigurePreset f7 = figure_preset("fig7");
  EXPECT_EQ(f7.runs[0].params.m, 2.0);
  EXPECT_EQ(f7.runs[0].initial.preset, "indicator");
  EXPECT_EQ(*f7.runs[0].reference, "barenblatt");
  EXPECT_EQ(f7.runs[0].mesh.n, 100u);

  const FigurePreset f9 = figure_preset("fig9");
  ASSERT_EQ(f9.runs.size(), 3u);
  EXPECT_EQ(f9.runs[0].params.nu, 1.0);
  EXPECT_EQ(f9.runs[1].params.nu, 10.0);
  EXPECT_EQ(f9.runs[2].params.nu, 100.0);
  for (const auto& r : f9.runs) EXPECT_EQ(*r.reference, "u_hom");

  const FigurePreset f6 = figure_preset("fig6");
  ASSERT_EQ(f6.runs.size(), 2u);
  EXPECT_EQ(f6.runs[0].mesh.n, 100u);
  EXPECT_EQ(f6.runs[1].mesh.n, 1000u);
  EXPECT_EQ(*f6.runs[0].reference, "selfsim_heat");

  EXPECT_EQ(figure_preset("fig2").runs[0].params.m, 1.5);
  EXPECT_EQ(figure_preset("fig3").runs[0].params.m, 3.0);
  EXPECT_EQ(figure_preset("fig4").runs[1].params.m, 4.0);
  EXPECT_EQ(figure_preset("fig5").runs[1].initial.preset, "composite_step");
  EXPECT_EQ(figure_preset("fig2").runs[0].mesh.kind, MeshSpec::Kind::graded);

  for (const auto& r : figure_preset("fig4", 200).runs) EXPECT_EQ(r.mesh.n, 200u);
  EXPECT_THROW(figure_preset("fig10"), std::invalid_argument);
}

TEST(Presets, LogTimes) {
  const auto t = log_times(0.1, 10.0, 3);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[0], 0.1);
  EXPECT_NEAR(t[1], 1.0, 1e-14);
  EXPECT_EQ(t[2], 10.0);
  EXPECT_THROW(log_times(0.0, 1.0, 3), std::invalid_argument);
}

TEST(Output, SnapshotFilesFollowTheContract) {
  TempDir dir;
  const Scenario s = small_fig1();
  const ScenarioResult r = run_scenario(s, dir.path());
  ASSERT_EQ(r.trajectory.termination, Termination::completed);
  std::size_t csv = 0;
  for (const auto& e : fs::directory_iterator(dir.path())) csv += e.path().extension() == ".csv";
  EXPECT_EQ(csv, 1 + s.snapshot_times.size());

  const std::string body = slurp(dir.path() / "snapshot_0002.csv");
  EXPECT_EQ(body.rfind("t,eta,x,u,psi_eta\n", 0), 0u);
  EXPECT_EQ(body.find('\r'), std::string::npos);
  std::istringstream lines(body);
  std::string line;
  std::getline(lines, line);
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 4);
    if (rows == 1) {
      EXPECT_EQ(line.rfind("0.10000000000000001,", 0), 0u) << line;  // t = 0.1 at 17 digits
    }
  }
  EXPECT_EQ(rows, s.mesh.n - 2);
}

TEST(Output, RerunsAreByteIdentical) {
  TempDir a, b;
  const Scenario s = small_fig1();
  run_scenario(s, a.path());
  run_scenario(s, b.path());
  run_scenario(s, b.path());  // overwrite in place
  for (std::size_t i = 0; i <= s.snapshot_times.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%04zu.csv", i);
    EXPECT_EQ(slurp(a.path() / name), slurp(b.path() / name)) << name;
  }
  EXPECT_EQ(slurp(a.path() / "metrics.ndjson"), slurp(b.path() / "metrics.ndjson"));
}

TEST(Output, ManifestRoundTrip) {
  TempDir dir;
  Scenario s = small_fig1();
  s.params.dt_max = 1e-3;
  run_scenario(s, dir.path(), {}, "note");
  const auto manifest = nlohmann::json::parse(slurp(dir.path() / "manifest.json"));
  EXPECT_EQ(load_config(manifest.at("config").dump()), s);
  EXPECT_EQ(manifest.at("version"), std::string(version()));
  EXPECT_EQ(manifest.at("termination"), "completed");
  EXPECT_EQ(manifest.at("notes"), "note");
  EXPECT_TRUE(manifest.contains("started"));
  EXPECT_TRUE(manifest.contains("finished"));
  EXPECT_GT(manifest.at("steps").get<std::size_t>(), 0u);
  EXPECT_EQ(manifest.at("snapshots").size(), 1 + s.snapshot_times.size());
  EXPECT_EQ(manifest.at("config").at("dt_max"), 1e-3);
}

TEST(Output, StaleOutputsAreReplacedOtherFilesKept) {
  TempDir dir;
  std::ofstream(dir.path() / "snapshot_0099.csv") << "stale";
  std::ofstream(dir.path() / "keep.txt") << "mine";
  run_scenario(small_fig1(), dir.path());
  EXPECT_FALSE(fs::exists(dir.path() / "snapshot_0099.csv"));
  EXPECT_TRUE(fs::exists(dir.path() / "keep.txt"));
}

TEST(Output, InterruptedRunKeepsPartialOutputs) {
  TempDir dir;
  RunOptions opts;
  opts.max_steps = 10;
  const ScenarioResult r = run_scenario(small_fig1(), dir.path(), opts);
  EXPECT_EQ(r.trajectory.termination, Termination::step_limit);
  EXPECT_TRUE(fs::exists(dir.path() / "snapshot_0000.csv"));
  const auto manifest = nlohmann::json::parse(slurp(dir.path() / "manifest.json"));
  EXPECT_EQ(manifest.at("termination"), "step_limit");
  EXPECT_FALSE(manifest.at("message").get<std::string>().empty());
}

TEST(Output, HeatRunReportsNodeAverageErrorAgainstHeatKernel) {
  TempDir dir;
  Scenario s = figure_preset("fig6", 50).runs.front();
  s.t_end = 1.0;
  s.snapshot_times = {0.25, 0.5, 1.0};
  run_scenario(s, dir.path());
  std::istringstream lines(slurp(dir.path() / "metrics.ndjson"));
  std::string line;
  std::vector<nlohmann::json> rows;
  while (std::getline(lines, line)) rows.push_back(nlohmann::json::parse(line));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_TRUE(rows[0].at("l1_paper").is_null());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_TRUE(rows[i].at("l1_paper").is_number());
    EXPECT_GT(rows[i].at("l1_paper").get<double>(), 0.0);
  }
}

TEST(Output, MetricsKeyOrder) {
  MetricsRecord r;
  r.t = 1.5;
  r.l1_paper = 0.25;
  const std::string line = metrics_json_line(r);
  EXPECT_EQ(line,
            R"({"t":1.5,"l1_paper":0.25,"l1_quadrature":null,"support_left":0.0,"support_right":0.0,"u_max":0.0,)"
            R"("max_interior_abs_psi_eta":0.0,"liftoff_left":0.0,"liftoff_right":0.0,"w_max":0.0})");
}

TEST(Rates, ScenarioAndWindowChecks) {
  const Scenario s = rate_scenario(2.0, 100, 50.0, {5.0, 50.0});
  EXPECT_EQ(*s.reference, "barenblatt");
  EXPECT_EQ(s.snapshot_times.back(), 50.0);
  EXPECT_EQ(*rate_scenario(1.0, 100, 50.0, {5.0, 50.0}).reference, "selfsim_heat");
  EXPECT_THROW(rate_scenario(2.0, 100, 10.0, {5.0, 50.0}), std::invalid_argument);
  EXPECT_THROW(rate_scenario(2.0, 100, 10.0, {0.0, 5.0}), std::invalid_argument);
}

TEST(Rates, ShortStudyProducesAFit) {
  const RateStudy study = rate_study(2.0, 40, 4.0, {1.0, 4.0});
  EXPECT_EQ(study.termination, Termination::completed);
  EXPECT_GE(study.fit.points, 3u);
  EXPECT_LT(study.fit.slope, 0.0);
}

#include <gtest/gtest.h>

#include <string>

#include "fluxlag/errors.hpp"
#include "fluxlag/experiments.hpp"
#include "fluxlag/scenario.hpp"

using namespace fluxlag;

namespace {

std::string error_path(const std::string& doc) {
  try {
    load_config(doc);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<no error>";
}

std::string error_text(const std::string& doc) {
  try {
    load_config(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "<no error>";
}

const char* kMinimal = R"({"name": "probe", "initial": {"preset": "indicator"}, "t_end": 1})";

}  // namespace

TEST(Scenario, MinimalDocumentTakesDefaults) {
  const Scenario s = load_config(kMinimal);
  EXPECT_EQ(s.name, "probe");
  EXPECT_EQ(s.params.m, 1.0);
  EXPECT_EQ(s.params.nu, 1.0);
  EXPECT_EQ(s.params.alpha_cfl, 8.0);
  EXPECT_EQ(s.params.cfl_rule, CflRule::global);
  EXPECT_FALSE(s.params.dt_max.has_value());
  EXPECT_EQ(s.mesh.kind, MeshSpec::Kind::uniform);
  EXPECT_EQ(s.mesh.n, 1000u);
  EXPECT_EQ(s.initial.preset, "indicator");
  EXPECT_TRUE(s.snapshot_times.empty());
  EXPECT_FALSE(s.reference.has_value());
}

TEST(Scenario, FullDocument) {
  const Scenario s = load_config(R"({
    "name": "full", "m": 2, "nu": 3.5, "alpha_cfl": 10, "cfl_rule": "local", "dt_max": 1e-3,
    "mesh": {"kind": "graded", "n": 200, "focus": [-0.5, 0.5], "ratio": 1.01},
    "initial": {"preset": "triangle", "params": {"center": 0.25, "half_width": 2}},
    "t_end": 2, "snapshot_times": [0.5, 1, 2], "reference": "barenblatt", "output_dir": "x/y"})");
  EXPECT_EQ(s.params.m, 2.0);
  EXPECT_EQ(s.params.nu, 3.5);
  EXPECT_EQ(s.params.cfl_rule, CflRule::local);
  EXPECT_EQ(*s.params.dt_max, 1e-3);
  EXPECT_EQ(s.mesh.kind, MeshSpec::Kind::graded);
  EXPECT_EQ(s.mesh.focus.size(), 2u);
  EXPECT_EQ(s.initial.center, 0.25);
  EXPECT_EQ(s.initial.half_width, 2.0);
  EXPECT_EQ(*s.reference, "barenblatt");
  EXPECT_EQ(s.output_dir, "x/y");
  EXPECT_EQ(load_config(to_json(s).dump()), s);
}

TEST(Scenario, AlphaCflMustExceedTwo) {
  EXPECT_EQ(error_path(R"({"name": "a", "alpha_cfl": 2, "initial": {"preset": "indicator"}, "t_end": 1})"),
            "/alpha_cfl");
  EXPECT_NO_THROW(load_config(R"({"name": "a", "alpha_cfl": 2.5, "initial": {"preset": "indicator"}, "t_end": 1})"));
}

TEST(Scenario, UnknownKeysAreRejectedWithTheirPath) {
  const std::string top = error_text(R"({"name": "a", "dx": 0.1, "initial": {"preset": "indicator"}, "t_end": 1})");
  EXPECT_NE(top.find("dx"), std::string::npos);
  EXPECT_EQ(error_path(R"({"name": "a", "dx": 0.1, "initial": {"preset": "indicator"}, "t_end": 1})"), "/dx");
  EXPECT_EQ(error_path(R"({"name": "a", "mesh": {"n": 10, "h": 1}, "initial": {"preset": "indicator"}, "t_end": 1})"),
            "/mesh/h");
  EXPECT_EQ(error_path(R"({"name": "a", "initial": {"preset": "indicator", "params": {"c": 1}}, "t_end": 1})"),
            "/initial/params/c");
  EXPECT_EQ(error_path(R"({"name": "a", "initial": {"preset": "composite_step", "params": {"a": 1}}, "t_end": 1})"),
            "/initial/params/a");
}

TEST(Scenario, SchemaViolationsCarryPaths) {
  EXPECT_EQ(error_path(R"({"initial": {"preset": "indicator"}, "t_end": 1})"), "/name");
  EXPECT_EQ(error_path(R"({"name": "", "initial": {"preset": "indicator"}, "t_end": 1})"), "/name");
  EXPECT_EQ(error_path(R"({"name": "a", "m": "two", "initial": {"preset": "indicator"}, "t_end": 1})"), "/m");
  EXPECT_EQ(error_path(R"({"name": "a", "m": 0.5, "initial": {"preset": "indicator"}, "t_end": 1})"), "/m");
  EXPECT_EQ(error_path(R"({"name": "a", "nu": 0, "initial": {"preset": "indicator"}, "t_end": 1})"), "/nu");
  EXPECT_EQ(error_path(R"({"name": "a", "mesh": {"n": 11}, "initial": {"preset": "indicator"}, "t_end": 1})"),
            "/mesh");
  EXPECT_EQ(error_path(R"({"name": "a", "mesh": {"n": 10.5}, "initial": {"preset": "indicator"}, "t_end": 1})"),
            "/mesh/n");
  EXPECT_EQ(error_path(R"({"name": "a", "mesh": {"kind": "random"}, "initial": {"preset": "indicator"}, "t_end": 1})"),
            "/mesh/kind");
  EXPECT_EQ(error_path(R"({"name": "a", "mesh": {"kind": "graded", "ratio": 1.1}, "initial": {"preset": "indicator"},
                          "t_end": 1})"),
            "/mesh/focus");
  EXPECT_EQ(error_path(R"({"name": "a", "mesh": {"focus": [0.5]}, "initial": {"preset": "indicator"}, "t_end": 1})"),
            "/mesh/focus");
  EXPECT_EQ(error_path(R"({"name": "a", "initial": {"preset": "gaussian"}, "t_end": 1})"), "/initial/preset");
  EXPECT_EQ(error_path(R"({"name": "a", "initial": {"preset": "indicator"}})"), "/t_end");
  EXPECT_EQ(error_path(R"({"name": "a", "initial": {"preset": "indicator"}, "t_end": -1})"), "/t_end");
  EXPECT_EQ(error_path(R"({"name": "a", "initial": {"preset": "indicator"}, "t_end": 1, "snapshot_times": [0.5, 2]})"),
            "/snapshot_times/1");
  EXPECT_EQ(error_path(R"({"name": "a", "initial": {"preset": "indicator"}, "t_end": 1, "snapshot_times": [0.5, 0.5]})"),
            "/snapshot_times/1");
  EXPECT_EQ(error_path(R"({"name": "a", "initial": {"preset": "indicator"}, "t_end": 1, "snapshot_times": [0.5, "x"]})"),
            "/snapshot_times/1");
  EXPECT_EQ(error_path(R"({"name": "a", "initial": {"preset": "indicator"}, "t_end": 1, "reference": "gauss"})"),
            "/reference");
  EXPECT_EQ(error_path(R"({"name": "a", "initial": {"preset": "indicator"}, "t_end": 1, "reference": "barenblatt"})"),
            "/reference");
  EXPECT_EQ(error_path(R"({"name": "a", "initial": {"preset": "indicator", "params": {"a": 1, "b": 0}}, "t_end": 1})"),
            "/initial");
  EXPECT_EQ(error_path(R"({"name": "a", "cfl_rule": "adaptive", "initial": {"preset": "indicator"}, "t_end": 1})"),
            "/cfl_rule");
  EXPECT_EQ(error_path(R"({"name": "a", "dt_max": 0, "initial": {"preset": "indicator"}, "t_end": 1})"), "/dt_max");
  EXPECT_EQ(error_path(R"([1, 2])"), "");
  EXPECT_EQ(error_path(R"({"name": )"), "");
}

TEST(Scenario, PiecewiseDocument) {
  const char* doc = R"({"name": "pw", "m": 1, "mesh": {"n": 100},
    "initial": {"preset": "piecewise", "params": {"breakpoints": [-1, 0, 1], "coefficients": [[0.75, 0, -0.75], [0.75, 0, -0.75]]}},
    "t_end": 0.1})";
  const Scenario s = load_config(doc);
  ASSERT_EQ(s.initial.coefficients.size(), 2u);
  EXPECT_EQ(s.initial.coefficients[1][2], -0.75);
  EXPECT_NEAR(s.initial.build()(0.0), 0.75, 1e-15);
  EXPECT_EQ(load_config(to_json(s).dump()), s);
  EXPECT_EQ(error_path(R"({"name": "pw", "initial": {"preset": "piecewise", "params": {"breakpoints": [0, 1]}}, "t_end": 1})"),
            "/initial/params/coefficients");
  EXPECT_EQ(error_path(R"({"name": "pw", "initial": {"preset": "piecewise", "params": {"breakpoints": [0, 1],
                          "coefficients": [[1, 0, 0, 0]]}}, "t_end": 1})"),
            "/initial/params/coefficients/0");
}

TEST(Scenario, EveryPresetRoundTripsThroughJson) {
  for (const auto& id : figure_ids()) {
    for (const Scenario& s : figure_preset(id).runs) {
      EXPECT_EQ(load_config(to_json(s).dump()), s) << s.name;
    }
  }
}

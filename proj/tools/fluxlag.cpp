// Command-line front end: run scenario files, figure presets, rate studies
// and the nu sweep.
//
// Exit status: 0 success, 1 configuration or usage error, 2 solver failure
// (outputs and manifest still written), 3 I/O failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fluxlag/errors.hpp"
#include "fluxlag/experiments.hpp"

namespace fs = std::filesystem;
using namespace fluxlag;

namespace {

constexpr int kConfigError = 1;
constexpr int kSolverError = 2;
constexpr int kIoError = 3;

struct Failure {
  int code;
  std::string message;
};

fs::path output_root() {
  const char* env = std::getenv("FLUXLAG_OUT");
  return env && *env ? fs::path(env) : fs::path("out");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kConfigError, "cannot read config file '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Scenario load_file(const std::string& path) {
  try {
    return load_config(read_text(path));
  } catch (const ConfigError& e) {
    throw Failure{kConfigError, path + ": " + e.what()};
  }
}

// Runs, persists and reports one scenario.
ScenarioResult execute(const Scenario& scenario, const fs::path& dir, const std::string& notes) {
  ScenarioResult result;
  try {
    result = run_scenario(scenario, dir, {}, notes);
  } catch (const fs::filesystem_error& e) {
    throw Failure{kIoError, e.what()};
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const ConfigError*>(&e)) throw Failure{kConfigError, e.what()};
    throw Failure{kIoError, e.what()};
  }
  const Trajectory& traj = result.trajectory;
  std::printf("%s: %s after %zu steps (%.2f s), %zu snapshots -> %s\n", scenario.name.c_str(),
              to_string(traj.termination).c_str(), traj.steps, result.wall_seconds, traj.snapshots.size(),
              dir.string().c_str());
  if (traj.termination != Termination::completed) {
    std::fprintf(stderr, "%s: %s\n", scenario.name.c_str(), traj.message.c_str());
  }
  return result;
}

bool completed(const ScenarioResult& result) { return result.trajectory.termination == Termination::completed; }

fs::path resolve(const std::string& out_flag, const fs::path& fallback) {
  return out_flag.empty() ? fallback : fs::path(out_flag);
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw Failure{kConfigError, std::string(flag) + ": '" + item + "' is not a number"};
    }
  }
  if (out.empty()) throw Failure{kConfigError, std::string(flag) + ": empty list"};
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lagrangian particle solver for the relativistic heat and porous-medium flux-limited equations"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));

  std::string config_path;
  std::string out_dir;

  auto* run_cmd = app.add_subcommand("run", "Run a scenario document");
  run_cmd->add_option("--config", config_path, "Scenario JSON file")->required();
  run_cmd->add_option("--out", out_dir, "Output directory (default: config output_dir under the output root)");

  std::string figure_id;
  std::size_t figure_n = 0;
  auto* fig_cmd = app.add_subcommand("figure", "Run a figure preset (fig1 .. fig9)");
  fig_cmd->add_option("id", figure_id, "Figure id")->required();
  fig_cmd->add_option("--n", figure_n, "Node count override for every run (0: preset default)");
  fig_cmd->add_option("--out", out_dir, "Output directory (default: <root>/<id>)");

  double rate_m = 2.0;
  std::size_t rate_n = 100;
  double rate_t_end = 50.0;
  std::string rate_window;
  auto* rates_cmd = app.add_subcommand("rates", "Fit the L1 convergence rate for the indicator datum");
  rates_cmd->add_option("--m", rate_m, "Nonlinearity exponent");
  rates_cmd->add_option("--n", rate_n, "Node count");
  rates_cmd->add_option("--t-end", rate_t_end, "Final time");
  rates_cmd->add_option("--window", rate_window, "Fit window a,b (default: t_end/10,t_end)");
  rates_cmd->add_option("--out", out_dir, "Also persist the run to this directory");

  std::string nu_values = "1,10,100";
  double nu_t = 1.0;
  std::size_t nu_n = 200;
  auto* sweep_cmd = app.add_subcommand("sweep-nu", "Indicator datum for several nu, compared with u_hom");
  sweep_cmd->add_option("--values", nu_values, "Comma-separated nu values");
  sweep_cmd->add_option("--t", nu_t, "Final time");
  sweep_cmd->add_option("--n", nu_n, "Node count");
  sweep_cmd->add_option("--out", out_dir, "Output directory (default: <root>/sweep-nu)");

  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario document without running it");
  validate_cmd->add_option("--config", config_path, "Scenario JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  }

  try {
    bool ok = true;
    if (*validate_cmd) {
      const Scenario s = load_file(config_path);
      std::printf("%s: valid\n", s.name.c_str());
    } else if (*run_cmd) {
      const Scenario s = load_file(config_path);
      fs::path fallback = s.output_dir.empty() ? output_root() / s.name : fs::path(s.output_dir);
      if (fallback.is_relative() && !s.output_dir.empty()) fallback = output_root() / fallback;
      ok = completed(execute(s, resolve(out_dir, fallback), {}));
    } else if (*fig_cmd) {
      FigurePreset preset;
      try {
        preset = figure_preset(figure_id, figure_n ? std::optional<std::size_t>(figure_n) : std::nullopt);
      } catch (const std::invalid_argument& e) {
        throw Failure{kConfigError, e.what()};
      }
      const fs::path dir = resolve(out_dir, output_root() / figure_id);
      for (const Scenario& s : preset.runs) {
        // Run directories are "<id>" or "<id>/<tag>"; keep the tag.
        fs::path sub = fs::path(s.output_dir).lexically_relative(figure_id);
        ok = completed(execute(s, sub == "." ? dir : dir / sub, preset.notes)) && ok;
      }
    } else if (*rates_cmd) {
      std::pair<double, double> window{rate_t_end / 10.0, rate_t_end};
      if (!rate_window.empty()) {
        const auto w = parse_list(rate_window, "--window");
        if (w.size() != 2) throw Failure{kConfigError, "--window: expected two values a,b"};
        window = {w[0], w[1]};
      }
      Scenario s;
      try {
        s = rate_scenario(rate_m, rate_n, rate_t_end, window);
      } catch (const std::invalid_argument& e) {
        throw Failure{kConfigError, e.what()};
      } catch (const ConfigError& e) {
        throw Failure{kConfigError, e.what()};
      }
      const ScenarioResult result = out_dir.empty() ? simulate(s) : execute(s, out_dir, "rate study");
      if (result.trajectory.termination != Termination::completed) {
        throw Failure{kSolverError, result.trajectory.message};
      }
      std::vector<std::pair<double, double>> series;
      for (const auto& rec : result.metrics) {
        if (!rec.l1_paper) continue;
        series.emplace_back(rec.t, *rec.l1_paper);
        std::printf("t=%.6g l1_paper=%.6g\n", rec.t, *rec.l1_paper);
      }
      const RateFit fit = rate_fit(series, window.first, window.second);
      std::printf("points=%zu window=%g,%g\n", fit.points, window.first, window.second);
      std::printf("slope=%.6f\n", fit.slope);
    } else if (*sweep_cmd) {
      const auto values = parse_list(nu_values, "--values");
      std::vector<Scenario> runs;
      try {
        runs = sweep_nu_scenarios(values, nu_t, nu_n);
        for (const auto& s : runs) s.validate();
      } catch (const ConfigError& e) {
        throw Failure{kConfigError, e.what()};
      } catch (const std::invalid_argument& e) {
        throw Failure{kConfigError, e.what()};
      }
      const fs::path dir = resolve(out_dir, output_root() / "sweep-nu");
      for (const Scenario& s : runs) {
        ok = completed(execute(s, dir / fs::path(s.output_dir).filename(), "nu sweep")) && ok;
      }
    }
    return ok ? 0 : kSolverError;
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return f.code;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIoError;
  }
}

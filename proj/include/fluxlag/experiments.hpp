#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fluxlag/dynamics.hpp"
#include "fluxlag/metrics.hpp"
#include "fluxlag/scenario.hpp"

namespace fluxlag {

std::string_view version() noexcept;

/// A figure preset: one or more scenarios plus a note on the chosen times
/// and meshes, which is copied into every manifest.
struct FigurePreset {
  std::string id;
  std::string notes;
  std::vector<Scenario> runs;
};

/// fig1 .. fig9. `n` overrides the node count of every run. Output
/// directories are relative ("fig4/m1"); callers prefix an output root.
/// Throws std::invalid_argument for an unknown id.
FigurePreset figure_preset(const std::string& id, std::optional<std::size_t> n = std::nullopt);
std::vector<std::string> figure_ids();

struct ScenarioResult {
  Trajectory trajectory;
  std::vector<MetricsRecord> metrics;  // one per snapshot
  double wall_seconds = 0.0;
};

/// Run a scenario in memory, without touching the file system.
ScenarioResult simulate(const Scenario& scenario, const RunOptions& options = {});

/// Run and persist: snapshot_NNNN.csv per snapshot, metrics.ndjson and
/// manifest.json in `dir` (created if missing). Earlier outputs of the same
/// names are removed first. Solver failures are recorded in the manifest
/// and leave the partial outputs in place; I/O failures throw.
ScenarioResult run_scenario(const Scenario& scenario, const std::filesystem::path& dir,
                            const RunOptions& options = {}, const std::string& notes = {});

/// Snapshot file body: header `t,eta,x,u,psi_eta`, one row per interior
/// node, 17 significant digits, LF line endings.
std::string snapshot_csv(const PseudoInverseState& state);
/// One NDJSON line (without the newline); absent errors are written as null.
std::string metrics_json_line(const MetricsRecord& record);

/// Convergence-rate experiment: indicator datum, uniform mesh, l1_paper
/// against the self-similar profile for m, fitted over `window`.
struct RateStudy {
  Scenario scenario;
  std::vector<std::pair<double, double>> series;  // (t, l1_paper)
  RateFit fit;
  Termination termination = Termination::completed;
  std::string message;
};
Scenario rate_scenario(double m, std::size_t n, double t_end, std::pair<double, double> window);
RateStudy rate_study(double m, std::size_t n, double t_end, std::pair<double, double> window);

/// fig9-style runs (indicator datum, m = 1, reference u_hom), one per nu.
std::vector<Scenario> sweep_nu_scenarios(const std::vector<double>& values, double t, std::size_t n = 200);

/// n log-spaced times from lo to hi inclusive.
std::vector<double> log_times(double lo, double hi, std::size_t n);

}  // namespace fluxlag

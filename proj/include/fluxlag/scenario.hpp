#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fluxlag/density.hpp"
#include "fluxlag/dynamics.hpp"
#include "fluxlag/mesh.hpp"

namespace fluxlag {

/// Initial-density section of a scenario: a preset name and its parameters.
/// Only the fields belonging to `preset` are read or written.
struct InitialSpec {
  std::string preset = "indicator";
  double a = -0.5;  // indicator
  double b = 0.5;
  double center = 0.0;  // triangle
  double half_width = 1.0;
  std::vector<double> breakpoints;  // piecewise
  std::vector<std::array<double, 3>> coefficients;

  InitialDensity build() const;
  bool operator==(const InitialSpec&) const = default;
};

/// One simulation job. Defaults follow the documented scheme defaults
/// (m = 1, nu = 1, alpha_cfl = 8).
struct Scenario {
  std::string name;
  SchemeParams params;
  MeshSpec mesh;
  InitialSpec initial;
  double t_end = 0.0;
  std::vector<double> snapshot_times;
  std::optional<std::string> reference;
  std::string output_dir;

  /// Throws ConfigError (with a JSON-pointer path) on any invariant violation.
  void validate() const;
  bool operator==(const Scenario&) const = default;
};

/// Parse and validate a scenario document. The schema is closed:
///
///   name (str, required), m (>= 1), nu (> 0), alpha_cfl (> 2),
///   cfl_rule ("global" | "local"), dt_max (> 0),
///   mesh {kind, n, focus, ratio}, initial {preset, params},
///   t_end (>= 0, required), snapshot_times, reference (str | null),
///   output_dir (str).
///
/// Every failure is a ConfigError whose path points at the offending value.
Scenario load_config(std::string_view document);

/// Canonical document for a scenario; load_config(to_json(s).dump()) == s.
nlohmann::ordered_json to_json(const Scenario& scenario);

}  // namespace fluxlag

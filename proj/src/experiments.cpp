#include "fluxlag/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <memory>
#include <regex>
#include <stdexcept>

#include "fluxlag/reference.hpp"

namespace fluxlag {

namespace {

namespace fs = std::filesystem;

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string utc_timestamp(std::chrono::system_clock::time_point tp) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << body;
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void remove_stale_outputs(const fs::path& dir) {
  static const std::regex snapshot_name(R"(snapshot_\d{4}\.csv)");
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name == "metrics.ndjson" || name == "manifest.json" || std::regex_match(name, snapshot_name)) {
      fs::remove(entry.path());
    }
  }
}

std::string snapshot_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snapshot_%04zu.csv", index);
  return buf;
}

Scenario base(const std::string& name, const std::string& preset, double m, std::size_t n) {
  Scenario s;
  s.name = name;
  s.output_dir = name;
  s.initial.preset = preset;
  s.params.m = m;
  s.mesh.n = n;
  return s;
}

// Geometric grading toward the given focus points. The ratio is tied to the
// node count so that the coarsest-to-finest spacing contrast does not depend
// on N.
void grade(Scenario& s, std::vector<double> focus) {
  s.mesh.kind = MeshSpec::Kind::graded;
  s.mesh.focus = std::move(focus);
  s.mesh.ratio = std::pow(1.005, 1000.0 / static_cast<double>(s.mesh.n));
  s.params.cfl_rule = CflRule::local;
}

// count equally spaced times in (0, t_end].
std::vector<double> even_times(double t_end, int count) {
  std::vector<double> out;
  for (int k = 1; k <= count; ++k) out.push_back(t_end * k / count);
  return out;
}

}  // namespace

std::string_view version() noexcept { return FLUXLAG_VERSION; }

std::vector<double> log_times(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) throw std::invalid_argument("log_times needs 0 < lo < hi and n >= 2");
  std::vector<double> out(n);
  const double step = std::log(hi / lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo * std::exp(step * static_cast<double>(i));
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<std::string> figure_ids() {
  return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9"};
}

FigurePreset figure_preset(const std::string& id, std::optional<std::size_t> n_override) {
  FigurePreset p;
  p.id = id;
  const std::vector<double> ends{-0.5, 0.5};
  const std::vector<double> ends_and_jumps{-0.5, -0.375, 0.375, 0.5};
  auto n_or = [&](std::size_t n) { return n_override.value_or(n); };

  if (id == "fig1") {
    Scenario s = base("fig1", "triangle", 1.0, n_or(1000));
    s.t_end = 1.0;
    s.snapshot_times = {0.05, 0.1, 0.2, 0.4, 0.7, 1.0};
    p.runs.push_back(s);
    p.notes = "m = 1, hat datum; supports should advance at unit speed.";
  } else if (id == "fig2") {
    Scenario s = base("fig2", "triangle", 1.5, n_or(1000));
    grade(s, ends);
    s.t_end = 0.6;
    s.snapshot_times = {0.02, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.4, 0.5, 0.6};
    p.runs.push_back(s);
    p.notes =
        "m = 1.5 from the hat datum, whose density vanishes like a square root in mass at the edges. "
        "Snapshots bracket the boundary lift-off (roughly t = 0.2 at N = 1000).";
  } else if (id == "fig3") {
    Scenario s = base("fig3", "triangle", 3.0, n_or(1000));
    grade(s, ends);
    s.t_end = 1.2;
    s.snapshot_times = {0.2, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2};
    p.runs.push_back(s);
    p.notes =
        "m = 3 from the hat datum. A jump forms inside the support (t ~ 0.5), travels to the tip "
        "(t ~ 1.05) and the support then starts to move.";
  } else if (id == "fig4") {
    for (double m : {1.0, 4.0}) {
      const std::string tag = m == 1.0 ? "m1" : "m4";
      Scenario s = base("fig4_" + tag, "composite_sqrt", m, n_or(1000));
      s.output_dir = "fig4/" + tag;
      grade(s, ends_and_jumps);
      s.t_end = m == 1.0 ? 1.0 : 0.5;
      s.snapshot_times = m == 1.0 ? std::vector<double>{0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0}
                                  : std::vector<double>{0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5};
      p.runs.push_back(s);
    }
    p.notes =
        "Square-root bump on a plateau: vertical tangents at x = +-1/2. Nodes concentrate at the mass "
        "edges and at the mass images of x = +-1/2 (eta = +-3/8).";
  } else if (id == "fig5") {
    for (double m : {1.0, 2.0}) {
      const std::string tag = m == 1.0 ? "m1" : "m2";
      Scenario s = base("fig5_" + tag, "composite_step", m, n_or(1000));
      s.output_dir = "fig5/" + tag;
      s.t_end = 0.5;
      s.snapshot_times = even_times(0.5, 20);
      p.runs.push_back(s);
    }
    p.notes =
        "Piecewise-constant datum with jumps at x = +-1/2. Uniform mesh: for m > 1 the jump travels "
        "through the mass mesh and a graded mesh would mix the jump size with the local spacing in "
        "the |psi_eta| indicator. Equal snapshot spacing gives matched times across m.";
  } else if (id == "fig6" || id == "fig7" || id == "fig8") {
    const double m = id == "fig6" ? 1.0 : id == "fig7" ? 2.0 : 10.0;
    Scenario s = base(id, "indicator", m, n_or(100));
    s.reference = m == 1.0 ? "selfsim_heat" : "barenblatt";
    s.t_end = 50.0;
    s.snapshot_times = log_times(0.05, 50.0, 40);
    p.runs.push_back(s);
    if (id == "fig6") {
      Scenario fine = s;
      fine.name = "fig6_n1000";
      fine.output_dir = "fig6/n1000";
      fine.mesh.n = n_or(1000);
      p.runs.front().output_dir = "fig6/n100";
      p.runs.push_back(fine);
    }
    p.notes = "Indicator datum; l1_paper against the self-similar profile, rate fitted on t in [5, 50].";
  } else if (id == "fig9") {
    p.runs = sweep_nu_scenarios({1.0, 10.0, 100.0}, 1.0, n_or(200));
    p.notes = "Indicator datum, m = 1; l1_quadrature against u_hom should fall as nu grows.";
  } else {
    throw std::invalid_argument("unknown figure id '" + id + "' (expected fig1 .. fig9)");
  }
  for (auto& run : p.runs) run.validate();
  return p;
}

std::vector<Scenario> sweep_nu_scenarios(const std::vector<double>& values, double t, std::size_t n) {
  std::vector<Scenario> runs;
  for (double nu : values) {
    char tag[64];
    std::snprintf(tag, sizeof tag, "nu%g", nu);
    Scenario s = base(std::string("fig9_") + tag, "indicator", 1.0, n);
    s.output_dir = std::string("fig9/") + tag;
    s.params.nu = nu;
    s.reference = "u_hom";
    s.t_end = t;
    s.snapshot_times = {0.25 * t, 0.5 * t, 0.75 * t, t};
    runs.push_back(s);
  }
  return runs;
}

ScenarioResult simulate(const Scenario& scenario, const RunOptions& options) {
  scenario.validate();
  const auto start = std::chrono::steady_clock::now();
  auto mesh = std::make_shared<const MassMesh>(scenario.mesh.build());
  const InitialDensity density = scenario.initial.build();
  PseudoInverseState state = init_pseudo_inverse(density, mesh);

  ScenarioResult result;
  result.trajectory = run(std::move(state), scenario.params, Schedule{scenario.snapshot_times, scenario.t_end}, options);
  std::optional<ReferenceProfile> ref;
  if (scenario.reference) ref = ReferenceProfile::from_name(*scenario.reference, scenario.params.m);
  for (const auto& snap : result.trajectory.snapshots) {
    result.metrics.push_back(compute_metrics(snap, scenario.params, ref ? &*ref : nullptr));
  }
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string snapshot_csv(const PseudoInverseState& state) {
  const DensitySample s = reconstruct(state);
  std::string out = "t,eta,x,u,psi_eta\n";
  const std::string t = format_number(s.t);
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    out += t;
    for (double v : {s.eta[i], s.x[i], s.u[i], s.psi_eta[i]}) {
      out += ',';
      out += format_number(v);
    }
    out += '\n';
  }
  return out;
}

std::string metrics_json_line(const MetricsRecord& r) {
  nlohmann::ordered_json j;
  j["t"] = r.t;
  j["l1_paper"] = r.l1_paper ? nlohmann::ordered_json(*r.l1_paper) : nlohmann::ordered_json(nullptr);
  j["l1_quadrature"] = r.l1_quadrature ? nlohmann::ordered_json(*r.l1_quadrature) : nlohmann::ordered_json(nullptr);
  j["support_left"] = r.support_left;
  j["support_right"] = r.support_right;
  j["u_max"] = r.u_max;
  j["max_interior_abs_psi_eta"] = r.max_interior_abs_psi_eta;
  j["liftoff_left"] = r.liftoff_left;
  j["liftoff_right"] = r.liftoff_right;
  j["w_max"] = r.w_max;
  return j.dump();
}

ScenarioResult run_scenario(const Scenario& scenario, const fs::path& dir, const RunOptions& options,
                            const std::string& notes) {
  scenario.validate();
  fs::create_directories(dir);
  remove_stale_outputs(dir);

  const auto started = std::chrono::system_clock::now();
  ScenarioResult result = simulate(scenario, options);
  const auto finished = std::chrono::system_clock::now();

  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  std::string metrics;
  for (std::size_t i = 0; i < result.trajectory.snapshots.size(); ++i) {
    const auto& snap = result.trajectory.snapshots[i];
    const std::string name = snapshot_name(i);
    write_file(dir / name, snapshot_csv(snap));
    files.push_back({{"file", name}, {"t", snap.t}});
    metrics += metrics_json_line(result.metrics[i]);
    metrics += '\n';
  }
  write_file(dir / "metrics.ndjson", metrics);

  nlohmann::ordered_json manifest;
  manifest["config"] = to_json(scenario);
  manifest["version"] = std::string(version());
  manifest["started"] = utc_timestamp(started);
  manifest["finished"] = utc_timestamp(finished);
  manifest["wall_seconds"] = result.wall_seconds;
  manifest["termination"] = to_string(result.trajectory.termination);
  manifest["message"] = result.trajectory.message;
  manifest["steps"] = result.trajectory.steps;
  manifest["snapshots"] = files;
  manifest["constants"] = {{"psi_eta_cap", scenario.params.psi_eta_cap},
                           {"argmax_tie_tolerance", 1e-12},
                           {"csv_significant_digits", 17}};
  manifest["notes"] = notes;
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  return result;
}

Scenario rate_scenario(double m, std::size_t n, double t_end, std::pair<double, double> window) {
  if (!(window.first > 0.0) || !(window.second > window.first) || window.second > t_end) {
    throw std::invalid_argument("rate window must satisfy 0 < a < b <= t_end");
  }
  char tag[64];
  std::snprintf(tag, sizeof tag, "rates_m%g_n%zu", m, n);
  Scenario s = base(tag, "indicator", m, n);
  s.reference = m == 1.0 ? "selfsim_heat" : "barenblatt";
  s.t_end = t_end;
  std::vector<double> times = log_times(std::min(0.05, window.first / 2.0), window.first, 10);
  const std::vector<double> inside = log_times(window.first, window.second, 25);
  times.insert(times.end(), inside.begin() + 1, inside.end());
  if (window.second < t_end) times.push_back(t_end);
  s.snapshot_times = times;
  s.validate();
  return s;
}

RateStudy rate_study(double m, std::size_t n, double t_end, std::pair<double, double> window) {
  RateStudy study;
  study.scenario = rate_scenario(m, n, t_end, window);
  const ScenarioResult result = simulate(study.scenario);
  for (const auto& rec : result.metrics) {
    if (rec.l1_paper) study.series.emplace_back(rec.t, *rec.l1_paper);
  }
  study.termination = result.trajectory.termination;
  study.message = result.trajectory.message;
  study.fit = rate_fit(study.series, window.first, window.second);
  return study;
}

}  // namespace fluxlag

#include "fluxlag/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <set>
#include <stdexcept>

#include "fluxlag/errors.hpp"
#include "fluxlag/reference.hpp"

namespace fluxlag {

namespace {

using Json = nlohmann::json;

void require_keys(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  const std::set<std::string> known(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key)) throw ConfigError(path + "/" + key, "unknown key '" + key + "'");
  }
}

const Json& object_at(const Json& parent, const char* key, const std::string& path) {
  const Json& v = parent.at(key);
  if (!v.is_object()) throw ConfigError(path, "must be an object");
  return v;
}

double number(const Json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "must be finite");
  return x;
}

std::string text(const Json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "must be a string");
  return v.get<std::string>();
}

std::vector<double> numbers(const Json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], path + "/" + std::to_string(i)));
  return out;
}

MeshSpec parse_mesh(const Json& obj) {
  const std::string path = "/mesh";
  require_keys(obj, path, {"kind", "n", "focus", "ratio"});
  MeshSpec mesh;
  if (obj.contains("kind")) {
    const std::string kind = text(obj["kind"], path + "/kind");
    if (kind == "uniform") {
      mesh.kind = MeshSpec::Kind::uniform;
    } else if (kind == "graded") {
      mesh.kind = MeshSpec::Kind::graded;
    } else {
      throw ConfigError(path + "/kind", "must be \"uniform\" or \"graded\", got \"" + kind + "\"");
    }
  }
  if (obj.contains("n")) {
    const Json& n = obj["n"];
    if (!n.is_number_integer() || n.get<long long>() < 0) throw ConfigError(path + "/n", "must be a nonnegative integer");
    mesh.n = n.get<std::size_t>();
  }
  if (obj.contains("focus")) mesh.focus = numbers(obj["focus"], path + "/focus");
  if (obj.contains("ratio")) mesh.ratio = number(obj["ratio"], path + "/ratio");
  if (mesh.kind == MeshSpec::Kind::graded) {
    if (!obj.contains("focus")) throw ConfigError(path + "/focus", "required for graded meshes");
    if (!obj.contains("ratio")) throw ConfigError(path + "/ratio", "required for graded meshes");
  } else if (!mesh.focus.empty() || mesh.ratio != 1.0) {
    throw ConfigError(path + (mesh.focus.empty() ? "/ratio" : "/focus"), "only meaningful for graded meshes");
  }
  return mesh;
}

std::array<double, 3> coefficient_row(const Json& v, const std::string& path) {
  const std::vector<double> row = numbers(v, path);
  if (row.empty() || row.size() > 3) throw ConfigError(path, "must hold 1 to 3 coefficients (c0, c1, c2)");
  std::array<double, 3> out{0.0, 0.0, 0.0};
  std::copy(row.begin(), row.end(), out.begin());
  return out;
}

InitialSpec parse_initial(const Json& obj) {
  const std::string path = "/initial";
  require_keys(obj, path, {"preset", "params"});
  if (!obj.contains("preset")) throw ConfigError(path + "/preset", "required");
  InitialSpec spec;
  spec.preset = text(obj["preset"], path + "/preset");
  Json params = Json::object();
  if (obj.contains("params")) params = object_at(obj, "params", path + "/params");
  const std::string pp = path + "/params";
  if (spec.preset == "indicator") {
    require_keys(params, pp, {"a", "b"});
    if (params.contains("a")) spec.a = number(params["a"], pp + "/a");
    if (params.contains("b")) spec.b = number(params["b"], pp + "/b");
  } else if (spec.preset == "triangle") {
    require_keys(params, pp, {"center", "half_width"});
    if (params.contains("center")) spec.center = number(params["center"], pp + "/center");
    if (params.contains("half_width")) spec.half_width = number(params["half_width"], pp + "/half_width");
  } else if (spec.preset == "composite_sqrt" || spec.preset == "composite_step") {
    require_keys(params, pp, {});
  } else if (spec.preset == "piecewise") {
    require_keys(params, pp, {"breakpoints", "coefficients"});
    if (!params.contains("breakpoints")) throw ConfigError(pp + "/breakpoints", "required for piecewise");
    if (!params.contains("coefficients")) throw ConfigError(pp + "/coefficients", "required for piecewise");
    spec.breakpoints = numbers(params["breakpoints"], pp + "/breakpoints");
    const Json& rows = params["coefficients"];
    if (!rows.is_array()) throw ConfigError(pp + "/coefficients", "must be an array of coefficient arrays");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      spec.coefficients.push_back(coefficient_row(rows[i], pp + "/coefficients/" + std::to_string(i)));
    }
  } else {
    throw ConfigError(path + "/preset", "unknown preset \"" + spec.preset +
                                            "\" (expected indicator, triangle, composite_sqrt, composite_step "
                                            "or piecewise)");
  }
  return spec;
}

}  // namespace

InitialDensity InitialSpec::build() const {
  if (preset == "indicator") return InitialDensity::indicator(a, b);
  if (preset == "triangle") return InitialDensity::triangle(center, half_width);
  if (preset == "composite_sqrt") return InitialDensity::composite_sqrt();
  if (preset == "composite_step") return InitialDensity::composite_step();
  if (preset == "piecewise") return InitialDensity::piecewise(breakpoints, coefficients);
  throw std::invalid_argument("unknown initial preset '" + preset + "'");
}

void Scenario::validate() const {
  if (name.empty()) throw ConfigError("/name", "must be a nonempty string");
  if (!(params.m >= 1.0)) throw ConfigError("/m", "must be >= 1");
  if (!(params.nu > 0.0)) throw ConfigError("/nu", "must be > 0");
  if (!(params.alpha_cfl > 2.0)) throw ConfigError("/alpha_cfl", "must be > 2 for a stable explicit step");
  if (params.dt_max && !(*params.dt_max > 0.0)) throw ConfigError("/dt_max", "must be > 0");
  try {
    (void)mesh.build();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("/mesh", e.what());
  }
  try {
    (void)initial.build();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("/initial", e.what());
  }
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("/t_end", "must be a finite number >= 0");
  for (std::size_t i = 0; i < snapshot_times.size(); ++i) {
    const std::string path = "/snapshot_times/" + std::to_string(i);
    const double ts = snapshot_times[i];
    if (!(ts >= 0.0 && ts <= t_end)) throw ConfigError(path, "must lie in [0, t_end]");
    if (i > 0 && !(ts > snapshot_times[i - 1])) throw ConfigError(path, "snapshot times must be strictly increasing");
  }
  if (reference) {
    try {
      (void)ReferenceProfile::from_name(*reference, params.m);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("/reference", e.what());
    }
  }
}

Scenario load_config(std::string_view document) {
  Json doc;
  try {
    doc = Json::parse(document.begin(), document.end());
  } catch (const Json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("", "document must be a JSON object");
  require_keys(doc, "", {"name", "m", "nu", "alpha_cfl", "cfl_rule", "dt_max", "mesh", "initial", "t_end",
                         "snapshot_times", "reference", "output_dir"});

  Scenario s;
  if (!doc.contains("name")) throw ConfigError("/name", "required");
  s.name = text(doc["name"], "/name");
  if (doc.contains("m")) s.params.m = number(doc["m"], "/m");
  if (doc.contains("nu")) s.params.nu = number(doc["nu"], "/nu");
  if (doc.contains("alpha_cfl")) s.params.alpha_cfl = number(doc["alpha_cfl"], "/alpha_cfl");
  if (doc.contains("cfl_rule")) {
    const std::string rule = text(doc["cfl_rule"], "/cfl_rule");
    if (rule == "global") {
      s.params.cfl_rule = CflRule::global;
    } else if (rule == "local") {
      s.params.cfl_rule = CflRule::local;
    } else {
      throw ConfigError("/cfl_rule", "must be \"global\" or \"local\", got \"" + rule + "\"");
    }
  }
  if (doc.contains("dt_max")) s.params.dt_max = number(doc["dt_max"], "/dt_max");
  if (doc.contains("mesh")) s.mesh = parse_mesh(object_at(doc, "mesh", "/mesh"));
  if (!doc.contains("initial")) throw ConfigError("/initial", "required");
  s.initial = parse_initial(object_at(doc, "initial", "/initial"));
  if (!doc.contains("t_end")) throw ConfigError("/t_end", "required");
  s.t_end = number(doc["t_end"], "/t_end");
  if (doc.contains("snapshot_times")) s.snapshot_times = numbers(doc["snapshot_times"], "/snapshot_times");
  if (doc.contains("reference") && !doc["reference"].is_null()) s.reference = text(doc["reference"], "/reference");
  if (doc.contains("output_dir")) s.output_dir = text(doc["output_dir"], "/output_dir");
  s.validate();
  return s;
}

nlohmann::ordered_json to_json(const Scenario& s) {
  nlohmann::ordered_json doc;
  doc["name"] = s.name;
  doc["m"] = s.params.m;
  doc["nu"] = s.params.nu;
  doc["alpha_cfl"] = s.params.alpha_cfl;
  doc["cfl_rule"] = to_string(s.params.cfl_rule);
  if (s.params.dt_max) doc["dt_max"] = *s.params.dt_max;

  nlohmann::ordered_json mesh;
  mesh["kind"] = to_string(s.mesh.kind);
  mesh["n"] = s.mesh.n;
  if (s.mesh.kind == MeshSpec::Kind::graded) {
    mesh["focus"] = s.mesh.focus;
    mesh["ratio"] = s.mesh.ratio;
  }
  doc["mesh"] = mesh;

  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  const InitialSpec& in = s.initial;
  if (in.preset == "indicator") {
    params["a"] = in.a;
    params["b"] = in.b;
  } else if (in.preset == "triangle") {
    params["center"] = in.center;
    params["half_width"] = in.half_width;
  } else if (in.preset == "piecewise") {
    params["breakpoints"] = in.breakpoints;
    params["coefficients"] = in.coefficients;
  }
  doc["initial"] = {{"preset", in.preset}, {"params", params}};
  doc["t_end"] = s.t_end;
  doc["snapshot_times"] = s.snapshot_times;
  doc["reference"] = s.reference ? nlohmann::ordered_json(*s.reference) : nlohmann::ordered_json(nullptr);
  doc["output_dir"] = s.output_dir;
  return doc;
}

}  // namespace fluxlag

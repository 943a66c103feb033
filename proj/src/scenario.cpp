#include "waveflow/scenario.hpp"

#include <cmath>

#include "waveflow/errors.hpp"

namespace waveflow {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& context, const std::string& msg) {
  throw Error(ErrorKind::ConfigInvalid, context + ": " + msg);
}

double number(const json& j, const std::string& context, const std::string& field) {
  if (!j.is_number()) invalid(context, "field '" + field + "' must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) invalid(context, "field '" + field + "' must be finite");
  return v;
}

std::size_t count(const json& j, const std::string& context, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    invalid(context, "field '" + field + "' must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

PureQubitState qubit(const json& j, const std::string& context, const std::string& field) {
  if (!j.is_object() || !j.contains("theta")) {
    invalid(context, "field '" + field + "' needs 'theta' (and optional 'phi')");
  }
  const double theta = number(j.at("theta"), context, field + ".theta");
  const double phi = j.contains("phi") ? number(j.at("phi"), context, field + ".phi") : 0.0;
  try {
    return {theta, phi};
  } catch (const Error& e) {
    invalid(context, "field '" + field + "': " + e.message());
  }
}

TestStatePair pair_from_json(const json& j, const std::string& context, std::size_t i) {
  const std::string field = "pairs[" + std::to_string(i) + "]";
  if (j.is_string()) {
    try {
      return reference_test_pair(j.get<std::string>());
    } catch (const Error&) {
      invalid(context, "field '" + field + "': unknown pair '" + j.get<std::string>() +
                           "' (expected HV, PM or psi)");
    }
  }
  if (!j.is_object() || !j.contains("label") || !j.at("label").is_string()) {
    invalid(context, "field '" + field + "' must be a pair name or an object with 'label'");
  }
  const std::string label = j.at("label").get<std::string>();
  if (j.contains("state1")) {
    if (!j.contains("state2")) invalid(context, "field '" + field + "' has state1 but no state2");
    return {label, qubit(j.at("state1"), context, field + ".state1"),
            qubit(j.at("state2"), context, field + ".state2")};
  }
  const PureQubitState s = qubit(j, context, field);
  return antipodal_pair(angles_to_bloch(s), label);
}

ArrayConfig array_from_json(const json& j, const std::filesystem::path& base_dir,
                            const std::string& context, const std::string& field) {
  if (j.is_string()) {
    const std::string ref = j.get<std::string>();
    if (auto b = builtin_array(ref)) return *b;
    std::filesystem::path p(ref);
    if (p.is_relative()) p = base_dir / p;
    if (!std::filesystem::exists(p)) {
      invalid(context, "field '" + field + "': '" + ref + "' is neither a built-in array nor a file");
    }
    return load_array_config(p);
  }
  return array_config_from_json(j, context + " (" + field + ")");
}

EnvSpec env_from_json(const json& j, const std::string& context) {
  EnvSpec e;
  if (!j.is_object()) invalid(context, "field 'input_env' must be an object");
  if (j.contains("guide")) {
    if (!j.at("guide").is_number_integer() || j.at("guide").get<long long>() < 1) {
      invalid(context, "field 'input_env.guide' must be an integer >= 1");
    }
    e.guide = j.at("guide").get<Index>();
  } else if (j.contains("amplitudes")) {
    const json& a = j.at("amplitudes");
    if (!a.is_array() || a.empty()) invalid(context, "field 'input_env.amplitudes' must be a list");
    ComplexVector v(static_cast<Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string f = "input_env.amplitudes[" + std::to_string(i) + "]";
      if (a[i].is_array() && a[i].size() == 2) {
        v(static_cast<Index>(i)) = {number(a[i][0], context, f), number(a[i][1], context, f)};
      } else {
        v(static_cast<Index>(i)) = number(a[i], context, f);
      }
    }
    if (v.norm() == 0.0) invalid(context, "field 'input_env.amplitudes' is the zero vector");
    e.amplitudes = v;
  } else {
    invalid(context, "field 'input_env' needs 'guide' or 'amplitudes'");
  }
  return e;
}

}  // namespace

EnvironmentKet EnvSpec::resolve(Index num_guides) const {
  if (guide) return EnvironmentKet::guide(num_guides, *guide);
  if (!amplitudes) return EnvironmentKet::guide(num_guides, (num_guides + 1) / 2);
  if (amplitudes->size() != num_guides) {
    throw Error(ErrorKind::ConfigInvalid,
                "field 'input_env.amplitudes' must have one entry per guide (" +
                    std::to_string(num_guides) + ")");
  }
  return EnvironmentKet(*amplitudes);
}

json EnvSpec::to_json() const {
  if (guide) return {{"guide", *guide}};
  if (!amplitudes) return {{"guide", "center"}};
  json a = json::array();
  for (Index i = 0; i < amplitudes->size(); ++i)
      a.push_back({(*amplitudes)(i).real(), (*amplitudes)(i).imag()});
  return {{"amplitudes", a}};
}

std::vector<double> TimeGrid::points() const { return linspace(t_min, t_max, steps); }

const ArrayConfig& Scenario::require_array() const {
  if (!array) throw Error(ErrorKind::ConfigInvalid, "scenario field 'array' is required");
  return *array;
}

const TimeGrid& Scenario::require_grid() const {
  if (!t_grid) throw Error(ErrorKind::ConfigInvalid, "scenario field 't_grid' is required");
  return *t_grid;
}

const SearchSpec& Scenario::require_search() const {
  if (!search) throw Error(ErrorKind::ConfigInvalid, "scenario field 'search' is required");
  return *search;
}

EnvironmentKet Scenario::environment() const {
  return input_env.resolve(static_cast<Index>(require_array().num_guides));
}

std::optional<ArrayConfig> builtin_array(const std::string& name) {
  if (name == kReferenceName) return reference_five_guide();
  return std::nullopt;
}

Scenario scenario_from_json(const json& j, const std::filesystem::path& base_dir,
                            const std::string& context) {
  if (!j.is_object()) invalid(context, "scenario must be a JSON object");
  static const char* const known[] = {"array",     "input_env",       "pairs",  "t_grid",
                                      "outputs",   "polarizations",   "threshold",
                                      "grid_directions", "search", "description"};
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) invalid(context, "unknown field '" + key + "'");
  }

  Scenario s;
  if (j.contains("array")) s.array = array_from_json(j.at("array"), base_dir, context, "array");
  if (j.contains("input_env")) {
    s.input_env = env_from_json(j.at("input_env"), context);
  }
  if (s.array && s.input_env.guide && *s.input_env.guide > static_cast<Index>(s.array->num_guides)) {
    invalid(context, "field 'input_env.guide' exceeds num_guides");
  }
  if (s.array && s.input_env.amplitudes &&
      s.input_env.amplitudes->size() != static_cast<Index>(s.array->num_guides)) {
    invalid(context, "field 'input_env.amplitudes' length differs from num_guides");
  }
  if (j.contains("pairs")) {
    const json& p = j.at("pairs");
    if (!p.is_array()) invalid(context, "field 'pairs' must be a list");
    for (std::size_t i = 0; i < p.size(); ++i) s.pairs.push_back(pair_from_json(p[i], context, i));
  }
  if (j.contains("t_grid")) {
    const json& g = j.at("t_grid");
    if (!g.is_object() || !g.contains("min") || !g.contains("max") || !g.contains("steps")) {
      invalid(context, "field 't_grid' needs 'min', 'max' and 'steps'");
    }
    TimeGrid tg{number(g.at("min"), context, "t_grid.min"), number(g.at("max"), context, "t_grid.max"),
                count(g.at("steps"), context, "t_grid.steps")};
    if (!(tg.t_min < tg.t_max)) invalid(context, "field 't_grid': min must be < max");
    if (tg.steps < 2) invalid(context, "field 't_grid.steps' must be >= 2");
    s.t_grid = tg;
  }
  if (j.contains("outputs")) {
    if (!j.at("outputs").is_string()) invalid(context, "field 'outputs' must be a path");
    std::filesystem::path p(j.at("outputs").get<std::string>());
    s.outputs = p.is_relative() ? base_dir / p : p;
  }
  if (j.contains("polarizations")) {
    const json& p = j.at("polarizations");
    if (!p.is_array() || p.empty()) invalid(context, "field 'polarizations' must be a non-empty list");
    s.polarizations.clear();
    for (const auto& v : p) {
      if (v == "H") s.polarizations.push_back(Polarization::H);
      else if (v == "V") s.polarizations.push_back(Polarization::V);
      else invalid(context, "field 'polarizations' entries must be \"H\" or \"V\"");
    }
  }
  if (j.contains("threshold")) {
    s.threshold = number(j.at("threshold"), context, "threshold");
    if (s.threshold < 0.0 || s.threshold > 1.0) invalid(context, "field 'threshold' must be in [0, 1]");
  }
  if (j.contains("grid_directions")) {
    s.grid_directions = count(j.at("grid_directions"), context, "grid_directions");
    if (s.grid_directions < 8) invalid(context, "field 'grid_directions' must be >= 8");
  }
  if (j.contains("search")) {
    const json& q = j.at("search");
    if (!q.is_object() || !q.contains("lower") || !q.contains("upper")) {
      invalid(context, "field 'search' needs 'lower' and 'upper' array configs");
    }
    SearchSpec ss;
    ss.lower = array_from_json(q.at("lower"), base_dir, context, "search.lower");
    ss.upper = array_from_json(q.at("upper"), base_dir, context, "search.upper");
    if (ss.lower.num_guides != ss.upper.num_guides) {
      invalid(context, "fields 'search.lower' and 'search.upper' differ in num_guides");
    }
    if (q.contains("budget")) ss.budget = count(q.at("budget"), context, "search.budget");
    if (q.contains("seed")) ss.seed = count(q.at("seed"), context, "search.seed");
    if (q.contains("stop_at")) ss.stop_at = number(q.at("stop_at"), context, "search.stop_at");
    const auto m = static_cast<Index>(ss.lower.num_guides);
    if (s.input_env.guide && *s.input_env.guide > m) {
      invalid(context, "field 'input_env.guide' exceeds search num_guides");
    }
    s.search = ss;
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  Scenario s = scenario_from_json(read_json_file(path), path.parent_path(), path.string());
  s.source = path;
  return s;
}

}  // namespace waveflow

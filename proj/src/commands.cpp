#include "waveflow/commands.hpp"

#include <chrono>
#include <iostream>

#include "CLI11.hpp"
#include "waveflow/analysis.hpp"
#include "waveflow/dynamics.hpp"

namespace waveflow {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

void ensure_dir(const fs::path& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) {
    throw Error(ErrorKind::IoError, "cannot create output directory '" + out.string() + "'");
  }
}

json qubit_json(const PureQubitState& q) {
  const BlochVector b = angles_to_bloch(q);
  return {{"theta", q.theta()}, {"phi", q.phi()}, {"bloch", {b.x, b.y, b.z}}};
}

json pairs_json(const std::vector<TestStatePair>& pairs) {
  json a = json::array();
  for (const auto& p : pairs)
    a.push_back({{"label", p.label}, {"state1", qubit_json(p.first)}, {"state2", qubit_json(p.second)}});
  return a;
}

json grid_json(const TimeGrid& g) { return {{"min", g.t_min}, {"max", g.t_max}, {"steps", g.steps}}; }

json base_parameters(const Scenario& s) {
  json p;
  if (!s.source.empty()) p["scenario"] = s.source.string();
  if (s.array) p["array"] = to_json(*s.array);
  p["input_env"] = s.input_env.to_json();
  if (s.t_grid) p["t_grid"] = grid_json(*s.t_grid);
  return p;
}

std::string config_hash(const ArrayConfig& cfg) { return fnv1a_hex(to_json(cfg).dump()); }

RunManifest finish(RunManifest m, const fs::path& out, Clock::time_point start) {
  m.duration_s = std::chrono::duration<double>(Clock::now() - start).count();
  const fs::path path = out / ("manifest_" + m.subcommand + ".json");
  m.outputs.push_back(path);
  write_json(path, m.to_json());
  return m;
}

std::vector<TestStatePair> require_pairs(const Scenario& s) {
  if (s.pairs.empty()) throw Error(ErrorKind::ConfigInvalid, "scenario field 'pairs' is empty");
  return s.pairs;
}

std::string vec3(const BlochVector& v, int k) {
  return format_number(k == 0 ? v.x : (k == 1 ? v.y : v.z));
}

}  // namespace

RunManifest run_simulate(const Scenario& s, const fs::path& out) {
  const auto start = Clock::now();
  const ArrayConfig& cfg = s.require_array();
  const auto grid = s.require_grid().points();
  const auto pairs = require_pairs(s);
  const EnvironmentKet phi = s.environment();

  std::vector<std::pair<fs::path, CsvTable>> tables;
  for (const auto& pair : pairs) {
    CsvTable t({"t", "D_S", "D_E", "re_gamma", "im_gamma", "abs_gamma", "pair"});
    for (const auto& r : sweep_pair(cfg, phi, pair, grid)) {
      t.add_row({format_number(r.t), format_number(r.d_s), format_number(r.d_e),
                 r.gamma ? format_number(r.gamma->real()) : "",
                 r.gamma ? format_number(r.gamma->imag()) : "",
                 r.gamma ? format_number(std::abs(*r.gamma)) : "", r.pair_label});
    }
    tables.emplace_back(out / ("simulate_" + file_stem(pair.label) + ".csv"), std::move(t));
  }

  ensure_dir(out);
  RunManifest m{config_hash(cfg), "simulate", base_parameters(s), {}, 0.0};
  m.parameters["pairs"] = pairs_json(pairs);
  for (const auto& [path, table] : tables) {
    table.write(path);
    m.outputs.push_back(path);
  }
  return finish(std::move(m), out, start);
}

RunManifest run_intensity(const Scenario& s, const fs::path& out) {
  const auto start = Clock::now();
  const ArrayConfig& cfg = s.require_array();
  const auto grid = s.require_grid().points();
  const EnvironmentKet phi = s.environment();

  std::vector<std::string> header{"t"};
  for (std::size_t g = 1; g <= cfg.num_guides; ++g) header.push_back("guide_" + std::to_string(g));
  std::vector<std::pair<fs::path, CsvTable>> tables;
  for (Polarization pol : s.polarizations) {
    const Eigen::MatrixXd prof = intensity_profile(cfg, phi, pol, grid);
    CsvTable t(header);
    for (Index i = 0; i < prof.rows(); ++i) {
      std::vector<std::string> row{format_number(grid[static_cast<std::size_t>(i)])};
      for (Index g = 0; g < prof.cols(); ++g) row.push_back(format_number(prof(i, g)));
      t.add_row(std::move(row));
    }
    tables.emplace_back(out / (std::string("intensity_") + to_string(pol) + ".csv"), std::move(t));
  }

  ensure_dir(out);
  RunManifest m{config_hash(cfg), "intensity", base_parameters(s), {}, 0.0};
  json pols = json::array();
  for (Polarization pol : s.polarizations) pols.push_back(to_string(pol));
  m.parameters["polarizations"] = pols;
  for (const auto& [path, table] : tables) {
    table.write(path);
    m.outputs.push_back(path);
  }
  return finish(std::move(m), out, start);
}

RunManifest run_blp(const Scenario& s, const fs::path& out) {
  const auto start = Clock::now();
  const ArrayConfig& cfg = s.require_array();
  const auto grid = s.require_grid().points();
  const auto pairs = require_pairs(s);
  const EnvironmentKet phi = s.environment();

  std::vector<std::pair<fs::path, json>> docs;
  for (const auto& pair : pairs) {
    std::vector<double> d_s;
    for (const auto& r : sweep_pair(cfg, phi, pair, grid)) d_s.push_back(r.d_s);
    const BlpResult b = blp_measure(grid, d_s, pair.label);
    json intervals = json::array();
    for (const auto& [a, e] : b.witness_intervals) intervals.push_back({a, e});
    const auto min_it = std::min_element(d_s.begin(), d_s.end());
    double low = d_s.front();
    double rise = 0.0;  // largest D_S[j] - D_S[i] with i < j
    for (double d : d_s) {
      low = std::min(low, d);
      rise = std::max(rise, d - low);
    }
    docs.emplace_back(out / ("blp_" + file_stem(pair.label) + ".json"),
                      json{{"pair_label", b.pair_label},
                           {"measure", b.measure},
                           {"witness_intervals", intervals},
                           {"min_D_S", *min_it},
                           {"t_at_min_D_S", grid[static_cast<std::size_t>(min_it - d_s.begin())]},
                           {"largest_rise", rise}});
  }

  ensure_dir(out);
  RunManifest m{config_hash(cfg), "blp", base_parameters(s), {}, 0.0};
  m.parameters["pairs"] = pairs_json(pairs);
  for (const auto& [path, doc] : docs) {
    write_json(path, doc);
    m.outputs.push_back(path);
  }
  return finish(std::move(m), out, start);
}

RunManifest run_extremal(const Scenario& s, const fs::path& out) {
  const auto start = Clock::now();
  const ArrayConfig& cfg = s.require_array();
  const auto grid = s.require_grid().points();
  const EnvironmentKet phi = s.environment();
  SphereSearchOptions opts;
  opts.grid_directions = s.grid_directions;

  const ExtremalCurves curves = extremal_pairs(Propagator(build_hamiltonian(cfg)), phi, grid, opts);
  const SwapReport swap = summarize_swap(curves, s.threshold);

  std::vector<std::string> header{"t", "best_S", "worst_S", "best_E", "worst_E"};
  for (const char* which : {"best_S", "worst_S", "best_E", "worst_E"})
    for (const char* c : {"x", "y", "z"}) header.push_back(std::string(which) + "_n" + c);
  CsvTable t(header);
  for (const auto& p : curves.points) {
    std::vector<std::string> row{format_number(p.t), format_number(p.best_s.value),
                                 format_number(p.worst_s.value), format_number(p.best_e.value),
                                 format_number(p.worst_e.value)};
    for (const ExtremalValue* v : {&p.best_s, &p.worst_s, &p.best_e, &p.worst_e})
      for (int k = 0; k < 3; ++k) row.push_back(vec3(v->direction, k));
    t.add_row(std::move(row));
  }

  ensure_dir(out);
  RunManifest m{config_hash(cfg), "extremal", base_parameters(s), {}, 0.0};
  m.parameters["grid_directions"] = s.grid_directions;
  m.parameters["threshold"] = s.threshold;
  const fs::path csv = out / "extremal.csv";
  t.write(csv);
  const fs::path rep = out / "swap_report.json";
  write_json(rep, {{"t_best", swap.t_best},
                   {"worst_case_D_E", swap.worst_e},
                   {"best_case_D_S", swap.best_s},
                   {"threshold", swap.threshold},
                   {"full_transfer", swap.full_transfer}});
  m.outputs = {csv, rep};
  return finish(std::move(m), out, start);
}

RunManifest run_swap_search(const Scenario& s, const fs::path& out,
                            std::optional<std::size_t> budget, std::optional<std::uint64_t> seed) {
  const auto start = Clock::now();
  const SearchSpec& ss = s.require_search();
  if (s.input_env.amplitudes) {
    throw Error(ErrorKind::ConfigInvalid, "swap-search needs 'input_env.guide'");
  }
  SwapSearchSpec spec;
  spec.lower = ss.lower;
  spec.upper = ss.upper;
  const auto m_guides = static_cast<Index>(ss.lower.num_guides);
  spec.input_guide = s.input_env.guide.value_or((m_guides + 1) / 2);
  spec.t_grid = s.require_grid().points();
  spec.threshold = s.threshold;
  spec.stop_at = ss.stop_at;
  const std::size_t use_budget = budget.value_or(ss.budget);
  const std::uint64_t use_seed = seed.value_or(ss.seed);

  const SwapSearchResult r = search_swap_config(spec, use_budget, use_seed);

  ensure_dir(out);
  RunManifest m{config_hash(r.config), "swap-search", base_parameters(s), {}, 0.0};
  m.parameters["search"] = {{"lower", to_json(ss.lower)}, {"upper", to_json(ss.upper)},
                            {"budget", use_budget},       {"seed", use_seed},
                            {"stop_at", ss.stop_at},      {"input_guide", spec.input_guide}};
  const fs::path cfg_path = out / "swap_config.json";
  write_json(cfg_path, to_json(r.config));
  const fs::path rep = out / "swap_report.json";
  write_json(rep, {{"t_best", r.report.t_best},
                   {"worst_case_D_E", r.report.worst_e},
                   {"best_case_D_S", r.report.best_s},
                   {"threshold", r.report.threshold},
                   {"full_transfer", r.report.full_transfer},
                   {"search_objective", r.objective},
                   {"evaluations", r.evaluations},
                   {"budget", use_budget},
                   {"seed", use_seed},
                   {"input_guide", spec.input_guide},
                   {"budget_exhausted", r.budget_exhausted}});
  m.outputs = {cfg_path, rep};
  return finish(std::move(m), out, start);
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ConvergenceFailure:
    case ErrorKind::NonFinite:
      return 3;
    case ErrorKind::IoError:
      return 4;
    default:
      return 2;
  }
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Information flow between a polarization qubit and a waveguide-path environment",
               "waveflow"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> budget;

  auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--scenario", scenario_path, "Scenario file (JSON)")->required();
    sub->add_option("--out", out_dir, "Output directory (overrides the scenario's 'outputs')");
    return sub;
  };
  CLI::App* simulate = add("simulate", "D_S, D_E and gamma along the grid for each test pair");
  CLI::App* intensity = add("intensity", "Guide populations for H and V input light");
  CLI::App* blp = add("blp", "BLP non-Markovianity measure per test pair");
  CLI::App* extremal = add("extremal", "Best/worst orthogonal test pairs over the Bloch sphere");
  CLI::App* swap = add("swap-search", "Search rotation/coupling parameters for swap-like transfer");
  swap->add_option("--seed", seed, "Search seed (overrides the scenario)");
  swap->add_option("--budget", budget, "Objective evaluations (overrides the scenario)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const Scenario s = load_scenario(scenario_path);
    fs::path out;
    if (!out_dir.empty()) out = out_dir;
    else if (s.outputs) out = *s.outputs;
    else throw Error(ErrorKind::ConfigInvalid, "no output directory: pass --out or set 'outputs'");

    RunManifest m;
    if (simulate->parsed()) m = run_simulate(s, out);
    else if (intensity->parsed()) m = run_intensity(s, out);
    else if (blp->parsed()) m = run_blp(s, out);
    else if (extremal->parsed()) m = run_extremal(s, out);
    else m = run_swap_search(s, out, budget, seed);

    for (const auto& p : m.outputs) std::cout << p.string() << "\n";
    return 0;
  } catch (const Error& e) {
    std::cerr << "waveflow: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "waveflow: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace waveflow

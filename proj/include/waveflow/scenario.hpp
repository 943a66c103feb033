#pragma once

// Scenario files: which array, which input light, which test pairs, which
// grid. JSON with comments, for example
//
//   {
//     "array": "fivewg-reference",          // built-in name, file path, or inline object
//     "input_env": {"guide": 3},            // or {"amplitudes": [0, 1, [0, 1]]}  (re or [re, im])
//     "pairs": ["HV", "PM", "psi",
//               {"label": "tilted", "theta": 0.3, "phi": 1.0},       // partner is the orthogonal state
//               {"label": "custom", "state1": {"theta": 0, "phi": 0},
//                                   "state2": {"theta": 1.5707963267948966, "phi": 0}}],
//     "t_grid": {"min": 0, "max": 10, "steps": 201},
//     "outputs": "out",                     // optional, --out overrides
//     "polarizations": ["H", "V"],          // optional, intensity subcommand
//     "threshold": 0.95,                    // optional, swap detection
//     "grid_directions": 256,               // optional, sphere optimizer
//     "search": {                           // swap-search only
//       "lower": { ...array config... }, "upper": { ...array config... },
//       "budget": 5000, "seed": 1, "stop_at": 0.999
//     }
//   }
//
// Relative paths resolve against the scenario file's directory.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "waveflow/analysis.hpp"
#include "waveflow/model.hpp"
#include "waveflow/quantum.hpp"

namespace waveflow {

// Neither field set means the center guide, (M + 1) / 2.
struct EnvSpec {
  std::optional<Index> guide;           // 1-based
  std::optional<ComplexVector> amplitudes;

  EnvironmentKet resolve(Index num_guides) const;
  nlohmann::json to_json() const;
};

struct TimeGrid {
  double t_min = 0.0;
  double t_max = 1.0;
  std::size_t steps = 2;

  std::vector<double> points() const;
};

struct SearchSpec {
  ArrayConfig lower;
  ArrayConfig upper;
  std::size_t budget = 5000;
  std::uint64_t seed = 1;
  double stop_at = 0.999;
};

struct Scenario {
  std::filesystem::path source;  // empty for in-memory scenarios
  std::optional<ArrayConfig> array;
  EnvSpec input_env;
  std::vector<TestStatePair> pairs;
  std::optional<TimeGrid> t_grid;
  std::optional<std::filesystem::path> outputs;
  std::vector<Polarization> polarizations{Polarization::H, Polarization::V};
  double threshold = 0.95;
  std::size_t grid_directions = 256;
  std::optional<SearchSpec> search;

  // Throw ConfigInvalid naming the missing field.
  const ArrayConfig& require_array() const;
  const TimeGrid& require_grid() const;
  const SearchSpec& require_search() const;
  EnvironmentKet environment() const;
};

Scenario scenario_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir,
                            const std::string& context);
Scenario load_scenario(const std::filesystem::path& path);

// Built-in array configs by name; nullopt if unknown.
std::optional<ArrayConfig> builtin_array(const std::string& name);

}  // namespace waveflow

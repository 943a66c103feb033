#pragma once

// Subcommand implementations behind the waveflow CLI. Each one computes
// everything first, then writes its outputs and a manifest_<name>.json into
// the output directory, and returns the manifest.

#include <cstdint>
#include <filesystem>
#include <optional>

#include "waveflow/errors.hpp"
#include "waveflow/output.hpp"
#include "waveflow/scenario.hpp"

namespace waveflow {

RunManifest run_simulate(const Scenario& s, const std::filesystem::path& out);
RunManifest run_intensity(const Scenario& s, const std::filesystem::path& out);
RunManifest run_blp(const Scenario& s, const std::filesystem::path& out);
RunManifest run_extremal(const Scenario& s, const std::filesystem::path& out);
RunManifest run_swap_search(const Scenario& s, const std::filesystem::path& out,
                            std::optional<std::size_t> budget = std::nullopt,
                            std::optional<std::uint64_t> seed = std::nullopt);

// 2 config error, 3 numeric failure, 4 I/O error.
int exit_code(ErrorKind kind) noexcept;

// Full command line front end; returns the process exit status.
int run_cli(int argc, char** argv);

}  // namespace waveflow

#pragma once

// Waveguide-array description and the joint polarization (x) path
// Hamiltonians built from it.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "waveflow/linalg.hpp"

namespace waveflow {

enum class Polarization { H, V };

const char* to_string(Polarization p) noexcept;

// All rates are in inverse propagation length. Guides are 0-based here;
// the config file and CLI use 1-based guide numbers.
struct ArrayConfig {
  std::string name;
  std::size_t num_guides = 1;
  std::vector<double> beta_h;   // M entries
  std::vector<double> beta_v;   // M entries
  std::vector<double> kappa_h;  // M-1 entries, coupling between guide m and m+1
  std::vector<double> kappa_v;  // M-1 entries
  std::vector<double> alpha_x;  // M entries, polarization rotation about x
  std::vector<double> alpha_y;  // M entries, polarization rotation about y

  // Uniform array: same beta and kappa for every guide of a polarization, no rotation.
  static ArrayConfig uniform(std::size_t m, double beta_h, double beta_v, double kappa_h,
                             double kappa_v);

  // Throws ConfigInvalid naming the offending field.
  void validate() const;

  // True when every rotation rate is zero, i.e. the evolution is block
  // diagonal in the {H, V} basis.
  bool is_diagonal() const noexcept;
};

// Five guides, light launched into the center one. Values are chosen so the
// H and V intensity patterns both recur and the P/M distinguishability
// collapses and revives within l in [0, 10]:
//   beta_H = 1.0, beta_V = 1.2, kappa_H = 1.0, kappa_V = 1.5.
ArrayConfig reference_five_guide();
inline constexpr const char* kReferenceName = "fivewg-reference";
inline constexpr std::size_t kReferenceInputGuide = 3;  // 1-based

struct JointHamiltonian {
  HermitianMatrix matrix;
  Index dim_s = 2;
  Index dim_e = 1;
};

// Generator of U_lambda(t): tridiagonal M x M with beta on the diagonal and
// kappa on the first off-diagonals.
HermitianMatrix effective_env_generator(const ArrayConfig& cfg, Polarization pol);

// P_H (x) gen_H + P_V (x) gen_V. Rotation rates are ignored.
JointHamiltonian build_h0(const ArrayConfig& cfg);

// build_h0 plus sum_m (alpha^x_m sigma_x + alpha^y_m sigma_y) (x) P_m.
JointHamiltonian build_h1(const ArrayConfig& cfg);

// build_h0 when the config is diagonal, build_h1 otherwise.
JointHamiltonian build_hamiltonian(const ArrayConfig& cfg);

// Pauli matrices in the {H, V} basis.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

// ---- config files --------------------------------------------------------
//
// JSON object (comments allowed):
//   {
//     "name": "my-array",          // optional
//     "num_guides": 5,
//     "beta_H": 1.0,               // number (uniform) or array of M numbers
//     "beta_V": [1.2, 1.2, 1.2, 1.2, 1.2],
//     "kappa_H": 1.0,              // number or array of M-1 numbers
//     "kappa_V": 1.5,
//     "alpha_x": 0.0,              // optional, number or array of M
//     "alpha_y": 0.0               // optional
//   }

ArrayConfig array_config_from_json(const nlohmann::json& j, const std::string& context);
nlohmann::json to_json(const ArrayConfig& cfg);

// Reads and validates a config file. Syntax errors report line and column;
// semantic errors report the field. Both throw Error(ConfigInvalid); a
// missing or unreadable file throws Error(IoError).
ArrayConfig load_array_config(const std::filesystem::path& path);

// Parse a JSON file with comments enabled, mapping syntax errors to
// ConfigInvalid with line/column context.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace waveflow

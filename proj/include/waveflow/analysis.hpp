#pragma once

// Information-flow analysis on top of the dynamics: the BLP witness and
// measure, best/worst-case orthogonal test pairs over the Bloch sphere, the
// generalized swap and detection of swap-like evolutions.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "waveflow/dynamics.hpp"
#include "waveflow/optimize.hpp"

namespace waveflow {

// ---- BLP -----------------------------------------------------------------

struct BlpResult {
  double measure = 0.0;  // sum of positive increments of D_S
  std::vector<std::pair<double, double>> witness_intervals;
  std::string pair_label;
};

// Forward differences on the given grid. Increments at or below
// `increment_tol` count as flat (roundoff on constant curves).
BlpResult blp_measure(std::span<const double> t, std::span<const double> d_s,
                      std::string pair_label = {}, double increment_tol = 1e-12);

// ---- extremal pairs ------------------------------------------------------

// Trace distances of the evolved antipodal pair (n, -n) as a function of the
// unit direction n, for a fixed joint unitary U and environment input Phi.
// The reduced-state differences are linear in n:
//   rho_S(n) - rho_S(-n) = sum_k n_k Tr_E[U (sigma_k (x) P_Phi) U^dagger]
// and likewise for the environment.
class DirectionalDistances {
 public:
  DirectionalDistances(const ComplexMatrix& u, const EnvironmentKet& phi);

  double system(const BlochVector& n) const;
  double environment(const BlochVector& n) const;

 private:
  std::array<ComplexMatrix, 3> sys_;
  std::array<ComplexMatrix, 3> env_;
};

struct ExtremalValue {
  double value = 0.0;
  BlochVector direction;  // canonical representative of +-n
};

struct ExtremalPoint {
  double t = 0.0;
  ExtremalValue best_s, worst_s, best_e, worst_e;
};

struct ExtremalCurves {
  std::vector<ExtremalPoint> points;
};

struct SphereSearchOptions {
  std::size_t grid_directions = 256;
  std::size_t refine_starts = 2;  // local refinements per objective
  SimplexOptions simplex{0.2, 1e-16, 1e-12, 600};
};

ExtremalPoint extremal_at(const DirectionalDistances& dd, double t,
                          const SphereSearchOptions& opts = {});

ExtremalCurves extremal_pairs(const Propagator& p, const EnvironmentKet& phi,
                              std::span<const double> t_grid,
                              const SphereSearchOptions& opts = {});

// ---- generalized swap ----------------------------------------------------

// sum_{j,k} |j><k| (x) |k~><j~| + 1 (x) P_perp for orthonormal |1~>, |2~>.
// Throws NonOrthogonalEnvPair unless the kets are orthonormal within 1e-10.
ComplexMatrix build_generalized_swap(const ComplexVector& env1, const ComplexVector& env2);

struct SwapReport {
  double t_best = 0.0;
  double worst_e = 0.0;  // worst-case environment distance at t_best
  double best_s = 0.0;   // best-case system distance at t_best
  double threshold = 0.95;
  bool full_transfer = false;  // worst_e >= threshold
};

// Picks the grid point with the largest worst-case environment distance.
SwapReport summarize_swap(const ExtremalCurves& curves, double threshold = 0.95);

SwapReport swap_scan(const Propagator& p, const EnvironmentKet& phi,
                     std::span<const double> t_grid, double threshold = 0.95,
                     const SphereSearchOptions& opts = {});

// Parameter box for the swap search. Entries with lower == upper are fixed.
struct SwapSearchSpec {
  ArrayConfig lower;
  ArrayConfig upper;
  Index input_guide = 1;         // 1-based
  std::vector<double> t_grid;    // scan grid
  double threshold = 0.95;
  double stop_at = 0.999;        // objective at which the search ends early
  std::size_t coarse_directions = 48;
  std::size_t evals_per_start = 400;
};

struct SwapSearchResult {
  ArrayConfig config;
  SwapReport report;
  double objective = 0.0;  // coarse max_t worst_E of the returned config
  std::size_t evaluations = 0;
  bool budget_exhausted = false;
};

// Seeded multi-start simplex search maximizing max_t worst_E. Deterministic
// given (spec, budget, seed).
SwapSearchResult search_swap_config(const SwapSearchSpec& spec, std::size_t budget,
                                    std::uint64_t seed);

}  // namespace waveflow

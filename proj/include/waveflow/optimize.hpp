#pragma once

// Derivative-free minimization helpers: Nelder-Mead simplex and a
// deterministic near-uniform direction set on the unit sphere.

#include <cstdint>
#include <functional>
#include <vector>

#include "waveflow/linalg.hpp"
#include "waveflow/quantum.hpp"

namespace waveflow {

struct SimplexOptions {
  double initial_step = 0.1;
  double f_tol = 1e-13;  // stop when the simplex values spread below this
  double x_tol = 1e-10;  // ... and the simplex diameter below this
  std::size_t max_evals = 2000;
};

struct SimplexResult {
  RealVector x;
  double value = 0.0;
  std::size_t evals = 0;
};

SimplexResult nelder_mead(const std::function<double(const RealVector&)>& f, const RealVector& x0,
                          const SimplexOptions& opts = {});

// Fibonacci lattice: n points, near-uniform on the unit sphere.
std::vector<BlochVector> sphere_directions(std::size_t n);

// Flip n to the hemisphere z > 0 (ties broken by y, then x). D(n) = D(-n)
// for antipodal pairs, so this picks a canonical representative.
BlochVector canonical_direction(const BlochVector& n);

// splitmix64; portable, unlike std::uniform_real_distribution.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform();  // [0, 1)

 private:
  std::uint64_t state_;
};

}  // namespace waveflow

#pragma once

// Qubit and environment state types, conversions between the Bloch-vector
// and polar-angle descriptions, and the trace distance.

#include <string>
#include <vector>

#include "waveflow/linalg.hpp"

namespace waveflow {

inline constexpr double kBlochTol = 1e-12;
inline constexpr double kDensityTol = 1e-10;

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const noexcept;
  BlochVector operator-(const BlochVector& o) const noexcept { return {x - o.x, y - o.y, z - o.z}; }
  BlochVector operator-() const noexcept { return {-x, -y, -z}; }
  double dot(const BlochVector& o) const noexcept { return x * o.x + y * o.y + z * o.z; }
};

// cos(theta)|H> + e^{i phi} sin(theta)|V>, theta in [0, pi/2], phi in [0, 2 pi).
// The constructor wraps phi into range and rejects theta outside [0, pi/2].
class PureQubitState {
 public:
  PureQubitState() = default;
  PureQubitState(double theta, double phi);

  // Inverse of angles_to_bloch for a unit vector (norm checked to 1e-9).
  static PureQubitState from_bloch(const BlochVector& v);

  double theta() const noexcept { return theta_; }
  double phi() const noexcept { return phi_; }

  // Amplitudes in the {H, V} basis.
  ComplexVector ket() const;

 private:
  double theta_ = 0.0;
  double phi_ = 0.0;
};

class DensityMatrix {
 public:
  // Validates unit trace and positivity to within kDensityTol.
  explicit DensityMatrix(HermitianMatrix m);

  static DensityMatrix from_ket(const ComplexVector& ket);

  const HermitianMatrix& hermitian() const noexcept { return m_; }
  const ComplexMatrix& matrix() const noexcept { return m_.matrix(); }
  Index dim() const noexcept { return m_.dim(); }
  double min_eigenvalue() const;

 private:
  HermitianMatrix m_;
};

struct TestStatePair {
  std::string label;
  PureQubitState first;
  PureQubitState second;

  // Kets orthogonal within tol.
  bool orthogonal(double tol = 1e-12) const;
};

// Orthogonal pair (n, -n) for a unit direction n.
TestStatePair antipodal_pair(const BlochVector& n, std::string label = {});

class EnvironmentKet {
 public:
  // Normalized on construction; throws DimensionMismatch for a zero vector.
  explicit EnvironmentKet(ComplexVector amplitudes);

  // All light in guide `guide_1based` of `num_guides`.
  static EnvironmentKet guide(Index num_guides, Index guide_1based);

  const ComplexVector& amplitudes() const noexcept { return amps_; }
  Index dim() const noexcept { return amps_.size(); }

 private:
  ComplexVector amps_;
};

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

DensityMatrix bloch_to_density(const BlochVector& v);
BlochVector density_to_bloch(const DensityMatrix& rho);
BlochVector angles_to_bloch(const PureQubitState& s);

// {H,V}, {P,M} and {psi1, psi2} with
//   psi1 = (|H> + |P>) / sqrt(2 + sqrt 2),  psi2 = (|V> - |M>) / sqrt(2 + sqrt 2).
// Labels "HV", "PM", "psi".
std::vector<TestStatePair> reference_test_pairs();

// Looks up one of reference_test_pairs() by label; throws ConfigInvalid.
TestStatePair reference_test_pair(const std::string& label);

}  // namespace waveflow

#include "waveflow/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "waveflow/errors.hpp"
#include "waveflow/model.hpp"

namespace waveflow {

double BlochVector::norm() const noexcept { return std::sqrt(x * x + y * y + z * z); }

PureQubitState::PureQubitState(double theta, double phi) {
  constexpr double pi = std::numbers::pi;
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw Error(ErrorKind::ConfigInvalid, "qubit angles must be finite");
  }
  if (theta < -1e-12 || theta > pi / 2 + 1e-12) {
    throw Error(ErrorKind::ConfigInvalid, "theta must lie in [0, pi/2]");
  }
  theta_ = std::clamp(theta, 0.0, pi / 2);
  phi_ = std::fmod(phi, 2 * pi);
  if (phi_ < 0) phi_ += 2 * pi;
  if (phi_ >= 2 * pi) phi_ = 0.0;
}

PureQubitState PureQubitState::from_bloch(const BlochVector& v) {
  const double n = v.norm();
  if (std::abs(n - 1.0) > 1e-9) {
    throw Error(ErrorKind::NonPhysicalBloch, "pure state needs a unit Bloch vector");
  }
  const double z = std::clamp(v.z / n, -1.0, 1.0);
  const double theta = 0.5 * std::acos(z);
  const double phi = (std::abs(v.x) + std::abs(v.y) > 0) ? std::atan2(v.y, v.x) : 0.0;
  return {theta, phi};
}

ComplexVector PureQubitState::ket() const {
  ComplexVector k(2);
  k << std::cos(theta_), std::polar(std::sin(theta_), phi_);
  return k;
}

DensityMatrix::DensityMatrix(HermitianMatrix m) : m_(std::move(m)) {
  const double tr = m_.matrix().trace().real();
  if (std::abs(tr - 1.0) > kDensityTol) {
    throw Error(ErrorKind::NonPhysicalBloch, "density matrix trace " + std::to_string(tr));
  }
  if (min_eigenvalue() < -kDensityTol) {
    throw Error(ErrorKind::NonPhysicalBloch, "density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::from_ket(const ComplexVector& ket) {
  return DensityMatrix(HermitianMatrix(ket * ket.adjoint()));
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m_.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

bool TestStatePair::orthogonal(double tol) const {
  return std::abs(first.ket().dot(second.ket())) <= tol;
}

TestStatePair antipodal_pair(const BlochVector& n, std::string label) {
  return {std::move(label), PureQubitState::from_bloch(n), PureQubitState::from_bloch(-n)};
}

EnvironmentKet::EnvironmentKet(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
  require_finite(amps_, "environment ket");
  const double n = amps_.norm();
  if (n == 0.0) throw Error(ErrorKind::DimensionMismatch, "environment ket is zero");
  amps_ /= n;
}

EnvironmentKet EnvironmentKet::guide(Index num_guides, Index guide_1based) {
  if (guide_1based < 1 || guide_1based > num_guides) {
    throw Error(ErrorKind::ConfigInvalid, "input guide " + std::to_string(guide_1based) +
                                              " outside 1.." + std::to_string(num_guides));
  }
  ComplexVector v = ComplexVector::Zero(num_guides);
  v(guide_1based - 1) = 1.0;
  return EnvironmentKet(v);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "trace distance between " +
                                                  std::to_string(a.dim()) + " and " +
                                                  std::to_string(b.dim()) + " dim states");
  }
  return 0.5 * trace_norm(a.hermitian() - b.hermitian());
}

DensityMatrix bloch_to_density(const BlochVector& v) {
  if (v.norm() > 1.0 + kBlochTol) {
    throw Error(ErrorKind::NonPhysicalBloch, "Bloch vector norm " + std::to_string(v.norm()));
  }
  const ComplexMatrix rho =
      0.5 * (ComplexMatrix::Identity(2, 2) + v.x * pauli_x() + v.y * pauli_y() + v.z * pauli_z());
  return DensityMatrix(HermitianMatrix(rho));
}

BlochVector density_to_bloch(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw Error(ErrorKind::DimensionMismatch, "Bloch vector needs a qubit");
  const ComplexMatrix& m = rho.matrix();
  return {2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(), (m(0, 0) - m(1, 1)).real()};
}

BlochVector angles_to_bloch(const PureQubitState& s) {
  const double s2 = std::sin(2 * s.theta());
  return {std::cos(s.phi()) * s2, std::sin(s.phi()) * s2, std::cos(2 * s.theta())};
}

std::vector<TestStatePair> reference_test_pairs() {
  constexpr double pi = std::numbers::pi;
  // psi1 has amplitudes (1 + 1/sqrt2, 1/sqrt2), i.e. tan(theta) = sqrt2 - 1 = tan(pi/8).
  // psi2 ~ (1/sqrt2, -(1 + 1/sqrt2)) up to a global sign: theta = 3pi/8, phi = pi.
  return {
      {"HV", PureQubitState(0.0, 0.0), PureQubitState(pi / 2, 0.0)},
      {"PM", PureQubitState(pi / 4, 0.0), PureQubitState(pi / 4, pi)},
      {"psi", PureQubitState(pi / 8, 0.0), PureQubitState(3 * pi / 8, pi)},
  };
}

TestStatePair reference_test_pair(const std::string& label) {
  for (auto& p : reference_test_pairs())
    if (p.label == label) return p;
  throw Error(ErrorKind::ConfigInvalid, "unknown test pair '" + label + "'");
}

}  // namespace waveflow

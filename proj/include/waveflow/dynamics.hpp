#pragma once

// Unitary evolution of the joint polarization (x) path state, the reduced
// states of either side, and the closed-form trace distances that hold when
// the evolution is block diagonal in {H, V}.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "waveflow/linalg.hpp"
#include "waveflow/model.hpp"
#include "waveflow/quantum.hpp"

namespace waveflow {

// U(t) = exp(+i t H). The eigendecomposition is computed once; each at(t)
// is a diagonal rescaling.
class Propagator {
 public:
  explicit Propagator(JointHamiltonian h);

  ComplexMatrix at(double t) const { return expi(eig_, t); }

  const JointHamiltonian& hamiltonian() const noexcept { return h_; }
  Index env_dim() const noexcept { return h_.dim_e; }
  Index dim() const noexcept { return h_.matrix.dim(); }

 private:
  JointHamiltonian h_;
  Eigensystem eig_;
};

class JointState {
 public:
  JointState(ComplexVector ket, Index env_dim);

  static JointState product(const ComplexVector& system_ket, const EnvironmentKet& env);
  static JointState product(const PureQubitState& system, const EnvironmentKet& env) {
    return product(system.ket(), env);
  }

  const ComplexVector& ket() const noexcept { return ket_; }
  Index env_dim() const noexcept { return env_dim_; }

 private:
  ComplexVector ket_;
  Index env_dim_;
};

JointState evolve(const Propagator& p, const JointState& initial, double t);

DensityMatrix reduced_system(const JointState& s);
DensityMatrix reduced_environment(const JointState& s);

// gamma = <Phi| U_H^dagger U_V |Phi> from the M x M effective unitaries.
// Throws NonDiagonalConfig when any rotation rate is nonzero.
cplx overlap_parameter(const ArrayConfig& cfg, const EnvironmentKet& phi, double t);

// Same quantity read off the diagonal blocks of the joint propagator.
cplx overlap_parameter(const Propagator& p, const EnvironmentKet& phi, double t);

struct TraceDistances {
  double system = 0.0;
  double environment = 0.0;
};

// D_S = 1/2 sqrt(dTz^2 + |g|^2 (dTx^2 + dTy^2)),  D_E = 1/2 |dTz| sqrt(1 - |g|^2).
// Throws InvalidGamma if |gamma| > 1 + 1e-10.
TraceDistances closed_form_distances(const BlochVector& a, const BlochVector& b, cplx gamma);

// Evolve |s_i> (x) |Phi> for both states, reduce, and take trace distances.
TraceDistances evolved_distances(const Propagator& p, const EnvironmentKet& phi,
                                 const TestStatePair& pair, double t);

// Rows: t values; columns: guides. Entry |<m| U_pol(t) |Phi>|^2.
Eigen::MatrixXd intensity_profile(const ArrayConfig& cfg, const EnvironmentKet& phi,
                                  Polarization pol, std::span<const double> t_grid);

struct InfoFlowRecord {
  double t = 0.0;
  double d_s = 0.0;
  double d_e = 0.0;
  std::optional<cplx> gamma;  // only defined for block-diagonal evolutions
  std::string pair_label;
};

// D_S, D_E (by explicit evolution) and gamma along the grid for one pair.
std::vector<InfoFlowRecord> sweep_pair(const ArrayConfig& cfg, const EnvironmentKet& phi,
                                       const TestStatePair& pair, std::span<const double> t_grid);

// Evenly spaced grid, both ends included; steps >= 2.
std::vector<double> linspace(double t_min, double t_max, std::size_t steps);

}  // namespace waveflow

#include "waveflow/dynamics.hpp"

#include <cmath>
#include <limits>

#include "waveflow/errors.hpp"

namespace waveflow {

Propagator::Propagator(JointHamiltonian h) : h_(std::move(h)), eig_(hermitian_eig(h_.matrix)) {}

JointState::JointState(ComplexVector ket, Index env_dim) : ket_(std::move(ket)), env_dim_(env_dim) {
  if (env_dim_ < 1 || ket_.size() != 2 * env_dim_) {
    throw Error(ErrorKind::DimensionMismatch, "joint ket length " + std::to_string(ket_.size()) +
                                                  " != 2 x " + std::to_string(env_dim_));
  }
  require_finite(ket_, "joint ket");
  if (std::abs(ket_.norm() - 1.0) > 1e-10) {
    throw Error(ErrorKind::DimensionMismatch, "joint ket is not normalized");
  }
}

JointState JointState::product(const ComplexVector& system_ket, const EnvironmentKet& env) {
  if (system_ket.size() != 2) throw Error(ErrorKind::DimensionMismatch, "system ket must be 2-dim");
  return JointState(tensor(system_ket, env.amplitudes()), env.dim());
}

JointState evolve(const Propagator& p, const JointState& initial, double t) {
  if (p.dim() != initial.ket().size()) {
    throw Error(ErrorKind::DimensionMismatch, "propagator and state dimensions differ");
  }
  return JointState(p.at(t) * initial.ket(), initial.env_dim());
}

namespace {

DensityMatrix reduce(const JointState& s, Keep keep) {
  const HermitianMatrix joint(s.ket() * s.ket().adjoint());
  return DensityMatrix(partial_trace(joint, {2, s.env_dim()}, keep));
}

void require_diagonal(const ArrayConfig& cfg) {
  if (!cfg.is_diagonal()) {
    throw Error(ErrorKind::NonDiagonalConfig,
                "operation needs alpha_x = alpha_y = 0 (block-diagonal evolution)");
  }
}

}  // namespace

DensityMatrix reduced_system(const JointState& s) { return reduce(s, Keep::System); }
DensityMatrix reduced_environment(const JointState& s) { return reduce(s, Keep::Environment); }

cplx overlap_parameter(const ArrayConfig& cfg, const EnvironmentKet& phi, double t) {
  require_diagonal(cfg);
  if (phi.dim() != static_cast<Index>(cfg.num_guides)) {
    throw Error(ErrorKind::DimensionMismatch, "environment ket does not match the array");
  }
  if (t == 0.0) return {1.0, 0.0};
  const ComplexMatrix uh = expi(effective_env_generator(cfg, Polarization::H), t);
  const ComplexMatrix uv = expi(effective_env_generator(cfg, Polarization::V), t);
  const ComplexVector a = uh * phi.amplitudes();
  const ComplexVector b = uv * phi.amplitudes();
  return a.dot(b);  // conjugates a
}

cplx overlap_parameter(const Propagator& p, const EnvironmentKet& phi, double t) {
  const Index m = p.env_dim();
  if (phi.dim() != m) throw Error(ErrorKind::DimensionMismatch, "environment ket does not match");
  const ComplexMatrix u = p.at(t);
  if (u.block(0, m, m, m).cwiseAbs().maxCoeff() > 1e-12 ||
      u.block(m, 0, m, m).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error(ErrorKind::NonDiagonalConfig, "propagator mixes H and V");
  }
  const ComplexVector a = u.block(0, 0, m, m) * phi.amplitudes();
  const ComplexVector b = u.block(m, m, m, m) * phi.amplitudes();
  return a.dot(b);
}

TraceDistances closed_form_distances(const BlochVector& a, const BlochVector& b, cplx gamma) {
  const double g2 = std::norm(gamma);
  if (!std::isfinite(g2) || g2 > (1.0 + 1e-10) * (1.0 + 1e-10)) {
    throw Error(ErrorKind::InvalidGamma, "|gamma| = " + std::to_string(std::sqrt(g2)));
  }
  const double g2c = std::min(g2, 1.0);
  const BlochVector d = a - b;
  const double ds = 0.5 * std::sqrt(d.z * d.z + g2c * (d.x * d.x + d.y * d.y));
  // |gamma| within a few ulps of 1 counts as 1 (M = 1, t = 0)
  const double deficit = 1.0 - g2c;
  const double de =
      deficit <= 16 * std::numeric_limits<double>::epsilon() ? 0.0 : 0.5 * std::abs(d.z) * std::sqrt(deficit);
  return {ds, de};
}

TraceDistances evolved_distances(const Propagator& p, const EnvironmentKet& phi,
                                 const TestStatePair& pair, double t) {
  const ComplexMatrix u = p.at(t);
  const JointState s1(u * JointState::product(pair.first, phi).ket(), phi.dim());
  const JointState s2(u * JointState::product(pair.second, phi).ket(), phi.dim());
  return {trace_distance(reduced_system(s1), reduced_system(s2)),
          trace_distance(reduced_environment(s1), reduced_environment(s2))};
}

Eigen::MatrixXd intensity_profile(const ArrayConfig& cfg, const EnvironmentKet& phi,
                                  Polarization pol, std::span<const double> t_grid) {
  require_diagonal(cfg);
  const auto m = static_cast<Index>(cfg.num_guides);
  if (phi.dim() != m) throw Error(ErrorKind::DimensionMismatch, "environment ket does not match");
  const Eigensystem es = hermitian_eig(effective_env_generator(cfg, pol));
  Eigen::MatrixXd out(static_cast<Index>(t_grid.size()), m);
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const ComplexVector psi = expi(es, t_grid[i]) * phi.amplitudes();
    out.row(static_cast<Index>(i)) = psi.cwiseAbs2().transpose();
  }
  return out;
}

std::vector<InfoFlowRecord> sweep_pair(const ArrayConfig& cfg, const EnvironmentKet& phi,
                                       const TestStatePair& pair, std::span<const double> t_grid) {
  if (phi.dim() != static_cast<Index>(cfg.num_guides)) {
    throw Error(ErrorKind::DimensionMismatch, "environment ket does not match the array");
  }
  const Propagator p(build_hamiltonian(cfg));
  const bool diagonal = cfg.is_diagonal();
  std::vector<InfoFlowRecord> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const TraceDistances d = evolved_distances(p, phi, pair, t);
    InfoFlowRecord r{t, d.system, d.environment, std::nullopt, pair.label};
    if (diagonal) r.gamma = overlap_parameter(p, phi, t);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<double> linspace(double t_min, double t_max, std::size_t steps) {
  if (steps < 2 || !(t_min < t_max)) {
    throw Error(ErrorKind::ConfigInvalid, "time grid needs t_min < t_max and steps >= 2");
  }
  std::vector<double> g(steps);
  const double h = (t_max - t_min) / static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) g[i] = t_min + h * static_cast<double>(i);
  g.back() = t_max;
  return g;
}

}  // namespace waveflow

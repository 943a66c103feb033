#include "waveflow/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "waveflow/errors.hpp"

namespace waveflow {

// ---- BLP -----------------------------------------------------------------

BlpResult blp_measure(std::span<const double> t, std::span<const double> d_s,
                      std::string pair_label, double increment_tol) {
  if (t.size() < 2 || t.size() != d_s.size()) {
    throw Error(ErrorKind::EmptyCurve, "BLP measure needs >= 2 points with matching lengths");
  }
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    if (!(t[k + 1] > t[k])) {
      throw Error(ErrorKind::NonMonotoneTimeGrid,
                  "time grid not strictly increasing at index " + std::to_string(k + 1));
    }
  }
  BlpResult r;
  r.pair_label = std::move(pair_label);
  bool open = false;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    const double inc = d_s[k + 1] - d_s[k];
    if (inc > increment_tol) {
      r.measure += inc;
      if (open) {
        r.witness_intervals.back().second = t[k + 1];
      } else {
        r.witness_intervals.emplace_back(t[k], t[k + 1]);
        open = true;
      }
    } else {
      open = false;
    }
  }
  return r;
}

// ---- extremal pairs ------------------------------------------------------

DirectionalDistances::DirectionalDistances(const ComplexMatrix& u, const EnvironmentKet& phi) {
  const Index m = phi.dim();
  if (u.rows() != 2 * m || u.cols() != 2 * m) {
    throw Error(ErrorKind::DimensionMismatch, "unitary does not act on 2 x " + std::to_string(m));
  }
  ComplexVector e_h(2), e_v(2);
  e_h << 1.0, 0.0;
  e_v << 0.0, 1.0;
  const ComplexVector w_h = u * tensor(e_h, phi.amplitudes());
  const ComplexVector w_v = u * tensor(e_v, phi.amplitudes());
  const ComplexMatrix hv = w_h * w_v.adjoint();
  const ComplexMatrix vh = w_v * w_h.adjoint();
  const cplx i(0.0, 1.0);
  const std::array<ComplexMatrix, 3> joint = {
      ComplexMatrix(hv + vh),
      ComplexMatrix(-i * hv + i * vh),
      ComplexMatrix(w_h * w_h.adjoint() - w_v * w_v.adjoint()),
  };
  for (std::size_t k = 0; k < 3; ++k) {
    const HermitianMatrix j(joint[k], 1e-10);
    sys_[k] = partial_trace(j, {2, m}, Keep::System).matrix();
    env_[k] = partial_trace(j, {2, m}, Keep::Environment).matrix();
  }
}

namespace {

double half_trace_norm(const ComplexMatrix& m) {
  if (m.rows() == 1) return 0.5 * std::abs(m(0, 0).real());
  if (m.rows() == 2) {
    // eigenvalues of a 2x2 Hermitian matrix in closed form
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double mean = 0.5 * (a + d);
    const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
    return 0.5 * (std::abs(mean + rad) + std::abs(mean - rad));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "eigensolver did not converge");
  }
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace

double DirectionalDistances::system(const BlochVector& n) const {
  return half_trace_norm(n.x * sys_[0] + n.y * sys_[1] + n.z * sys_[2]);
}

double DirectionalDistances::environment(const BlochVector& n) const {
  return half_trace_norm(n.x * env_[0] + n.y * env_[1] + n.z * env_[2]);
}

namespace {

BlochVector normalized(const BlochVector& v) {
  const double n = v.norm();
  return {v.x / n, v.y / n, v.z / n};
}

BlochVector cross(const BlochVector& a, const BlochVector& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Orthonormal tangent frame at n.
std::pair<BlochVector, BlochVector> tangent_frame(const BlochVector& n) {
  const double ax = std::abs(n.x), ay = std::abs(n.y), az = std::abs(n.z);
  BlochVector helper{0, 0, 0};
  if (ax <= ay && ax <= az) helper.x = 1;
  else if (ay <= az) helper.y = 1;
  else helper.z = 1;
  const BlochVector e1 = normalized(cross(n, helper));
  return {e1, cross(n, e1)};
}

// Minimize `f` over the sphere starting from each of `starts`; each start
// gets a second, smaller simplex around the first result.
ExtremalValue refine(const std::function<double(const BlochVector&)>& f,
                     const std::vector<BlochVector>& starts, const SimplexOptions& simplex) {
  ExtremalValue best{std::numeric_limits<double>::infinity(), {}};
  for (BlochVector n0 : starts) {
    double step = simplex.initial_step;
    for (int pass = 0; pass < 2; ++pass) {
      const auto [e1, e2] = tangent_frame(n0);
      auto chart = [&](const RealVector& x) {
        return normalized({n0.x + x(0) * e1.x + x(1) * e2.x, n0.y + x(0) * e1.y + x(1) * e2.y,
                           n0.z + x(0) * e1.z + x(1) * e2.z});
      };
      SimplexOptions so = simplex;
      so.initial_step = step;
      const SimplexResult r =
          nelder_mead([&](const RealVector& x) { return f(chart(x)); }, RealVector::Zero(2), so);
      n0 = chart(r.x);
      step *= 0.05;
      if (r.value < best.value) best = {r.value, n0};
    }
  }
  return best;
}

enum class Side { System, Environment };

}  // namespace

ExtremalPoint extremal_at(const DirectionalDistances& dd, double t,
                          const SphereSearchOptions& opts) {
  const std::vector<BlochVector> grid = sphere_directions(opts.grid_directions);
  std::vector<double> vs(grid.size()), ve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    vs[i] = dd.system(grid[i]);
    ve[i] = dd.environment(grid[i]);
  }

  auto solve = [&](Side side, double sign) {
    const std::vector<double>& vals = side == Side::System ? vs : ve;
    std::vector<std::size_t> idx(grid.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return sign * vals[a] < sign * vals[b];
    });
    std::vector<BlochVector> starts;
    for (std::size_t k = 0; k < std::min(opts.refine_starts, idx.size()); ++k)
      starts.push_back(grid[idx[k]]);
    // Minima are often V-shaped (|n_z| c near the equator); squaring keeps the
    // same argmin with a smooth bottom.
    auto value = [&](const BlochVector& n) {
      return side == Side::System ? dd.system(n) : dd.environment(n);
    };
    auto f = [&](const BlochVector& n) {
      const double v = value(n);
      return sign > 0 ? v * v : -v;
    };
    ExtremalValue v = refine(f, starts, opts.simplex);
    v.value = std::clamp(value(v.direction), 0.0, 1.0);
    v.direction = canonical_direction(v.direction);
    return v;
  };

  ExtremalPoint p;
  p.t = t;
  p.best_s = solve(Side::System, -1.0);
  p.worst_s = solve(Side::System, +1.0);
  p.best_e = solve(Side::Environment, -1.0);
  p.worst_e = solve(Side::Environment, +1.0);
  return p;
}

ExtremalCurves extremal_pairs(const Propagator& p, const EnvironmentKet& phi,
                              std::span<const double> t_grid, const SphereSearchOptions& opts) {
  if (phi.dim() != p.env_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "environment ket does not match the propagator");
  }
  ExtremalCurves c;
  c.points.reserve(t_grid.size());
  for (double t : t_grid) c.points.push_back(extremal_at(DirectionalDistances(p.at(t), phi), t, opts));
  return c;
}

// ---- generalized swap ----------------------------------------------------

ComplexMatrix build_generalized_swap(const ComplexVector& env1, const ComplexVector& env2) {
  if (env1.size() != env2.size() || env1.size() < 2) {
    throw Error(ErrorKind::DimensionMismatch, "swap needs two environment kets of equal dim >= 2");
  }
  require_finite(env1, "swap environment ket");
  require_finite(env2, "swap environment ket");
  if (std::abs(env1.norm() - 1.0) > 1e-10 || std::abs(env2.norm() - 1.0) > 1e-10 ||
      std::abs(env1.dot(env2)) > 1e-10) {
    throw Error(ErrorKind::NonOrthogonalEnvPair, "environment kets must be orthonormal");
  }
  const Index m = env1.size();
  const std::array<ComplexVector, 2> tilde = {env1, env2};
  ComplexMatrix u = ComplexMatrix::Zero(2 * m, 2 * m);
  for (Index j = 0; j < 2; ++j) {
    for (Index k = 0; k < 2; ++k) {
      ComplexMatrix sys = ComplexMatrix::Zero(2, 2);
      sys(j, k) = 1.0;
      u += tensor(sys, tilde[static_cast<std::size_t>(k)] *
                           tilde[static_cast<std::size_t>(j)].adjoint());
    }
  }
  const ComplexMatrix p_perp = ComplexMatrix::Identity(m, m) - env1 * env1.adjoint() -
                               env2 * env2.adjoint();
  u += tensor(ComplexMatrix::Identity(2, 2), p_perp);
  return u;
}

SwapReport summarize_swap(const ExtremalCurves& curves, double threshold) {
  if (curves.points.empty()) throw Error(ErrorKind::EmptyCurve, "no extremal points to scan");
  SwapReport r;
  r.threshold = threshold;
  r.worst_e = -1.0;
  for (const ExtremalPoint& pt : curves.points) {
    if (pt.worst_e.value > r.worst_e) {
      r.t_best = pt.t;
      r.worst_e = pt.worst_e.value;
      r.best_s = pt.best_s.value;
    }
  }
  r.full_transfer = r.worst_e >= threshold;
  return r;
}

SwapReport swap_scan(const Propagator& p, const EnvironmentKet& phi,
                     std::span<const double> t_grid, double threshold,
                     const SphereSearchOptions& opts) {
  return summarize_swap(extremal_pairs(p, phi, t_grid, opts), threshold);
}

// ---- swap search ---------------------------------------------------------

namespace {

struct FreeParameter {
  std::vector<double> ArrayConfig::*field;
  std::size_t index;
  double lo;
  double hi;
};

std::vector<FreeParameter> free_parameters(const SwapSearchSpec& spec) {
  static constexpr std::vector<double> ArrayConfig::*fields[] = {
      &ArrayConfig::beta_h,  &ArrayConfig::beta_v,  &ArrayConfig::kappa_h,
      &ArrayConfig::kappa_v, &ArrayConfig::alpha_x, &ArrayConfig::alpha_y};
  std::vector<FreeParameter> out;
  for (auto field : fields) {
    const auto& lo = spec.lower.*field;
    const auto& hi = spec.upper.*field;
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (hi[i] < lo[i]) {
        throw Error(ErrorKind::ConfigInvalid, "swap search bounds: upper < lower");
      }
      if (hi[i] > lo[i]) out.push_back({field, i, lo[i], hi[i]});
    }
  }
  return out;
}

// Reflect into [0, 1].
double fold_unit(double x) {
  double r = std::fmod(std::abs(x), 2.0);
  return r > 1.0 ? 2.0 - r : r;
}

ArrayConfig decode(const SwapSearchSpec& spec, const std::vector<FreeParameter>& params,
                   const RealVector& x) {
  ArrayConfig cfg = spec.lower;
  for (std::size_t k = 0; k < params.size(); ++k) {
    const auto& fp = params[k];
    (cfg.*fp.field)[fp.index] = fp.lo + fold_unit(x(static_cast<Index>(k))) * (fp.hi - fp.lo);
  }
  return cfg;
}

double coarse_objective(const ArrayConfig& cfg, const EnvironmentKet& phi,
                        std::span<const double> t_grid, const std::vector<BlochVector>& dirs) {
  const Propagator p(build_hamiltonian(cfg));
  double best = 0.0;
  for (double t : t_grid) {
    const DirectionalDistances dd(p.at(t), phi);
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& n : dirs) {
      worst = std::min(worst, dd.environment(n));
      if (worst <= best) break;
    }
    best = std::max(best, worst);
  }
  return best;
}

}  // namespace

SwapSearchResult search_swap_config(const SwapSearchSpec& spec, std::size_t budget,
                                    std::uint64_t seed) {
  spec.lower.validate();
  spec.upper.validate();
  if (spec.lower.num_guides != spec.upper.num_guides) {
    throw Error(ErrorKind::ConfigInvalid, "swap search bounds disagree on num_guides");
  }
  if (spec.t_grid.empty()) throw Error(ErrorKind::ConfigInvalid, "swap search needs a time grid");
  if (budget < 1) throw Error(ErrorKind::ConfigInvalid, "swap search budget must be >= 1");

  const auto params = free_parameters(spec);
  const EnvironmentKet phi =
      EnvironmentKet::guide(static_cast<Index>(spec.lower.num_guides), spec.input_guide);
  // Upper half of a 2N-point lattice; D(n) = D(-n).
  std::vector<BlochVector> dirs = sphere_directions(2 * spec.coarse_directions);
  dirs.resize(spec.coarse_directions);

  std::size_t evals = 0;
  RealVector best_x = RealVector::Zero(static_cast<Index>(params.size()));
  double best_value = -1.0;
  auto objective = [&](const RealVector& x) {
    if (evals >= budget) return std::numeric_limits<double>::infinity();
    ++evals;
    const double v = coarse_objective(decode(spec, params, x), phi, spec.t_grid, dirs);
    if (v > best_value) {
      best_value = v;
      best_x = x;
    }
    return -v;
  };

  SplitMix64 rng(seed);
  if (params.empty()) {
    objective(best_x);
  } else {
    while (evals < budget && best_value < spec.stop_at) {
      RealVector x0(static_cast<Index>(params.size()));
      for (Index k = 0; k < x0.size(); ++k) x0(k) = rng.uniform();
      SimplexOptions so{0.15, 1e-9, 1e-7, std::min(spec.evals_per_start, budget - evals)};
      nelder_mead(objective, x0, so);
    }
  }

  SwapSearchResult res;
  res.config = decode(spec, params, best_x);
  res.config.name = "swap-search-seed" + std::to_string(seed);
  res.config.validate();
  res.objective = std::max(best_value, 0.0);
  res.evaluations = evals;
  res.budget_exhausted = best_value < spec.stop_at;
  res.report = swap_scan(Propagator(build_hamiltonian(res.config)), phi, spec.t_grid,
                         spec.threshold);
  return res;
}

}  // namespace waveflow

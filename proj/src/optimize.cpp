#include "waveflow/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace waveflow {

SimplexResult nelder_mead(const std::function<double(const RealVector&)>& f, const RealVector& x0,
                          const SimplexOptions& opts) {
  const Index n = x0.size();
  std::vector<RealVector> pts(static_cast<std::size_t>(n + 1), x0);
  std::vector<double> vals(static_cast<std::size_t>(n + 1));
  std::size_t evals = 0;
  auto eval = [&](const RealVector& x) {
    ++evals;
    return f(x);
  };
  for (Index i = 0; i < n; ++i) pts[static_cast<std::size_t>(i + 1)](i) += opts.initial_step;
  for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = eval(pts[i]);

  std::vector<std::size_t> order(pts.size());
  while (evals < opts.max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[order.size() - 2];

    double diam = 0.0;
    for (const auto& p : pts) diam = std::max(diam, (p - pts[best]).cwiseAbs().maxCoeff());
    if (vals[worst] - vals[best] <= opts.f_tol && diam <= opts.x_tol) break;
    if (diam <= 1e-15) break;

    RealVector centroid = RealVector::Zero(n);
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (i != worst) centroid += pts[i];
    centroid /= static_cast<double>(n);

    const RealVector xr = centroid + (centroid - pts[worst]);
    const double fr = eval(xr);
    if (fr < vals[best]) {
      const RealVector xe = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const RealVector xc = outside ? RealVector(centroid + 0.5 * (xr - centroid))
                                  : RealVector(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = eval(xc);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    // shrink toward the best vertex
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = eval(pts[i]);
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  const auto k = static_cast<std::size_t>(it - vals.begin());
  return {pts[k], vals[k], evals};
}

std::vector<BlochVector> sphere_directions(std::size_t n) {
  std::vector<BlochVector> dirs;
  dirs.reserve(n);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double a = golden * static_cast<double>(i);
    dirs.push_back({r * std::cos(a), r * std::sin(a), z});
  }
  return dirs;
}

BlochVector canonical_direction(const BlochVector& n) {
  const bool flip = n.z < 0 || (n.z == 0 && (n.y < 0 || (n.y == 0 && n.x < 0)));
  return flip ? -n : n;
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

}  // namespace waveflow

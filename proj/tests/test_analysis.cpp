#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "waveflow/analysis.hpp"
#include "waveflow/errors.hpp"
#include "waveflow/scenario.hpp"

using namespace waveflow;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected waveflow::Error");
  return ErrorKind::IoError;
}

double blp(const std::vector<double>& t, const std::vector<double>& d) {
  return blp_measure(t, d).measure;
}

SwapSearchSpec spec_for(const std::string& scenario_file) {
  const Scenario s = load_scenario(std::string(WAVEFLOW_SOURCE_DIR) + "/scenarios/" + scenario_file);
  SwapSearchSpec spec;
  spec.lower = s.require_search().lower;
  spec.upper = s.require_search().upper;
  spec.input_guide = *s.input_env.guide;
  spec.t_grid = s.require_grid().points();
  spec.threshold = s.threshold;
  spec.stop_at = s.require_search().stop_at;
  return spec;
}

}  // namespace

TEST_CASE("blp_measure examples") {
  const std::vector<double> t{0, 1, 2, 3, 4};
  CHECK(blp(t, {0.7, 0.7, 0.7, 0.7, 0.7}) == 0.0);
  CHECK(blp(t, {1.0, 0.8, 0.5, 0.2, 0.0}) == 0.0);

  const BlpResult r = blp_measure(t, std::vector<double>{1.0, 0.5, 0.8, 0.2, 0.9}, "x");
  CHECK(r.measure == doctest::Approx(1.0));
  CHECK(r.pair_label == "x");
  REQUIRE(r.witness_intervals.size() == 2);
  CHECK(r.witness_intervals[0] == std::pair<double, double>{1.0, 2.0});
  CHECK(r.witness_intervals[1] == std::pair<double, double>{3.0, 4.0});

  // adjacent rising steps merge into one interval
  const BlpResult m = blp_measure(t, std::vector<double>{0.0, 0.1, 0.3, 0.2, 0.2});
  CHECK(m.measure == doctest::Approx(0.3));
  REQUIRE(m.witness_intervals.size() == 1);
  CHECK(m.witness_intervals[0] == std::pair<double, double>{0.0, 2.0});

  // roundoff-sized wiggles are not witnesses
  CHECK(blp(t, {1.0, 1.0 + 1e-15, 1.0, 1.0 + 2e-16, 1.0}) == 0.0);
  const BlpResult one = blp_measure(std::vector<double>{0, 1, 2}, std::vector<double>{1.0, 0.0, 0.8});
  CHECK(one.measure == doctest::Approx(0.8));
  CHECK(one.witness_intervals.size() == 1);
}

TEST_CASE("blp_measure errors") {
  CHECK(kind_of([] { blp({}, {}); }) == ErrorKind::EmptyCurve);
  CHECK(kind_of([] { blp({0.0}, {0.4}); }) == ErrorKind::EmptyCurve);
  CHECK(kind_of([] { blp({0, 2, 1}, {1, 1, 1}); }) == ErrorKind::NonMonotoneTimeGrid);
  CHECK(kind_of([] { blp({0, 1, 1}, {1, 1, 1}); }) == ErrorKind::NonMonotoneTimeGrid);
  CHECK_THROWS_AS(blp({0, 1, 2}, {1, 1}), Error);
}

TEST_CASE("blp_measure properties") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> ta, da, tb, db;
    for (int i = 0; i < 20; ++i) {
      ta.push_back(i);
      da.push_back(u(rng));
      tb.push_back(20 + i);
      db.push_back(u(rng));
    }
    std::vector<double> t = ta, d = da;
    t.insert(t.end(), tb.begin(), tb.end());
    d.insert(d.end(), db.begin(), db.end());
    const double joined = blp(t, d);
    CHECK(joined >= 0.0);
    CHECK(std::abs(joined - (blp(ta, da) + blp(tb, db) + std::max(0.0, db.front() - da.back()))) <
          1e-12);
  }

  // cos^2 on grids that contain every extremum: two unit rises in [0, 2 pi]
  for (std::size_t k : {1, 2, 5, 25, 250}) {
    const auto grid = linspace(0, 2 * kPi, 4 * k + 1);
    std::vector<double> d;
    for (double x : grid) d.push_back(std::pow(std::cos(x), 2));
    CHECK(blp(grid, d) == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("DirectionalDistances matches explicit evolution") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ut(0, 10);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = 1 + trial % 5;
    const ArrayConfig c = oracle::random_config(rng, m, trial % 2 == 0);
    const EnvironmentKet phi(oracle::random_ket(rng, static_cast<Index>(m)));
    const Propagator p(build_hamiltonian(c));
    const double t = ut(rng);
    const DirectionalDistances dd(p.at(t), phi);
    for (int k = 0; k < 5; ++k) {
      const BlochVector n = oracle::random_unit(rng);
      const TraceDistances bf = evolved_distances(p, phi, antipodal_pair(n), t);
      CHECK(std::abs(dd.system(n) - bf.system) < 1e-10);
      CHECK(std::abs(dd.environment(n) - bf.environment) < 1e-10);
      CHECK(std::abs(dd.system(n) - dd.system(-n)) < 1e-12);
    }
  }
}

TEST_CASE("extremal pairs on diagonal arrays follow the analytic extrema") {
  // D_S(n)^2 = n_z^2 + |gamma|^2 (1 - n_z^2), D_E(n) = |n_z| sqrt(1 - |gamma|^2)
  const ArrayConfig ref = reference_five_guide();
  const EnvironmentKet center = EnvironmentKet::guide(5, 3);
  const Propagator p(build_h0(ref));
  const auto grid = linspace(0, 10, 101);
  const ExtremalCurves curves = extremal_pairs(p, center, grid);
  REQUIRE(curves.points.size() == grid.size());
  double worst = 0.0;
  for (const auto& pt : curves.points) {
    const double g = std::abs(overlap_parameter(ref, center, pt.t));
    const double e = std::sqrt(std::max(0.0, 1.0 - g * g));
    worst = std::max({worst, std::abs(pt.best_s.value - 1.0), std::abs(pt.worst_s.value - g),
                      std::abs(pt.best_e.value - e), std::abs(pt.worst_e.value)});
    CHECK(std::abs(pt.best_s.direction.norm() - 1.0) < 1e-12);
  }
  CHECK(worst < 1e-6);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t m = 2 + trial % 4;
    const ArrayConfig c = oracle::random_config(rng, m, false);
    const EnvironmentKet phi(oracle::random_ket(rng, static_cast<Index>(m)));
    const double t = 0.7 * (trial + 1);
    const ExtremalPoint pt = extremal_at(DirectionalDistances(Propagator(build_h0(c)).at(t), phi), t);
    const double g = std::abs(overlap_parameter(c, phi, t));
    CHECK(std::abs(pt.best_s.value - 1.0) < 1e-6);
    CHECK(std::abs(pt.worst_s.value - g) < 1e-6);
    CHECK(std::abs(pt.best_e.value - std::sqrt(1.0 - g * g)) < 1e-6);
    CHECK(std::abs(pt.worst_e.value) < 1e-6);
  }
}

TEST_CASE("generalized swap") {
  SUBCASE("two guides: plain SWAP") {
    ComplexVector e1(2), e2(2);
    e1 << 1, 0;
    e2 << 0, 1;
    const ComplexMatrix u = build_generalized_swap(e1, e2);
    ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
    swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
    CHECK(oracle::max_abs(u - swap) < 1e-15);
  }
  std::mt19937_64 rng(4);
  for (Index m : {2, 3, 5}) {
    const ComplexMatrix q = oracle::random_unitary(rng, m);
    const ComplexVector e1 = q.col(0), e2 = q.col(1);
    const ComplexMatrix u = build_generalized_swap(e1, e2);
    CHECK(unitarity_defect(u) < 1e-12);
    CHECK(oracle::max_abs(u * u - ComplexMatrix::Identity(2 * m, 2 * m)) < 1e-12);

    // |psi> (x) |1~> -> |H> (x) (psi_H |1~> + psi_V |2~>)
    const PureQubitState psi(0.4, 1.3);
    const ComplexVector out = u * tensor(psi.ket(), e1);
    ComplexVector h(2);
    h << 1, 0;
    const ComplexVector expected = tensor(h, psi.ket()(0) * e1 + psi.ket()(1) * e2);
    CHECK(oracle::max_abs(out - expected) < 1e-12);

    const ExtremalPoint pt = extremal_at(DirectionalDistances(u, EnvironmentKet(e1)), 1.0);
    CHECK(pt.worst_e.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(pt.best_e.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(pt.best_s.value) < 1e-9);
  }
  ComplexVector a(3), b(3);
  a << 1, 0, 0;
  b << 1, 1, 0;
  CHECK(kind_of([&] { build_generalized_swap(a, b / b.norm()); }) == ErrorKind::NonOrthogonalEnvPair);
  CHECK(kind_of([&] { build_generalized_swap(a, 2.0 * a.reverse()); }) ==
        ErrorKind::NonOrthogonalEnvPair);
  CHECK(kind_of([&] { build_generalized_swap(a, ComplexVector::Zero(2)); }) ==
        ErrorKind::DimensionMismatch);
}

TEST_CASE("swap detection") {
  const ArrayConfig ref = reference_five_guide();
  const SwapReport r =
      swap_scan(Propagator(build_h0(ref)), EnvironmentKet::guide(5, 3), linspace(0, 10, 51));
  CHECK_FALSE(r.full_transfer);
  CHECK(r.worst_e < 1e-6);

  ExtremalCurves c;
  c.points.resize(3);
  c.points[0].t = 0.0;
  c.points[1].t = 1.0;
  c.points[1].worst_e.value = 0.97;
  c.points[1].best_s.value = 0.02;
  c.points[2].t = 2.0;
  c.points[2].worst_e.value = 0.5;
  const SwapReport s = summarize_swap(c, 0.95);
  CHECK(s.t_best == 1.0);
  CHECK(s.full_transfer);
  CHECK(s.best_s == 0.02);
  CHECK_FALSE(summarize_swap(c, 0.98).full_transfer);
  CHECK(kind_of([] { summarize_swap(ExtremalCurves{}); }) == ErrorKind::EmptyCurve);
}

TEST_CASE("shipped swap config realizes a swap") {
  const ArrayConfig cfg = load_array_config(std::string(WAVEFLOW_SOURCE_DIR) + "/configs/swap-h1.json");
  CHECK_FALSE(cfg.is_diagonal());
  const SwapReport r = swap_scan(Propagator(build_hamiltonian(cfg)),
                                 EnvironmentKet::guide(cfg.num_guides, 3), linspace(0, 12, 241));
  CHECK(r.full_transfer);
  CHECK(r.worst_e >= 0.95);
  CHECK(r.best_s <= 0.05);
}

TEST_CASE("swap search") {
  SUBCASE("collapsed diagonal box finds nothing") {
    SwapSearchSpec spec;
    spec.lower = spec.upper = reference_five_guide();
    spec.input_guide = 3;
    spec.t_grid = linspace(0, 10, 41);
    const SwapSearchResult r = search_swap_config(spec, 200, 1);
    // the coarse grid misses the equator by a little; the refined report does not
    CHECK(r.objective < 0.05);
    CHECK(r.report.worst_e < 1e-6);
    CHECK_FALSE(r.report.full_transfer);
    CHECK(r.budget_exhausted);
  }
  SUBCASE("single guide has no room for a swap") {
    SwapSearchSpec spec;
    spec.lower = ArrayConfig::uniform(1, -2, -2, 0, 0);
    spec.upper = ArrayConfig::uniform(1, 2, 2, 0, 0);
    spec.lower.alpha_x = spec.lower.alpha_y = {-2};
    spec.upper.alpha_x = spec.upper.alpha_y = {2};
    spec.input_guide = 1;
    spec.t_grid = linspace(0, 10, 41);
    const SwapSearchResult r = search_swap_config(spec, 300, 3);
    CHECK(r.report.worst_e < 1e-6);
    CHECK_FALSE(r.report.full_transfer);
  }
  SUBCASE("two guides reach a full transfer, deterministically") {
    const SwapSearchSpec spec = spec_for("swap-search-m2.json");
    const SwapSearchResult a = search_swap_config(spec, 5000, 1);
    CHECK(a.objective >= 0.9);
    CHECK(a.report.full_transfer);
    CHECK(a.evaluations <= 5000);
    const SwapSearchResult b = search_swap_config(spec, 5000, 1);
    CHECK(to_json(a.config).dump() == to_json(b.config).dump());
    CHECK(a.objective == b.objective);
    CHECK(a.evaluations == b.evaluations);
  }
  SUBCASE("tiny budget reports exhaustion") {
    const SwapSearchResult r = search_swap_config(spec_for("swap-search-m5.json"), 5, 11);
    CHECK(r.budget_exhausted);
    CHECK(r.evaluations <= 5);
    CHECK_NOTHROW(r.config.validate());
  }
  SUBCASE("mismatched bounds are rejected") {
    SwapSearchSpec spec;
    spec.lower = ArrayConfig::uniform(2, 0, 0, 1, 1);
    spec.upper = ArrayConfig::uniform(3, 0, 0, 1, 1);
    spec.t_grid = linspace(0, 1, 3);
    CHECK_THROWS_AS(search_swap_config(spec, 10, 1), Error);
  }
}

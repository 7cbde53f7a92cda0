#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "srlab/models.hpp"
#include "srlab/sr_distance.hpp"

using namespace srlab;

namespace {

OptimizerConfig quick_cfg(std::uint64_t seed = 1) {
  OptimizerConfig cfg;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("coincident endpoints give the zero estimate") {
  const auto m = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  const auto est = estimate_upper(m.alpha, {0.1, 0.2, 0.3}, {0.1, 0.2, 0.3}, quick_cfg());
  REQUIRE(est.value == 0.0);
  REQUIRE(est.converged());
  REQUIRE(est.path.trivial());
}

TEST_CASE("vertical oracle closed form") {
  REQUIRE(heisenberg_vertical_exact(0.0) == 0.0);
  REQUIRE(heisenberg_vertical_exact(0.1) ==
          Catch::Approx(oracles::dido_length(0.1)).margin(1e-15));
  REQUIRE(heisenberg_vertical_exact(0.1) == Catch::Approx(1.1209982432795858).margin(1e-12));
  REQUIRE(heisenberg_vertical_exact(0.4) / heisenberg_vertical_exact(0.1) == 2.0);
}

TEST_CASE("horizontal target: straight segment is optimal") {
  const auto m = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  const auto est = estimate_upper(m.alpha, {0, 0, 0}, {1, 0, 0}, quick_cfg(5));
  REQUIRE(est.converged());
  REQUIRE(est.value == Catch::Approx(1.0).epsilon(0.01));
  REQUIRE(est.value >= 1.0 - est.endpoint_gap);  // lengths dominate chord
}

TEST_CASE("vertical target matches the isoperimetric oracle") {
  const auto m = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  const auto est = estimate_upper(m.alpha, {0, 0, 0}, {0, 0, 0.1}, quick_cfg(7));
  REQUIRE(est.converged());
  REQUIRE(est.value == Catch::Approx(oracles::dido_length(0.1)).epsilon(0.03));
  REQUIRE(est.defect <= quick_cfg().defect_tol);
}

TEST_CASE("estimates are deterministic for a fixed seed") {
  const auto m = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  const auto a = estimate_upper(m.alpha, {0, 0, 0}, {0.1, 0.05, 0.02}, quick_cfg(42));
  const auto b = estimate_upper(m.alpha, {0, 0, 0}, {0.1, 0.05, 0.02}, quick_cfg(42));
  REQUIRE(a.value == b.value);
  REQUIRE(a.endpoint_gap == b.endpoint_gap);
  REQUIRE(a.iterations == b.iterations);
}

TEST_CASE("more restarts never worsen the estimate") {
  const auto m = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  OptimizerConfig two = quick_cfg(11);
  two.restarts = 2;
  OptimizerConfig six = quick_cfg(11);
  six.restarts = 6;
  const auto coarse = estimate_upper(m.alpha, {0, 0, 0}, {0, 0, 0.05}, two);
  const auto fine = estimate_upper(m.alpha, {0, 0, 0}, {0, 0, 0.05}, six);
  REQUIRE(coarse.converged());
  REQUIRE(fine.value <= coarse.value + 1e-12);
}

TEST_CASE("estimate is symmetric within optimizer tolerance") {
  const auto m = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  const auto fwd = estimate_upper(m.alpha, {0, 0, 0}, {0, 0, 0.08}, quick_cfg(13));
  const auto bwd = estimate_upper(m.alpha, {0, 0, 0.08}, {0, 0, 0}, quick_cfg(13));
  REQUIRE(fwd.converged());
  REQUIRE(bwd.converged());
  REQUIRE(fwd.value == Catch::Approx(bwd.value).epsilon(0.02));
}

TEST_CASE("warm-started concatenation respects the triangle inequality") {
  const auto m = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  const Vec3 p{0, 0, 0}, q{0.1, 0, 0.02}, r{0.2, 0, 0};
  const auto leg1 = estimate_upper(m.alpha, p, q, quick_cfg(17));
  const auto leg2 = estimate_upper(m.alpha, q, r, quick_cfg(19));
  REQUIRE(leg1.converged());
  REQUIRE(leg2.converged());

  ControlSequence joined = leg1.controls;
  REQUIRE(joined.step == leg2.controls.step);
  joined.controls.insert(joined.controls.end(), leg2.controls.controls.begin(),
                         leg2.controls.controls.end());
  const auto direct = estimate_upper(m.alpha, p, r, quick_cfg(23), &joined);
  REQUIRE(direct.converged());
  REQUIRE(direct.value <= leg1.value + leg2.value + 1e-6);
}

TEST_CASE("upper-bound soundness against the chord") {
  const auto m = build_model(ModelKind::perturbed, 0.5, 0.05, 29);
  const MetricChart chart;
  const Vec3 p{0.02, -0.01, 0.0};
  const Vec3 q{0.05, 0.03, 0.01};
  const auto est = estimate_upper(m.alpha, p, q, quick_cfg(31));
  REQUIRE(est.converged());
  REQUIRE(est.value >= chart.distance(p, q) - est.endpoint_gap - 1e-12);
}

TEST_CASE("unreachable target reports unconverged with the best attempt") {
  const auto fol = build_model(ModelKind::foliation, 0.5, 0.0, 1);
  OptimizerConfig cfg = quick_cfg(37);
  cfg.restarts = 3;
  cfg.step_budget = 4000;
  const auto est = estimate_upper(fol.alpha, {0, 0, 0}, {0, 0, 0.05}, cfg);
  REQUIRE_FALSE(est.converged());
  REQUIRE(est.endpoint_gap >= 0.049);  // the vertical gap cannot be closed
}

TEST_CASE("vertical lower bound from the scaling theorem holds pointwise") {
  // d_hat over-estimates d_H, which is bounded below by c d_R^{1/(1+theta)};
  // comfortable constants make any violation an implementation bug.
  const auto m = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  const double theta = 0.5;
  const double c = 0.9;
  for (double eps : {0.02, 0.01, 0.005}) {
    const auto est = estimate_upper(m.alpha, {0, 0, 0}, {0, 0, eps}, quick_cfg(41));
    REQUIRE(est.converged());
    REQUIRE(est.value >= c * std::pow(eps, 1.0 / (1.0 + theta)));
  }
}

TEST_CASE("probe stays below the area cap and loops realize half of it") {
  const auto m = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  const double eps = 0.2;
  const auto report = reachability_probe(m.alpha, {0, 0, 0}, eps, 60, 3);
  const double cap = oracles::dido_area_cap(eps);
  REQUIRE(report.max_abs_dz <= cap * 1.01);
  REQUIRE(report.max_abs_dz >= 0.5 * cap);
}

TEST_CASE("foliation probe has no vertical reach") {
  const auto fol = build_model(ModelKind::foliation, 0.5, 0.0, 1);
  const auto report = reachability_probe(fol.alpha, {0.1, 0.2, 0.3}, 0.2, 30, 5);
  REQUIRE(report.max_abs_dz == 0.0);
}

TEST_CASE("probe reach shrinks monotonically with the budget") {
  const auto m = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  double prev = std::numeric_limits<double>::infinity();
  for (double eps : {0.1, 0.05, 0.025}) {
    const auto report = reachability_probe(m.alpha, {0, 0, 0}, eps, 30, 7);
    REQUIRE(report.max_riemannian <= eps);  // length budget dominates reach
    REQUIRE(report.max_riemannian < prev);
    prev = report.max_riemannian;
  }
}

TEST_CASE("optimizer config validation") {
  OptimizerConfig cfg;
  cfg.segments = 1;
  REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = OptimizerConfig{};
  cfg.endpoint_tol_rel = 0.0;
  REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = OptimizerConfig{};
  cfg.penalty_growth = 1.0;
  REQUIRE_THROWS_AS(cfg.validate(), std::invalid_argument);
}

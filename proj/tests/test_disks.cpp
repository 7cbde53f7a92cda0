#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "srlab/disks.hpp"
#include "srlab/models.hpp"

using namespace srlab;

namespace {

Polyline circle_loop(double radius, int segments, const Vec3& center = {0, 0, 0}) {
  std::vector<Vec3> verts;
  for (int i = 0; i < segments; ++i) {
    const double a = 2.0 * std::numbers::pi * i / segments;
    verts.push_back(center + Vec3{radius * std::cos(a), radius * std::sin(a), 0.0});
  }
  return Polyline::loop(std::move(verts));
}

Polyline wavy_loop(double radius, int segments) {
  std::vector<Vec3> verts;
  for (int i = 0; i < segments; ++i) {
    const double a = 2.0 * std::numbers::pi * i / segments;
    const double r = radius * (1.0 + 0.2 * std::cos(3.0 * a));
    verts.push_back({r * std::cos(a), r * std::sin(a), 0.3 * radius * std::sin(2.0 * a)});
  }
  return Polyline::loop(std::move(verts));
}

FillOptions wide_open() {
  FillOptions opts;
  opts.delta_m = 100.0;
  return opts;
}

}  // namespace

TEST_CASE("flat unit circle fills to area pi") {
  const auto filled = fill_disk(circle_loop(1.0, 128), wide_open());
  REQUIRE(filled.checks.area == Catch::Approx(std::numbers::pi).epsilon(0.01));
  REQUIRE(is_combinatorial_disk(filled.disk));
  REQUIRE(filled.checks.area_bound_ok);
  REQUIRE(filled.checks.neighborhood_ok);
}

TEST_CASE("flat circle meets the planar isoperimetric equality case") {
  const auto filled = fill_disk(circle_loop(1.0, 128), wide_open());
  const double glen = filled.checks.boundary_len;
  REQUIRE(filled.checks.area <= glen * glen / (4.0 * std::numbers::pi) * 1.01);
}

TEST_CASE("out-and-back loop fills with zero area") {
  const Polyline loop = Polyline::loop({{0, 0, 0}, {0.05, 0, 0}, {0.1, 0, 0}, {0.05, 0, 0}});
  const auto filled = fill_disk(loop);
  REQUIRE(filled.checks.area <= 1e-8);
  REQUIRE(filled.checks.max_dist_to_boundary <= 1e-12);
}

TEST_CASE("fill_disk rejects bad input") {
  REQUIRE_THROWS_AS(fill_disk(Polyline::open({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}})),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(fill_disk(Polyline::loop({{0, 0, 0}, {0.1, 0, 0}})), std::invalid_argument);
  // loop longer than the smallness threshold
  REQUIRE_THROWS_WITH(fill_disk(circle_loop(1.0, 64)),
                      Catch::Matchers::ContainsSubstring("delta_m"));
}

TEST_CASE("filling never moves boundary vertices and never grows the area") {
  const Polyline loop = wavy_loop(0.06, 48);
  FillOptions opts;
  opts.smoothing_iters = 50;
  const auto filled = fill_disk(loop, opts);
  REQUIRE(is_combinatorial_disk(filled.disk));
  REQUIRE(filled.checks.area <= filled.checks.initial_area);
  REQUIRE(filled.disk.boundary.size() == loop.size());
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Vec3& v = filled.disk.vertices[static_cast<std::size_t>(filled.disk.boundary[i])];
    REQUIRE(v == loop.vertices()[i]);
  }
}

TEST_CASE("small corpus loops satisfy the filling bounds") {
  const std::vector<Polyline> corpus{
      circle_loop(0.05, 48), circle_loop(0.07, 64, {0.1, -0.1, 0.2}), wavy_loop(0.05, 48),
      Polyline::loop({{0, 0, 0}, {0.05, 0, 0}, {0.05, 0.05, 0}, {0, 0.05, 0}}),
      Polyline::loop({{0, 0, 0}, {0.05, 0, 0}, {0.1, 0, 0}, {0.05, 0, 0}})};
  for (const Polyline& loop : corpus) {
    REQUIRE(path_length(loop) < FillOptions{}.delta_m);
    const auto filled = fill_disk(loop);
    REQUIRE(filled.checks.area_bound_ok);
    REQUIRE(filled.checks.neighborhood_ok);
    REQUIRE(is_combinatorial_disk(filled.disk));
  }
}

TEST_CASE("boundary integral of an exact form vanishes on cycles") {
  const auto fol = build_model(ModelKind::foliation, 0.5, 0.0, 1);
  REQUIRE(std::abs(boundary_integral(fol.alpha, wavy_loop(0.5, 64))) <= 1e-10);
}

TEST_CASE("contact form integral over the unit circle is minus pi") {
  const auto h = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  const Polyline ccw = circle_loop(1.0, 128);
  const double integral = boundary_integral(h.alpha, ccw);
  REQUIRE(integral == Catch::Approx(-std::numbers::pi).epsilon(0.001));
  REQUIRE(boundary_integral(h.alpha, ccw.reversed()) == Catch::Approx(-integral).margin(1e-12));
}

TEST_CASE("quadrature refinement study on the analytic circle") {
  const auto h = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  double prev_err = 0.0;
  for (int segments : {32, 64, 128}) {
    const double integral = boundary_integral(h.alpha, circle_loop(1.0, segments));
    const double err = std::abs(integral + std::numbers::pi) / std::numbers::pi;
    if (segments == 64) REQUIRE(prev_err / err >= 3.0);  // second-order shrink
    if (segments == 128) REQUIRE(err <= 0.001);
    prev_err = err;
  }
}

TEST_CASE("stokes ratio of the flat unit disk") {
  const auto h = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  const TriangulatedDisk disk = fill_disk(circle_loop(1.0, 128), wide_open()).disk;
  REQUIRE(stokes_ratio(h.alpha, disk, 0.5, 10.0) ==
          Catch::Approx(1.0 / std::sqrt(2.0)).epsilon(0.001));

  const auto fol = build_model(ModelKind::foliation, 0.5, 0.0, 1);
  REQUIRE(stokes_ratio(fol.alpha, disk, 0.5, 10.0) <= 1e-10);
}

TEST_CASE("stokes ratio is linear in the form") {
  const auto h = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  OneForm scaled = h.alpha;
  scaled.coeff = [c = h.alpha.coeff](const Vec3& x) { return 3.0 * c(x); };
  const TriangulatedDisk disk = fill_disk(wavy_loop(0.06, 48)).disk;
  const double base = stokes_ratio(h.alpha, disk, 0.5);
  REQUIRE(stokes_ratio(scaled, disk, 0.5) == Catch::Approx(3.0 * base).epsilon(1e-12));
}

TEST_CASE("stokes ratio rejects degenerate and oversized disks") {
  const auto h = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  const TriangulatedDisk big = fill_disk(circle_loop(1.0, 64), wide_open()).disk;
  REQUIRE_THROWS_WITH(stokes_ratio(h.alpha, big, 0.5, 0.5),
                      Catch::Matchers::ContainsSubstring("sigma"));

  TriangulatedDisk degenerate;
  degenerate.vertices = {{0, 0, 0}, {0.1, 0, 0}, {0.2, 0, 0}};
  degenerate.triangles = {{0, 1, 2}};
  degenerate.boundary = {0, 1, 2};
  REQUIRE_THROWS_AS(stokes_ratio(h.alpha, degenerate, 0.5), std::invalid_argument);
}

TEST_CASE("estimate_K vanishes for an exact form") {
  const auto fol = build_model(ModelKind::foliation, 0.5, 0.0, 1);
  DiskFamily fam;
  const auto est = estimate_K(fol.alpha, 0.5, fam, 50, 7);
  REQUIRE(est.admissible > 0);
  REQUIRE(est.k_hat <= 1e-9);
}

TEST_CASE("estimate_K dominates every sample and is monotone in trials") {
  const auto h = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  DiskFamily fam;
  fam.kind = DiskFamily::Kind::flat;
  fam.r_min = 0.05;
  fam.r_max = 0.4;
  fam.sigma = 10.0;
  const long trials = 120;
  const auto est = estimate_K(h.alpha, 0.5, fam, trials, 11);
  REQUIRE(est.admissible == trials);

  // exhaustive recomputation over the same trial streams
  for (long t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(11, static_cast<std::uint64_t>(t));
    const TriangulatedDisk disk = detail::family_disk(fam, rng, t);
    const double ratio = stokes_ratio(h.alpha, disk, 0.5, fam.sigma) / h.alpha.norm_upper;
    REQUIRE(ratio <= est.k_hat + 1e-12);
  }

  const auto fewer = estimate_K(h.alpha, 0.5, fam, 60, 11);
  REQUIRE(fewer.k_hat <= est.k_hat);
}

TEST_CASE("smooth Stokes bound: integral over area stays below the sup of d alpha") {
  // d(contact form) = -dx ^ dy has sup norm 1
  const auto h = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  DiskFamily fam;
  fam.kind = DiskFamily::Kind::mixed;
  fam.r_min = 0.05;
  fam.r_max = 0.4;
  fam.sigma = 10.0;
  for (long t = 0; t < 100; ++t) {
    Rng rng = Rng::stream(13, static_cast<std::uint64_t>(t));
    const TriangulatedDisk disk = detail::family_disk(fam, rng, t);
    const double ratio = std::abs(boundary_integral(h.alpha, disk)) / disk.area();
    REQUIRE(ratio <= 1.005);
  }
}

TEST_CASE("perturbed model has a finite empirical Stokes constant") {
  const auto m = build_model(ModelKind::perturbed, 0.5, 0.05, 3);
  const OneForm u = unit_form(m.alpha);
  DiskFamily fam;  // defaults stay below sigma = 0.5
  const auto est = estimate_K(u, 0.5, fam, 300, 17);
  REQUIRE(est.admissible >= 250);
  REQUIRE(std::isfinite(est.k_hat));
  REQUIRE(est.k_hat > 0.0);
}

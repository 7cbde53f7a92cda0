#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "srlab/models.hpp"
#include "srlab/paths.hpp"

using namespace srlab;

namespace {

// Controls tracing an axis-aligned square of side s in the frame plane.
ControlSequence square_controls(double side, int steps_per_side, const Vec3& start) {
  const int n = 4 * steps_per_side;
  const double h = 1.0 / n;
  const double speed = 4.0 * side;  // total length 4s over unit time
  std::vector<Vec2> u;
  const Vec2 dirs[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int leg = 0; leg < 4; ++leg)
    for (int k = 0; k < steps_per_side; ++k) u.push_back(speed * dirs[leg]);
  return ControlSequence{std::move(u), h, start};
}

ControlSequence circle_controls(double circumference, int steps, const Vec3& start) {
  std::vector<Vec2> u;
  for (int k = 0; k < steps; ++k) {
    const double a = 2.0 * std::numbers::pi * (k + 0.5) / steps;
    u.push_back({-circumference * std::sin(a), circumference * std::cos(a)});
  }
  return ControlSequence{std::move(u), 1.0 / steps, start};
}

}  // namespace

TEST_CASE("polyline construction enforces nondegenerate segments") {
  REQUIRE_THROWS_AS(Polyline::open({{0, 0, 0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(Polyline::open({{0, 0, 0}, {0, 0, 0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(Polyline::loop({{0, 0, 0}, {1, 0, 0}, {0, 0, 0}}), std::invalid_argument);
  REQUIRE(Polyline::single({1, 2, 3}).trivial());
}

TEST_CASE("path length of simple shapes") {
  REQUIRE(path_length(Polyline::open({{0, 0, 0}, {1, 0, 0}})) == 1.0);
  const Polyline square =
      Polyline::loop({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}});
  REQUIRE(path_length(square) == 4.0);
}

TEST_CASE("length is invariant under refinement and reversal") {
  const std::vector<Vec3> verts{{0, 0, 0}, {0.3, 0.1, -0.2}, {0.7, -0.4, 0.1}, {1.2, 0.5, 0.3}};
  const Polyline p = Polyline::open(verts);
  std::vector<Vec3> refined;
  for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
    refined.push_back(verts[i]);
    refined.push_back(0.5 * (verts[i] + verts[i + 1]));
  }
  refined.push_back(verts.back());
  REQUIRE(path_length(Polyline::open(refined)) == Catch::Approx(path_length(p)).margin(1e-12));
  REQUIRE(path_length(p.reversed()) == Catch::Approx(path_length(p)).margin(1e-15));
}

TEST_CASE("horizontality defect of reference paths") {
  const auto h = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  REQUIRE(horizontality_defect(Polyline::open({{0, 0, 0}, {1, 0, 0}}), h.alpha) == 0.0);
  REQUIRE(horizontality_defect(Polyline::open({{0, 0, 0}, {0, 0, 1}}), h.alpha) == 1.0);

  const auto fol = build_model(ModelKind::foliation, 0.5, 0.0, 1);
  const Polyline planar = Polyline::loop({{0, 0, 0.2}, {1, 0, 0.2}, {1, 1, 0.2}});
  REQUIRE(horizontality_defect(planar, fol.alpha) == 0.0);
}

TEST_CASE("integrating zero controls yields the trivial path") {
  const auto h = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  const ControlSequence c{std::vector<Vec2>(8, Vec2{0, 0}), 0.125, {0.1, 0.2, 0.3}};
  const Polyline p = integrate_controls(c, h.alpha);
  REQUIRE(p.trivial());
  REQUIRE(p.vertices().front() == Vec3{0.1, 0.2, 0.3});
  REQUIRE(path_length(p) == 0.0);
  REQUIRE(horizontality_defect(p, h.alpha) == 0.0);
}

TEST_CASE("square loop holonomy climbs by the enclosed area") {
  const auto h = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  const double side = 0.2;
  const Polyline p = integrate_controls(square_controls(side, 40, {0, 0, 0}), h.alpha);
  const Vec3 end = p.vertices().back();
  // Stokes oracle: height gain equals the signed area of the shadow, side^2.
  REQUIRE(end.z == Catch::Approx(side * side).margin(2e-3));
  REQUIRE(std::abs(end.x) <= 2e-2);
  REQUIRE(std::abs(end.y) <= 2e-2);
}

TEST_CASE("holonomy ratio approaches one as the step shrinks") {
  const auto h = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  const double side = 0.2;
  double prev_err = 1e9;
  for (int steps_per_side : {10, 20, 40}) {
    const Polyline p = integrate_controls(square_controls(side, steps_per_side, {0, 0, 0}), h.alpha);
    const double ratio = p.vertices().back().z / (side * side);
    const double err = std::abs(ratio - 1.0);
    REQUIRE(err < prev_err);
    prev_err = err;
  }
  REQUIRE(prev_err <= 0.1);
}

TEST_CASE("foliation controls never move vertically") {
  const auto fol = build_model(ModelKind::foliation, 0.5, 0.0, 1);
  const Polyline p = integrate_controls(circle_controls(0.5, 64, {0.1, -0.2, 0.37}), fol.alpha);
  for (const Vec3& v : p.vertices()) REQUIRE(v.z == 0.37);

  const Polyline sq = integrate_controls(square_controls(0.3, 16, {0, 0, -0.11}), fol.alpha);
  for (const Vec3& v : sq.vertices()) REQUIRE(v.z == -0.11);
}

TEST_CASE("integration defect vanishes linearly in the step") {
  // Smooth test form with curvature in its coefficients; for the contact
  // model the midpoint rule is exact (linear coefficients) and the defect
  // sits at roundoff, so the O(h) law is exercised here instead.
  OneForm alpha;
  alpha.theta = 0.9;
  alpha.coeff = [](const Vec3& x) {
    return Vec3{0.0, std::sin(2.0 * std::numbers::pi * x.x), 1.0};
  };
  std::vector<double> defects;
  for (int steps : {100, 200, 400}) {  // h = 1e-2, 5e-3, 2.5e-3
    const Polyline p = integrate_controls(circle_controls(0.8, steps, {0.15, 0.1, 0}), alpha);
    defects.push_back(horizontality_defect(p, alpha));
  }
  for (std::size_t i = 0; i + 1 < defects.size(); ++i) {
    const double order = std::log2(defects[i] / defects[i + 1]);
    REQUIRE(order >= 0.9);
  }

  const auto h = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  for (int steps : {100, 200, 400}) {
    const Polyline p = integrate_controls(circle_controls(0.8, steps, {0.15, 0.1, 0}), h.alpha);
    REQUIRE(horizontality_defect(p, h.alpha) <= 1e-10);
  }
}

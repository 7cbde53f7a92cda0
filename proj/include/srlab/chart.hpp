#pragma once

#include <cmath>
#include <stdexcept>

#include "srlab/vec3.hpp"

namespace srlab {

// Axis-aligned box. Axes may individually have zero extent, which restricts
// sampling to a lower-dimensional slice.
struct Box {
  Vec3 lo;
  Vec3 hi;

  double extent(int i) const { return hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)]; }

  double diameter() const {
    Vec3 d = hi - lo;
    return d.norm();
  }

  bool degenerate() const { return diameter() == 0.0; }

  void validate() const {
    for (int i = 0; i < 3; ++i) {
      if (extent(i) < 0.0) throw std::invalid_argument("box: hi must dominate lo in every axis");
    }
    if (degenerate()) throw std::invalid_argument("box: domain has zero extent");
  }
};

// Flat periodic chart: a cube of side `period` with the Euclidean metric,
// identified at opposite faces. All point coordinates are lift coordinates;
// wrapping applies only when measuring distances.
struct MetricChart {
  double period = 1.0;

  void validate() const {
    if (!(period > 0.0)) throw std::invalid_argument("chart.period must be positive");
  }

  double wrap_delta(double d) const {
    const double w = d - period * std::round(d / period);
    return w;
  }

  // Riemannian (torus) distance between two lift points.
  double distance(const Vec3& a, const Vec3& b) const {
    const double dx = wrap_delta(a.x - b.x);
    const double dy = wrap_delta(a.y - b.y);
    const double dz = wrap_delta(a.z - b.z);
    return std::sqrt(dx * dx + dy * dy + dz * dz);
  }

  // Fundamental domain, centered at the origin.
  Box box() const {
    const double h = period / 2.0;
    return Box{{-h, -h, -h}, {h, h, h}};
  }
};

}  // namespace srlab

#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "srlab/one_form.hpp"
#include "srlab/vec3.hpp"

namespace srlab {

// Discrete path in lift coordinates. Closed polylines carry an implicit
// closing segment from the last vertex back to the first. Consecutive
// vertices (including the closing pair) must be distinct; the only degenerate
// form is the single-point trivial path.
class Polyline {
 public:
  Polyline() = default;

  static Polyline open(std::vector<Vec3> vertices) { return Polyline(std::move(vertices), false); }
  static Polyline loop(std::vector<Vec3> vertices) { return Polyline(std::move(vertices), true); }
  static Polyline single(const Vec3& p) {
    Polyline out;
    out.vertices_.push_back(p);
    return out;
  }

  const std::vector<Vec3>& vertices() const { return vertices_; }
  bool closed() const { return closed_; }
  std::size_t size() const { return vertices_.size(); }
  bool trivial() const { return vertices_.size() < 2; }

  std::size_t segment_count() const {
    if (trivial()) return 0;
    return closed_ ? vertices_.size() : vertices_.size() - 1;
  }

  std::pair<Vec3, Vec3> segment(std::size_t i) const {
    const Vec3& a = vertices_[i];
    const Vec3& b = vertices_[(i + 1) % vertices_.size()];
    return {a, b};
  }

  Polyline reversed() const {
    std::vector<Vec3> v(vertices_.rbegin(), vertices_.rend());
    Polyline out;
    out.vertices_ = std::move(v);
    out.closed_ = closed_;
    return out;
  }

 private:
  Polyline(std::vector<Vec3> vertices, bool closed)
      : vertices_(std::move(vertices)), closed_(closed) {
    if (vertices_.size() < 2) throw std::invalid_argument("polyline needs at least 2 vertices");
    const std::size_t n_seg = closed_ ? vertices_.size() : vertices_.size() - 1;
    for (std::size_t i = 0; i < n_seg; ++i) {
      if (vertices_[i] == vertices_[(i + 1) % vertices_.size()])
        throw std::invalid_argument("polyline has a zero-length segment");
    }
  }

  std::vector<Vec3> vertices_;
  bool closed_ = false;
};

inline double path_length(const Polyline& p) {
  double len = 0.0;
  for (std::size_t i = 0; i < p.segment_count(); ++i) {
    const auto [a, b] = p.segment(i);
    len += (b - a).norm();
  }
  return len;
}

// Normalized tangency failure: integral of |alpha_unit(tangent)| over the
// path, by midpoint quadrature per segment, divided by the path length.
// 0 for exactly horizontal paths, 1 for paths everywhere orthogonal to H.
inline double horizontality_defect(const Polyline& p, const OneForm& alpha) {
  if (p.trivial()) return 0.0;
  double acc = 0.0;
  double len = 0.0;
  for (std::size_t i = 0; i < p.segment_count(); ++i) {
    const auto [a, b] = p.segment(i);
    const Vec3 d = b - a;
    const double seg = d.norm();
    const Vec3 mid = 0.5 * (a + b);
    const Vec3 c = alpha.coeff(mid);
    acc += std::abs(c.dot(d)) / c.norm();
    len += seg;
  }
  return acc / len;
}

// Horizontal controls: coefficients (u1, u2) in the pointwise kernel frame,
// applied for time `step` each, starting at `start`.
struct ControlSequence {
  std::vector<Vec2> controls;
  double step = 0.0;
  Vec3 start;

  void validate() const {
    if (!(step > 0.0)) throw std::invalid_argument("control step must be positive");
  }

  double budget_length() const {
    double len = 0.0;
    for (const Vec2& u : controls) len += u.norm();
    return step * len;
  }
};

// First-order explicit stepping x_{k+1} = x_k + h (u1 e1(x_k) + u2 e2(x_k)).
// Steps whose displacement underflows to zero are dropped; if nothing
// remains the trivial path at the start point is returned.
inline Polyline integrate_controls(const ControlSequence& c, const OneForm& alpha) {
  c.validate();
  std::vector<Vec3> verts{c.start};
  for (const Vec2& u : c.controls) {
    const Vec3 x = verts.back();
    const auto [e1, e2] = kernel_frame(alpha, x);
    const Vec3 next = x + c.step * (u.u * e1 + u.v * e2);
    if (next == x) continue;
    verts.push_back(next);
  }
  if (verts.size() < 2) return Polyline::single(c.start);
  return Polyline::open(std::move(verts));
}

}  // namespace srlab

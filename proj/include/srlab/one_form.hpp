#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

#include "srlab/vec3.hpp"

namespace srlab {

struct CoefficientBounds {
  double sup = 0.0;       // certified sup bound over the chart box
  double seminorm = 0.0;  // certified theta-seminorm bound over the chart box
};

// A 1-form alpha = a1 dx + a2 dy + a3 dz on the periodic chart. The kernel of
// alpha is the horizontal plane field H. Coefficients are stored raw (not
// normalized to |alpha|_g = 1); the certified bounds cover both the raw and
// the normalized form.
struct OneForm {
  std::function<Vec3(const Vec3&)> coeff;  // (a1, a2, a3) at a point
  double theta = 0.5;                      // regularity exponent tag

  std::array<CoefficientBounds, 3> coeff_bounds{};
  double dual_norm_lower = 1.0;  // certified min of |alpha|_g over the chart box
  double norm_upper = 0.0;       // certified C^theta bound, raw coefficients
  double unit_norm_upper = 0.0;  // certified C^theta bound for alpha / |alpha|_g
};

inline double eval_form(const OneForm& alpha, const Vec3& x, const Vec3& v) {
  return alpha.coeff(x).dot(v);
}

// |alpha|_g at x; strictly positive by the nonvanishing invariant.
inline double dual_norm(const OneForm& alpha, const Vec3& x) { return alpha.coeff(x).norm(); }

// Pointwise orthonormal frame (e1, e2) of Ker alpha at x: the two coordinate
// axes least aligned with the unit normal (lower axis index on ties) are
// Gram-Schmidt orthogonalized against it in index order, so the frame does
// not flip where the alignment ranking of the two kept axes crosses.
inline std::pair<Vec3, Vec3> kernel_frame(const OneForm& alpha, const Vec3& x) {
  const Vec3 n = alpha.coeff(x).normalized();
  const double align[3] = {std::abs(n.x), std::abs(n.y), std::abs(n.z)};
  int drop = 0;  // most aligned axis, lower index wins ties among the kept pair
  for (int i = 1; i < 3; ++i)
    if (align[i] > align[drop]) drop = i;
  const int first = drop == 0 ? 1 : 0;
  const int second = drop == 2 ? 1 : 2;

  const Vec3 a = axis_vector(first);
  Vec3 e1 = a - a.dot(n) * n;
  e1 = e1.normalized();
  const Vec3 b = axis_vector(second);
  Vec3 e2 = b - b.dot(n) * n - b.dot(e1) * e1;
  e2 = e2.normalized();
  return {e1, e2};
}

// sin of the angle between v and the horizontal plane at x, in [0, 1];
// 0 iff v lies in H, 1 iff v is orthogonal to H.
inline double sin_angle(const OneForm& alpha, const Vec3& x, const Vec3& v) {
  const double vn = v.norm();
  if (vn == 0.0) throw std::invalid_argument("sin_angle: v must be nonzero");
  const Vec3 a = alpha.coeff(x);
  const double s = std::abs(a.dot(v)) / (a.norm() * vn);
  return std::min(s, 1.0);
}

// The metrically normalized form alpha / |alpha|_g, carrying its certified
// norm bound. Assembled from the coefficient bounds:
//   sup |a_i| / |a|      <= min(1, sup_i / m)
//   [a_i / |a|]_theta    <= ([a_i]_theta + sum_j [a_j]_theta) / m
// with m the certified lower bound of |alpha|_g on the chart box.
inline OneForm unit_form(const OneForm& alpha) {
  OneForm u;
  u.coeff = [c = alpha.coeff](const Vec3& x) {
    const Vec3 a = c(x);
    return a / a.norm();
  };
  u.theta = alpha.theta;
  const double m = alpha.dual_norm_lower;
  double semi_sum = 0.0;
  for (const auto& cb : alpha.coeff_bounds) semi_sum += cb.seminorm;
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    const auto& cb = alpha.coeff_bounds[static_cast<std::size_t>(i)];
    CoefficientBounds ub;
    ub.sup = std::min(1.0, cb.sup / m);
    ub.seminorm = (cb.seminorm + semi_sum) / m;
    u.coeff_bounds[static_cast<std::size_t>(i)] = ub;
    worst = std::max(worst, ub.sup + ub.seminorm);
  }
  u.dual_norm_lower = 1.0;
  u.norm_upper = worst;
  u.unit_norm_upper = worst;
  return u;
}

}  // namespace srlab

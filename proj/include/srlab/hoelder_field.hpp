#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "srlab/chart.hpp"
#include "srlab/rng.hpp"
#include "srlab/vec3.hpp"

namespace srlab {

// Lacunary cosine series with Hoelder exponent theta:
//
//   W(x) = amplitude * sum_{k=0}^{depth} lambda^{-theta k}
//                      cos(lambda^k <d_k, x> (2 pi / period) + phi_k)
//
// Direction vectors d_k are signed coordinate axes, so each term is exactly
// period-periodic (integer wave vectors) and the field is too.
struct HoelderField {
  double theta = 0.5;
  double lambda = 2.0;
  int depth = 0;
  std::vector<double> phases;      // depth + 1 offsets in [0, 2 pi)
  std::vector<Vec3> directions;    // depth + 1 unit lattice directions
  double amplitude = 0.0;
  double period = 1.0;

  double sup_bound = 0.0;               // amplitude * partial geometric sum
  double seminorm_bound = 0.0;          // certified theta-seminorm bound
  double analytic_norm_bound = 0.0;     // sup_bound + seminorm_bound

  double eval(const Vec3& x) const {
    if (amplitude == 0.0) return 0.0;
    const double base_freq = 2.0 * std::numbers::pi / period;
    double weight = 1.0;
    double freq_scale = 1.0;
    const double decay = std::pow(lambda, -theta);
    double sum = 0.0;
    for (int k = 0; k <= depth; ++k) {
      const double dot = directions[static_cast<std::size_t>(k)].dot(x);
      // Reduce mod period before scaling by lambda^k; the wave vector is an
      // integer multiple of the lattice, so the reduction is exact.
      const double u = dot - period * std::round(dot / period);
      sum += weight * std::cos(base_freq * freq_scale * u + phases[static_cast<std::size_t>(k)]);
      weight *= decay;
      freq_scale *= lambda;
    }
    return amplitude * sum;
  }

  std::function<double(const Vec3&)> evaluator() const {
    return [f = *this](const Vec3& x) { return f.eval(x); };
  }
};

// Certified upper bound for the C^theta seminorm of the series. Splitting the
// sum at the scale of the pair separation and bounding each half by its
// geometric tail gives, for every pair of points,
//   |W(x) - W(y)| / |x-y|^theta
//     <= amplitude * c^theta * ( lambda^{1-theta} / (lambda^{1-theta} - 1)
//                               + 2 / (1 - lambda^{-theta}) ),  c = 2 pi / period.
inline double lacunary_seminorm_bound(double theta, double lambda, double amplitude, double period) {
  if (amplitude == 0.0) return 0.0;
  const double c = 2.0 * std::numbers::pi / period;
  const double a = std::pow(lambda, 1.0 - theta);
  const double b = std::pow(lambda, -theta);
  return amplitude * std::pow(c, theta) * (a / (a - 1.0) + 2.0 / (1.0 - b));
}

inline HoelderField synth_weierstrass(double theta, double lambda, int depth, double amplitude,
                                      std::uint64_t seed, double period = 1.0) {
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in (0,1)");
  if (!(lambda >= 2.0)) throw std::invalid_argument("lambda must be >= 2");
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  if (!(amplitude >= 0.0)) throw std::invalid_argument("amplitude must be >= 0");
  if (!(period > 0.0)) throw std::invalid_argument("period must be positive");

  HoelderField f;
  f.theta = theta;
  f.lambda = lambda;
  f.depth = depth;
  f.amplitude = amplitude;
  f.period = period;

  Rng rng = Rng::stream(seed, 0x5eed);
  double partial = 0.0;
  double weight = 1.0;
  const double decay = std::pow(lambda, -theta);
  for (int k = 0; k <= depth; ++k) {
    f.phases.push_back(rng.uniform(0.0, 2.0 * std::numbers::pi));
    const int axis = static_cast<int>(rng.below(3));
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    f.directions.push_back(sign * axis_vector(axis));
    partial += weight;
    weight *= decay;
  }
  f.sup_bound = amplitude * partial;
  f.seminorm_bound = lacunary_seminorm_bound(theta, lambda, amplitude, period);
  f.analytic_norm_bound = f.sup_bound + f.seminorm_bound;
  return f;
}

struct GridSpec {
  int resolution = 65;        // points per non-degenerate axis
  long pair_budget = 20000;   // sampled point pairs for the seminorm sup
  std::uint64_t seed = 1;

  void validate() const {
    if (resolution < 2) throw std::invalid_argument("grid.resolution must be >= 2");
    if (pair_budget < 1) throw std::invalid_argument("grid.pair_budget must be >= 1");
  }
};

struct NormEstimate {
  double sup = 0.0;       // max |f| over the grid
  double seminorm = 0.0;  // max sampled Hoelder quotient

  double value() const { return sup + seminorm; }
};

// Grid lower bound for ||f||_{C^theta} = ||f||_inf + sup |f(x)-f(y)|/|x-y|^theta.
// Deterministic part: |f| on the grid plus quotients along every axis line at
// power-of-two strides (nested under grid refinement n -> 2n-1). Random part:
// a seeded stream of short-range-biased pairs; prefixes are nested in the pair
// budget. Every term is a genuine value of the quotient, so the estimate never
// exceeds the true norm.
inline NormEstimate hoelder_norm_estimate(const std::function<double(const Vec3&)>& f, double theta,
                                          const Box& domain, const GridSpec& grid) {
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in (0,1)");
  domain.validate();
  grid.validate();

  int npts[3];
  for (int i = 0; i < 3; ++i) npts[i] = domain.extent(i) > 0.0 ? grid.resolution : 1;

  const auto grid_point = [&](int ix, int iy, int iz) {
    Vec3 p = domain.lo;
    if (npts[0] > 1) p.x += domain.extent(0) * ix / (npts[0] - 1);
    if (npts[1] > 1) p.y += domain.extent(1) * iy / (npts[1] - 1);
    if (npts[2] > 1) p.z += domain.extent(2) * iz / (npts[2] - 1);
    return p;
  };

  NormEstimate est;
  const auto quotient = [&](const Vec3& a, const Vec3& b) {
    const double r = (a - b).norm();
    if (r <= 0.0) return;
    const double q = std::abs(f(a) - f(b)) / std::pow(r, theta);
    if (q > est.seminorm) est.seminorm = q;
  };

  // Cache one axis line at a time so stride pairs reuse evaluations.
  std::vector<double> line;
  for (int axis = 0; axis < 3; ++axis) {
    if (npts[axis] == 1 && axis > 0) continue;  // lines along axis 0 also cover the sup
    const int n = npts[axis];
    const int oa = (axis + 1) % 3;
    const int ob = (axis + 2) % 3;
    for (int ja = 0; ja < npts[oa]; ++ja) {
      for (int jb = 0; jb < npts[ob]; ++jb) {
        line.assign(static_cast<std::size_t>(n), 0.0);
        double step = 0.0;
        for (int i = 0; i < n; ++i) {
          int idx[3];
          idx[axis] = i;
          idx[oa] = ja;
          idx[ob] = jb;
          const Vec3 p = grid_point(idx[0], idx[1], idx[2]);
          if (i == 1) step = domain.extent(axis) / (n - 1);
          const double v = f(p);
          line[static_cast<std::size_t>(i)] = v;
          if (std::abs(v) > est.sup) est.sup = std::abs(v);
        }
        if (n < 2 || step <= 0.0) continue;
        for (int s = 1; s < n; s *= 2) {
          const double r = std::pow(step * s, theta);
          for (int i = 0; i + s < n; ++i) {
            const double q = std::abs(line[static_cast<std::size_t>(i + s)] - line[static_cast<std::size_t>(i)]) / r;
            if (q > est.seminorm) est.seminorm = q;
          }
        }
      }
    }
  }

  // Random pairs, log-uniform in separation down to diam * 2^-40.
  const double diam = domain.diameter();
  Rng rng = Rng::stream(grid.seed, 0x9a17);
  for (long t = 0; t < grid.pair_budget; ++t) {
    Vec3 a;
    for (int i = 0; i < 3; ++i)
      a[static_cast<std::size_t>(i)] =
          rng.uniform(domain.lo[static_cast<std::size_t>(i)], domain.hi[static_cast<std::size_t>(i)]);
    Vec3 dir = rng.unit_vec3();
    for (int i = 0; i < 3; ++i)
      if (domain.extent(i) == 0.0) dir[static_cast<std::size_t>(i)] = 0.0;
    const double dn = dir.norm();
    if (dn == 0.0) continue;
    dir = dir / dn;
    const double r = diam * std::exp2(-40.0 * rng.uniform());
    Vec3 b = a + r * dir;
    for (int i = 0; i < 3; ++i) {
      const auto s = static_cast<std::size_t>(i);
      b[s] = std::min(std::max(b[s], domain.lo[s]), domain.hi[s]);
    }
    quotient(a, b);
  }
  return est;
}

}  // namespace srlab

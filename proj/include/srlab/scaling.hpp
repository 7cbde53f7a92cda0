#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "srlab/chart.hpp"
#include "srlab/constants.hpp"
#include "srlab/one_form.hpp"
#include "srlab/paths.hpp"
#include "srlab/sr_distance.hpp"

namespace srlab {

struct ScalingPoint {
  double epsilon = 0.0;      // arclength offset along the transverse curve
  double d_r = 0.0;          // Riemannian (torus) distance of the pair
  double d_hat = 0.0;        // estimated subriemannian distance
  double lower_bound = 0.0;  // c * d_r^{1/(1+theta)}
  bool violation = false;
  bool converged = false;
  double defect = 0.0;
  double endpoint_gap = 0.0;
};

struct ScalingResult {
  std::vector<ScalingPoint> points;
  double slope = std::numeric_limits<double>::quiet_NaN();
  double intercept = std::numeric_limits<double>::quiet_NaN();
  double r2 = std::numeric_limits<double>::quiet_NaN();
  long violations = 0;
  bool partial = false;  // some estimate failed to converge
  long fitted_points = 0;
};

inline Vec3 point_at_arclength(const Polyline& curve, double s) {
  if (s < 0.0) throw std::invalid_argument("arclength must be nonnegative");
  double walked = 0.0;
  for (std::size_t i = 0; i < curve.segment_count(); ++i) {
    const auto [a, b] = curve.segment(i);
    const double seg = (b - a).norm();
    if (walked + seg >= s) {
      const double t = (s - walked) / seg;
      return a + t * (b - a);
    }
    walked += seg;
  }
  throw std::invalid_argument("arclength exceeds curve length");
}

namespace detail {

inline void fit_loglog(ScalingResult& res) {
  std::vector<double> xs, ys;
  for (const ScalingPoint& p : res.points) {
    if (!p.converged || !(p.d_hat > 0.0)) continue;
    xs.push_back(std::log(p.epsilon));
    ys.push_back(std::log(p.d_hat));
  }
  res.fitted_points = static_cast<long>(xs.size());
  if (xs.size() < 2) return;
  const double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    syy += ys[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return;
  res.slope = (n * sxy - sx * sy) / denom;
  res.intercept = (sy - res.slope * sx) / n;
  double ss_res = 0.0, ss_tot = 0.0;
  const double mean_y = sy / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double fit = res.intercept + res.slope * xs[i];
    ss_res += (ys[i] - fit) * (ys[i] - fit);
    ss_tot += (ys[i] - mean_y) * (ys[i] - mean_y);
  }
  res.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
}

}  // namespace detail

// Vertical scaling experiment: walk the transverse curve to arclength
// epsilon, estimate d_H(p, q), fit log d_hat against log epsilon, and count
// pointwise failures of d_hat >= c * d_r^{1/(1+theta)}. The estimate
// over-approximates d_H, so any violation indicates an implementation bug,
// not a failure of the bound.
inline ScalingResult scaling_experiment(const OneForm& alpha, double theta, const Vec3& p,
                                        const Polyline& direction_curve,
                                        std::vector<double> epsilons, const OptimizerConfig& cfg,
                                        const ConstantsBundle& bundle, const MetricChart& chart = {}) {
  if (epsilons.size() < 3) throw std::invalid_argument("scaling needs at least 3 epsilons");
  bundle.validate();
  const double rho = rho_threshold(bundle);
  for (double e : epsilons) {
    if (!(e > 0.0)) throw std::invalid_argument("scaling epsilons must be positive");
    if (!(e < rho)) throw std::invalid_argument("scaling epsilons must lie below rho");
  }
  min_sin_angle(alpha, direction_curve);  // throws if not transverse
  std::sort(epsilons.begin(), epsilons.end(), std::greater<double>());

  const double inv_exp = 1.0 / (1.0 + theta);
  ScalingResult res;
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    const double eps = epsilons[i];
    OptimizerConfig point_cfg = cfg;
    point_cfg.seed = Rng::mix(cfg.seed ^ (0xa11ceULL + i));
    const Vec3 q = point_at_arclength(direction_curve, eps);

    ScalingPoint pt;
    pt.epsilon = eps;
    pt.d_r = chart.distance(p, q);
    const DistanceEstimate est = estimate_upper(alpha, p, q, point_cfg);
    pt.d_hat = est.value;
    pt.converged = est.converged();
    pt.defect = est.defect;
    pt.endpoint_gap = est.endpoint_gap;
    pt.lower_bound = bundle.c * std::pow(pt.d_r, inv_exp);
    if (!pt.converged) res.partial = true;
    pt.violation = pt.converged && pt.d_hat < pt.lower_bound;
    if (pt.violation) ++res.violations;
    res.points.push_back(pt);
  }
  detail::fit_loglog(res);
  return res;
}

// Empirical uniform-continuity threshold: the largest tested Riemannian
// distance along the curve whose estimated d_H stays below tau/2, halved for
// safety. Distances are probed on a dyadic grid tau/2 * 2^-j.
struct EtaEstimate {
  double eta = 0.0;
  double largest_passing = 0.0;
  std::vector<double> tested;
  std::vector<double> estimates;
};

inline EtaEstimate estimate_eta(const OneForm& alpha, const Vec3& p, const Polyline& curve,
                                double tau, const OptimizerConfig& cfg, int levels = 8) {
  if (!(tau > 0.0)) throw std::invalid_argument("estimate_eta: tau must be positive");
  if (levels < 1) throw std::invalid_argument("estimate_eta: levels must be >= 1");
  EtaEstimate out;
  for (int j = 1; j <= levels; ++j) {
    const double d = tau / 2.0 * std::pow(2.0, -j);
    OptimizerConfig point_cfg = cfg;
    point_cfg.seed = Rng::mix(cfg.seed ^ (0xe7a0ULL + static_cast<std::uint64_t>(j)));
    const Vec3 q = point_at_arclength(curve, d);
    const DistanceEstimate est = estimate_upper(alpha, p, q, point_cfg);
    out.tested.push_back(d);
    out.estimates.push_back(est.value);
    if (est.converged() && est.value < tau / 2.0) {
      out.largest_passing = d;
      out.eta = d / 2.0;
      break;  // dyadic descent: the first passing level is the largest
    }
  }
  return out;
}

}  // namespace srlab

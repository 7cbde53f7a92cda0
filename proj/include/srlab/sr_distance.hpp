#pragma once

#include <algorithm>
#include <cmath>
#ifdef SRLAB_TRACE
#include <cstdio>
#endif
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "srlab/chart.hpp"
#include "srlab/one_form.hpp"
#include "srlab/paths.hpp"
#include "srlab/rng.hpp"

namespace srlab {

struct OptimizerConfig {
  int segments = 24;
  int restarts = 8;
  double endpoint_tol_rel = 5e-3;   // endpoint gap tolerance, relative to |q - p|
  double endpoint_tol_abs = 1e-8;
  double defect_tol = 0.05;         // horizontality defect tolerance
  long step_budget = 60000;         // objective evaluations per restart
  double penalty0 = 1e4;            // endpoint penalty weight, scaled by 1/|q - p|
  double penalty_growth = 10.0;
  int max_escalations = 4;
  double init_step_frac = 0.1;      // pattern step as a fraction of the control scale
  double step_floor_frac = 1e-5;
  std::uint64_t seed = 1;

  void validate() const {
    if (segments < 2) throw std::invalid_argument("optimizer.segments must be >= 2");
    if (restarts < 1) throw std::invalid_argument("optimizer.restarts must be >= 1");
    if (!(endpoint_tol_rel > 0.0) || !(endpoint_tol_abs > 0.0))
      throw std::invalid_argument("optimizer endpoint tolerances must be positive");
    if (!(defect_tol > 0.0)) throw std::invalid_argument("optimizer.defect_tol must be positive");
    if (step_budget < 1) throw std::invalid_argument("optimizer.step_budget must be >= 1");
    if (!(penalty0 > 0.0) || !(penalty_growth > 1.0))
      throw std::invalid_argument("optimizer penalty schedule must be positive and growing");
    if (max_escalations < 0) throw std::invalid_argument("optimizer.max_escalations must be >= 0");
  }

  double endpoint_tolerance(double chord) const {
    return std::max(endpoint_tol_abs, endpoint_tol_rel * chord);
  }
};

enum class EstimateStatus { converged, unconverged };

struct DistanceEstimate {
  double value = 0.0;          // length of the best horizontal path found
  Polyline path;
  double defect = 0.0;         // horizontality defect of that path
  double endpoint_gap = 0.0;   // distance from the achieved endpoint to the target
  int restarts = 0;
  long iterations = 0;         // objective evaluations across all restarts
  std::uint64_t seed = 0;
  EstimateStatus status = EstimateStatus::converged;
  ControlSequence controls;    // best control sequence (usable as a warm start)

  bool converged() const { return status == EstimateStatus::converged; }
};

// Length of the shortest horizontal lift joining (0,0,0) to (0,0,z) in the
// unperturbed contact model: the optimal planar projection is the circle
// enclosing area |z|, of length 2 sqrt(pi |z|).
inline double heisenberg_vertical_exact(double z) {
  return 2.0 * std::sqrt(std::numbers::pi * std::abs(z));
}

namespace detail {

struct Objective {
  const OneForm& alpha;
  Vec3 start;
  Vec3 target;
  double step;

  double length = 0.0;
  double gap = 0.0;

  // J = path length + w * gap^2. The quadratic penalty keeps single
  // coordinate probes acceptable near the constraint (its gradient vanishes
  // with the gap); the escalation schedule drives the residual gap down.
  double operator()(const std::vector<Vec2>& u, double w) {
    Vec3 x = start;
    double len = 0.0;
    for (const Vec2& c : u) {
      const auto [e1, e2] = kernel_frame(alpha, x);
      x = x + step * (c.u * e1 + c.v * e2);
      len += step * c.norm();
    }
    length = len;
    gap = (x - target).norm();
    return len + w * gap * gap;
  }
};

inline std::vector<Vec2> chord_controls(const OneForm& alpha, const Vec3& p, const Vec3& chord,
                                        int segments) {
  const auto [e1, e2] = kernel_frame(alpha, p);
  const Vec2 u{chord.dot(e1), chord.dot(e2)};
  return std::vector<Vec2>(static_cast<std::size_t>(segments), u);
}

// Circle ansatz for the component of the chord transverse to H: a loop of
// enclosed area |dz| climbs that amount in the unperturbed model.
inline void add_loop_controls(std::vector<Vec2>& u, double area, double orientation) {
  if (area <= 0.0) return;
  const int n = static_cast<int>(u.size());
  const double radius = std::sqrt(area / std::numbers::pi);
  const double speed = 2.0 * std::numbers::pi * radius;
  for (int k = 0; k < n; ++k) {
    const double t = (k + 0.5) / n;
    const double a = 2.0 * std::numbers::pi * t;
    u[static_cast<std::size_t>(k)] =
        u[static_cast<std::size_t>(k)] +
        Vec2{-speed * orientation * std::sin(a), speed * std::cos(a)};
  }
}

struct RestartResult {
  std::vector<Vec2> controls;
  double step = 0.0;
  double length = 0.0;
  double gap = 0.0;
  long evals = 0;
};

inline RestartResult pattern_search(Objective& obj, std::vector<Vec2> u, const OptimizerConfig& cfg,
                                    double chord_len) {
  double w = cfg.penalty0 / std::max(chord_len, 1e-12);

  double scale = 0.0;
  for (const Vec2& c : u) scale = std::max(scale, c.norm());
  scale = std::max(scale, chord_len);
  const double step0 = cfg.init_step_frac * std::max(scale, 1e-12);
  const double floor = step0 * cfg.step_floor_frac;
  const double tol = cfg.endpoint_tolerance(chord_len);

  const std::size_t n = u.size();
  // Probe directions: every control coordinate, plus coherent moves applied
  // to all controls at once (two translations, a global rescale, a circular
  // loop increment). A single coordinate moves the endpoint by O(step / n)
  // while its response on a rough (C^theta) frame is O(sqrt(step)), so
  // coordinate probes drown in terrain noise; the coherent directions keep
  // an O(step) deterministic response and retain authority over the
  // endpoint, in particular over the transverse component through the
  // enclosed-area mechanism.
  const std::size_t n_dirs = 2 * n + 4;
  const double scale_ref = std::max(scale, 1e-12);
  const auto apply = [n, scale_ref](std::vector<Vec2>& v, std::size_t dir, double delta) {
    if (dir < 2 * n) {
      double& c = dir % 2 == 0 ? v[dir / 2].u : v[dir / 2].v;
      c += delta;
    } else if (dir == 2 * n) {
      for (Vec2& c : v) c.u += delta;
    } else if (dir == 2 * n + 1) {
      for (Vec2& c : v) c.v += delta;
    } else if (dir == 2 * n + 2) {
      const double f = 1.0 + delta / scale_ref;
      for (Vec2& c : v) c = f * c;
    } else {
      for (std::size_t k = 0; k < n; ++k) {
        const double a = 2.0 * std::numbers::pi * (k + 0.5) / n;
        v[k] = v[k] + Vec2{-delta * std::sin(a), delta * std::cos(a)};
      }
    }
  };

  RestartResult res;
  double best = obj(u, w);
  res.evals = 1;
  double best_len = obj.length;
  double best_gap = obj.gap;

  const auto accepts = [&](double j) { return j < best - 1e-15 * (1.0 + std::abs(best)); };

  std::vector<Vec2> trial;
  std::vector<Vec2> before_sweep;

  // One full descent per penalty stage; the weight grows only after the
  // search has stalled at the current stage with the gap still open.
  const long stage_budget = std::max<long>(1, cfg.step_budget / (cfg.max_escalations + 1));
  for (int stage = 0; stage <= cfg.max_escalations; ++stage) {
    if (stage > 0) {
      w *= cfg.penalty_growth;
      best = obj(u, w);
      ++res.evals;
      best_len = obj.length;
      best_gap = obj.gap;
    }
    // later stages restart near the previous optimum: step sized to the
    // remaining endpoint travel
    double step = stage == 0 ? step0
                             : std::max(64.0 * floor, std::min(step0, best_gap));
    int sweeps_at_level = 0;
    const long stage_end = std::min(cfg.step_budget, res.evals + stage_budget);
    while (res.evals < stage_end) {
      bool improved = false;
      before_sweep = u;
      ++sweeps_at_level;
      for (std::size_t dir = 0; dir < n_dirs && res.evals < stage_end; ++dir) {
        for (const double sign : {1.0, -1.0}) {
          trial = u;
          apply(trial, dir, sign * step);
          const double j = obj(trial, w);
          ++res.evals;
          if (!accepts(j)) {
            if (res.evals >= stage_end) break;
            continue;
          }
          best = j;
          best_len = obj.length;
          best_gap = obj.gap;
          u = trial;
          improved = true;
          // line walk: keep stepping while the same direction pays off
          while (res.evals < stage_end) {
            apply(trial, dir, sign * step);
            const double jj = obj(trial, w);
            ++res.evals;
            if (!accepts(jj)) break;
            best = jj;
            best_len = obj.length;
            best_gap = obj.gap;
            u = trial;
          }
          break;
        }
      }
      if (improved) {
        // pattern move: extrapolate the whole sweep displacement once
        trial.resize(n);
        for (std::size_t i = 0; i < n; ++i) trial[i] = u[i] + (u[i] - before_sweep[i]);
        const double j = obj(trial, w);
        ++res.evals;
        if (accepts(j)) {
          u = trial;
          best = j;
          best_len = obj.length;
          best_gap = obj.gap;
        }
        step = std::min(step * 2.0, step0);  // expand while sweeps keep paying
      }
      if (!improved || sweeps_at_level >= 5) {
        sweeps_at_level = 0;
        step *= 0.5;
        if (step < floor) break;
      }
#ifdef SRLAB_TRACE
      std::fprintf(stderr, "stage=%d step=%.3e w=%.3e len=%.8g gap=%.3e evals=%ld\n",
                   stage, step, w, best_len, best_gap, res.evals);
#endif
    }
    if (best_gap <= tol || res.evals >= cfg.step_budget) break;
  }
  res.controls = std::move(u);
  res.length = best_len;
  res.gap = best_gap;
  return res;
}

}  // namespace detail

// Upper estimate of the subriemannian distance d_H(p, q): derivative-free
// minimization of horizontal path length over control sequences with an
// endpoint penalty, multiple seeded restarts, best-so-far merge. The result
// over-estimates d_H up to the reported (defect, endpoint_gap) corrections;
// failure to meet the endpoint tolerance is reported as unconverged, never as
// a silent number.
inline DistanceEstimate estimate_upper(const OneForm& alpha, const Vec3& p, const Vec3& q,
                                       const OptimizerConfig& cfg,
                                       const ControlSequence* warm_start = nullptr) {
  cfg.validate();

  DistanceEstimate out;
  out.seed = cfg.seed;
  if (p == q) {
    out.path = Polyline::single(p);
    out.controls = ControlSequence{{}, 1.0 / cfg.segments, p};
    return out;
  }

  const Vec3 chord = q - p;
  const double chord_len = chord.norm();
  const double tol = cfg.endpoint_tolerance(chord_len);

  bool have_best = false;
  detail::RestartResult best;
  bool best_converged = false;

  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(r));

    std::vector<Vec2> u;
    double h = 1.0 / cfg.segments;
    if (r == 0 && warm_start != nullptr && !warm_start->controls.empty()) {
      u = warm_start->controls;
      h = warm_start->step;
    } else {
      u = detail::chord_controls(alpha, p, chord, cfg.segments);
      const Vec3 normal = alpha.coeff(p).normalized();
      const double transverse = chord.dot(normal);
      // restart 1 explores the opposite loop orientation
      const double orient = (transverse >= 0.0 ? 1.0 : -1.0) * (r == 1 ? -1.0 : 1.0);
      detail::add_loop_controls(u, std::abs(transverse), orient);
      if (r >= 2) {
        double scale = 0.0;
        for (const Vec2& c : u) scale = std::max(scale, c.norm());
        scale = std::max(scale, chord_len);
        const double sigma = 0.3 * scale * r / cfg.restarts;
        for (Vec2& c : u) {
          c.u += sigma * rng.normal();
          c.v += sigma * rng.normal();
        }
      }
    }

    detail::Objective obj{alpha, p, q, h};
    detail::RestartResult res = detail::pattern_search(obj, std::move(u), cfg, chord_len);
    res.step = h;
    out.iterations += res.evals;
    ++out.restarts;

    const bool conv = res.gap <= tol;
    const bool better = !have_best ||
                        (conv && !best_converged) ||
                        (conv == best_converged &&
                         (conv ? res.length < best.length : res.gap < best.gap));
    if (better) {
      best = std::move(res);
      best_converged = conv;
      have_best = true;
    }
  }

  out.controls = ControlSequence{best.controls, best.step, p};
  out.path = integrate_controls(out.controls, alpha);
  out.value = path_length(out.path);
  out.endpoint_gap = best.gap;
  out.defect = horizontality_defect(out.path, alpha);
  out.status = (best_converged && out.defect <= cfg.defect_tol) ? EstimateStatus::converged
                                                                : EstimateStatus::unconverged;
  return out;
}

struct ReachReport {
  double eps = 0.0;
  double max_abs_dz = 0.0;      // farthest vertical (z) displacement reached
  double max_riemannian = 0.0;  // farthest torus distance reached
  std::vector<Vec3> endpoints;
};

// Empirical nowhere-integrability probe: integrates `samples` control
// sequences of total length < eps from p and reports the extremes of the
// reached set. Sample kinds cycle through full-budget circle loops (the
// area-maximizing ansatz), straight dashes, and random Fourier controls.
inline ReachReport reachability_probe(const OneForm& alpha, const Vec3& p, double eps, long samples,
                                      std::uint64_t seed, const MetricChart& chart = {},
                                      int steps_per_path = 64) {
  if (!(eps > 0.0)) throw std::invalid_argument("probe eps must be positive");
  if (samples < 1) throw std::invalid_argument("probe samples must be >= 1");

  ReachReport report;
  report.eps = eps;
  const int n = steps_per_path;
  const double h = 1.0 / n;

  for (long s = 0; s < samples; ++s) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(s));
    std::vector<Vec2> u(static_cast<std::size_t>(n));
    const int kind = static_cast<int>(s % 3);
    if (kind == 0) {
      // circle loop, full length budget
      const double speed = 0.999 * eps;
      const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double orient = rng.uniform() < 0.5 ? 1.0 : -1.0;
      for (int k = 0; k < n; ++k) {
        const double a = 2.0 * std::numbers::pi * (k + 0.5) / n + phase;
        u[static_cast<std::size_t>(k)] = {-speed * orient * std::sin(a), speed * std::cos(a)};
      }
    } else if (kind == 1) {
      const double speed = eps * rng.uniform(0.2, 0.999);
      const double a = rng.uniform(0.0, 2.0 * std::numbers::pi);
      for (auto& c : u) c = {speed * std::cos(a), speed * std::sin(a)};
    } else {
      double amp_u[3], amp_v[3], ph_u[3], ph_v[3];
      for (int m = 0; m < 3; ++m) {
        amp_u[m] = rng.normal();
        amp_v[m] = rng.normal();
        ph_u[m] = rng.uniform(0.0, 2.0 * std::numbers::pi);
        ph_v[m] = rng.uniform(0.0, 2.0 * std::numbers::pi);
      }
      for (int k = 0; k < n; ++k) {
        const double t = (k + 0.5) / n;
        Vec2 c{};
        for (int m = 0; m < 3; ++m) {
          const double a = 2.0 * std::numbers::pi * (m + 1) * t;
          c.u += amp_u[m] * std::cos(a + ph_u[m]);
          c.v += amp_v[m] * std::sin(a + ph_v[m]);
        }
        u[static_cast<std::size_t>(k)] = c;
      }
      double total = 0.0;
      for (const auto& c : u) total += h * c.norm();
      const double want = eps * rng.uniform(0.2, 0.999);
      if (total > 0.0)
        for (auto& c : u) c = (want / total) * c;
    }

    ControlSequence cs{std::move(u), h, p};
    const Polyline path = integrate_controls(cs, alpha);
    for (const Vec3& v : path.vertices()) {
      report.max_abs_dz = std::max(report.max_abs_dz, std::abs(v.z - p.z));
      report.max_riemannian = std::max(report.max_riemannian, chart.distance(v, p));
    }
    report.endpoints.push_back(path.vertices().back());
  }
  return report;
}

}  // namespace srlab

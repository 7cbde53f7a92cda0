#pragma once

// Acceptance suite: end-to-end checks of the laboratory against its oracles.
// Each criterion prints one pass/fail line; tolerances are fixed here and
// nowhere else.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "srlab/constants.hpp"
#include "srlab/disks.hpp"
#include "srlab/experiments.hpp"
#include "srlab/hoelder_field.hpp"
#include "srlab/models.hpp"
#include "srlab/report.hpp"
#include "srlab/scaling.hpp"
#include "srlab/sr_distance.hpp"

namespace srlab::acceptance {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace detail_acc {

inline Polyline circle_loop(double radius, int segments, const Vec3& center = {0, 0, 0}) {
  std::vector<Vec3> verts;
  for (int i = 0; i < segments; ++i) {
    const double a = 2.0 * std::numbers::pi * i / segments;
    verts.push_back(center + Vec3{radius * std::cos(a), radius * std::sin(a), 0.0});
  }
  return Polyline::loop(std::move(verts));
}

inline Polyline wavy_loop(double radius, int segments) {
  std::vector<Vec3> verts;
  for (int i = 0; i < segments; ++i) {
    const double a = 2.0 * std::numbers::pi * i / segments;
    const double r = radius * (1.0 + 0.2 * std::cos(3.0 * a));
    verts.push_back({r * std::cos(a), r * std::sin(a), 0.3 * radius * std::sin(2.0 * a)});
  }
  return Polyline::loop(std::move(verts));
}

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace detail_acc

// 1. Vertical distance estimates against the isoperimetric oracle.
inline CriterionResult vertical_distance_oracle() {
  CriterionResult r{"heisenberg vertical distance within 3% of 2 sqrt(pi z)", true, ""};
  const auto m = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  OptimizerConfig cfg;
  cfg.seed = 101;
  for (double z : {0.02, 0.05, 0.1}) {
    const auto t0 = std::chrono::steady_clock::now();
    const DistanceEstimate est = estimate_upper(m.alpha, {0, 0, 0}, {0, 0, z}, cfg);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double oracle = heisenberg_vertical_exact(z);
    const double rel = std::abs(est.value - oracle) / oracle;
    r.detail += "z=" + detail_acc::fmt(z) + ": " + detail_acc::fmt(est.value) + " vs " +
                detail_acc::fmt(oracle) + " (" + detail_acc::fmt(100.0 * rel) + "%, " +
                detail_acc::fmt(seconds) + "s) ";
    if (!est.converged() || rel > 0.03 || seconds > 120.0) r.pass = false;
  }
  return r;
}

// 2. Smooth-case vertical scaling: square-root law.
inline CriterionResult smooth_scaling_slope() {
  CriterionResult r{"smooth vertical scaling: slope 0.50 +- 0.05, R2 >= 0.99", true, ""};
  const auto m = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  const Polyline curve = Polyline::open({{0, 0, 0}, {0, 0, 0.25}});
  const double sin_phi0 = min_sin_angle(m.alpha, curve, 16);
  DiskFamily fam;
  const double k_hat = estimate_K(unit_form(m.alpha), 0.5, fam, 200, 7).k_hat;
  // eta plays no role in the square-root law; it is overridden so that the
  // epsilon range [0.01, 0.1] lies below rho
  const ConstantsBundle bundle = make_bundle(0.5, 1.0 / (2.0 * std::numbers::pi), k_hat, sin_phi0,
                                             m.alpha.unit_norm_upper, 0.5, 0.5, 1.0);
  OptimizerConfig cfg;
  cfg.seed = 202;
  const ScalingResult res = scaling_experiment(m.alpha, 0.5, {0, 0, 0}, curve,
                                               {0.1, 0.05, 0.02, 0.01}, cfg, bundle);
  r.detail = "slope " + detail_acc::fmt(res.slope) + ", R2 " + detail_acc::fmt(res.r2) +
             ", violations " + std::to_string(res.violations);
  r.pass = !res.partial && std::abs(res.slope - 0.5) <= 0.05 && res.r2 >= 0.99 &&
           res.violations == 0;
  return r;
}

// 3. Pointwise lower bound for the perturbed C^theta model.
inline CriterionResult perturbed_pointwise_bound() {
  CriterionResult r{"perturbed model: no violations of d_hat >= C d_R^{1/(1+theta)}", true, ""};
  const double theta = 0.5;
  const auto m = build_model(ModelKind::perturbed, theta, 0.05, 11);
  const double tau = 0.5;  // delta_m = sigma = 0.5
  const Polyline curve = Polyline::open({{0, 0, 0}, {0, 0, tau}});
  const double sin_phi0 = min_sin_angle(m.alpha, curve, 16);

  DiskFamily fam;  // sigma 0.5, radii below the admissibility cap
  const double k_hat = estimate_K(unit_form(m.alpha), theta, fam, 400, 13).k_hat;

  OptimizerConfig cfg;
  cfg.seed = 303;
  OptimizerConfig eta_cfg = cfg;
  eta_cfg.seed = 304;
  const EtaEstimate eta = estimate_eta(m.alpha, {0, 0, 0}, curve, tau, eta_cfg);
  if (!(eta.eta > 0.0)) {
    r.pass = false;
    r.detail = "eta estimation failed";
    return r;
  }

  const ConstantsBundle bundle = make_bundle(theta, 1.0 / (2.0 * std::numbers::pi), k_hat,
                                             sin_phi0, m.alpha.unit_norm_upper, 0.5, 0.5, eta.eta);
  std::vector<double> epsilons;
  const int pairs = 20;
  const double lo = bundle.rho / 30.0;
  const double hi = 0.9 * bundle.rho;
  for (int i = 0; i < pairs; ++i)
    epsilons.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (pairs - 1)));

  const ScalingResult res =
      scaling_experiment(m.alpha, theta, {0, 0, 0}, curve, epsilons, cfg, bundle);
  r.detail = std::to_string(res.points.size()) + " pairs below rho=" + detail_acc::fmt(bundle.rho) +
             ", C=" + detail_acc::fmt(bundle.c) + ", K=" + detail_acc::fmt(k_hat) + ", violations " +
             std::to_string(res.violations) + (res.partial ? ", partial" : "") + ", slope " +
             detail_acc::fmt(res.slope);
  // the decay rate can be no steeper than 1/(1+theta) plus fit slack
  const bool slope_ok = res.fitted_points >= 2 && res.slope <= 1.0 / (1.0 + theta) + 0.05;
  r.pass = res.points.size() >= 20 && res.violations == 0 && !res.partial && slope_ok;
  return r;
}

// 4. Hoelder Stokes inequality: finite empirical constant, smooth-case check.
inline CriterionResult hoelder_stokes_constant() {
  CriterionResult r{"Hoelder Stokes ratio bounded over 1000+ disks; smooth ratio <= 1.005", true, ""};
  const double theta = 0.5;
  const auto m = build_model(ModelKind::perturbed, theta, 0.05, 11);
  DiskFamily fam;
  const KEstimate est = estimate_K(unit_form(m.alpha), theta, fam, 1300, 17);
  r.detail = "K_hat " + detail_acc::fmt(est.k_hat) + " over " + std::to_string(est.admissible) +
             " admissible disks";
  if (!(est.admissible >= 1000) || !std::isfinite(est.k_hat) || !(est.k_hat > 0.0)) r.pass = false;

  // smooth model: |int| / area never exceeds the sup of d(alpha) = 1
  const auto h = build_model(ModelKind::heisenberg, theta, 0.0, 1);
  DiskFamily wide = fam;
  wide.sigma = 10.0;
  wide.r_min = 0.05;
  wide.r_max = 0.4;
  double worst = 0.0;
  for (long t = 0; t < 300; ++t) {
    Rng rng = Rng::stream(19, static_cast<std::uint64_t>(t));
    const TriangulatedDisk disk = srlab::detail::family_disk(wide, rng, t);
    worst = std::max(worst, std::abs(boundary_integral(h.alpha, disk)) / disk.area());
  }
  r.detail += "; smooth sup ratio " + detail_acc::fmt(worst);
  if (!(worst <= 1.005)) r.pass = false;
  return r;
}

// 5. Analytic Stokes value on the unit circle.
inline CriterionResult analytic_stokes_circle() {
  CriterionResult r{"contact form over the unit circle integrates to -pi within 0.1%", true, ""};
  const auto h = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  const double integral = boundary_integral(h.alpha, detail_acc::circle_loop(1.0, 128));
  const double rel = std::abs(integral + std::numbers::pi) / std::numbers::pi;
  r.detail = detail_acc::fmt(integral) + " vs -pi (" + detail_acc::fmt(100.0 * rel) + "%)";
  r.pass = rel <= 0.001;
  return r;
}

// 6. Isoperimetric disk filling over the loop corpus.
inline CriterionResult isoperimetric_filling() {
  CriterionResult r{"small loops fill with area <= c_m len^2 inside the c_m len collar", true, ""};
  const std::vector<Polyline> corpus{
      detail_acc::circle_loop(0.02, 32),
      detail_acc::circle_loop(0.05, 48),
      detail_acc::circle_loop(0.07, 64, {0.1, -0.1, 0.2}),
      detail_acc::wavy_loop(0.05, 48),
      Polyline::loop({{0, 0, 0}, {0.06, 0, 0}, {0.06, 0.06, 0}, {0, 0.06, 0}}),
      Polyline::loop({{0, 0, 0}, {0.05, 0, 0}, {0.1, 0, 0}, {0.05, 0, 0}})};
  int filled_ok = 0;
  for (const Polyline& loop : corpus) {
    const FilledDisk filled = fill_disk(loop);
    if (filled.checks.area_bound_ok && filled.checks.neighborhood_ok &&
        is_combinatorial_disk(filled.disk))
      ++filled_ok;
  }
  r.detail = std::to_string(filled_ok) + "/" + std::to_string(corpus.size()) + " corpus loops";
  if (filled_ok != static_cast<int>(corpus.size())) r.pass = false;

  FillOptions wide;
  wide.delta_m = 10.0;
  const double area = fill_disk(detail_acc::circle_loop(1.0, 128), wide).checks.area;
  const double rel = std::abs(area - std::numbers::pi) / std::numbers::pi;
  r.detail += "; unit circle area " + detail_acc::fmt(area) + " (" + detail_acc::fmt(100.0 * rel) + "%)";
  if (rel > 0.01) r.pass = false;
  return r;
}

// 7. The regrouped-length bracket stays above one half below rho.
inline CriterionResult curly_brace_sweep() {
  CriterionResult r{"brace quantity >= 1/2 on (0, rho): 20 bundles x 1000 lengths", true, ""};
  double min_val = 1.0;
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng = Rng::stream(23, static_cast<std::uint64_t>(trial));
    const ConstantsBundle b =
        make_bundle(rng.uniform(0.15, 0.85), rng.uniform(0.05, 3.0), rng.uniform(0.05, 3.0),
                    rng.uniform(0.1, 1.0), rng.uniform(0.2, 4.0), rng.uniform(0.05, 2.0),
                    rng.uniform(0.05, 2.0), rng.uniform(0.01, 2.0));
    const double rho = rho_threshold(b);
    for (int i = 1; i <= 1000; ++i) {
      min_val = std::min(min_val, curly_brace_check(b, rho * i / 1001.0));
    }
  }
  r.detail = "min over sweep: " + detail_acc::fmt(min_val);
  r.pass = min_val >= 0.5;
  return r;
}

// 8. C(theta) approaches the theta = 1 value without blowing up.
inline CriterionResult c_limit_continuity() {
  CriterionResult r{"C(theta) monotone-continuous on [0.9, 0.999], within 1% of C(1)", true, ""};
  std::vector<double> thetas;
  const int n = 100;
  for (int i = 0; i <= n; ++i) thetas.push_back(0.9 + (0.999 - 0.9) * i / n);
  const C1LimitResult table = c1_limit_check(1.0 / (4.0 * std::numbers::pi), 1.0, 1.0, 1.0, thetas);
  bool monotone = true;
  double max_jump = 0.0;
  for (std::size_t i = 0; i + 1 < table.c_values.size(); ++i) {
    if (table.c_values[i + 1] <= table.c_values[i]) monotone = false;
    max_jump = std::max(max_jump, std::abs(table.c_values[i + 1] - table.c_values[i]));
  }
  const double end_err = std::abs(table.c_values.back() - table.c_at_one) / table.c_at_one;
  r.detail = "C(0.999)=" + detail_acc::fmt(table.c_values.back()) + ", C(1)=" +
             detail_acc::fmt(table.c_at_one) + ", end error " + detail_acc::fmt(100.0 * end_err) +
             "%, max step " + detail_acc::fmt(max_jump);
  r.pass = monotone && std::isfinite(table.c_at_one) && end_err <= 0.01 &&
           max_jump <= 0.01 * table.c_at_one;
  return r;
}

// 9. Nowhere-integrability dichotomy: probe reach and scaling plateau.
inline CriterionResult integrability_contrast() {
  CriterionResult r{"probe dichotomy: contact reach >= 50% of cap, foliation reach ~ 0", true, ""};
  const double eps = 0.2;
  const double cap = eps * eps / (4.0 * std::numbers::pi);

  const auto h = build_model(ModelKind::heisenberg, 0.5, 0.0, 1);
  const ReachReport reach = reachability_probe(h.alpha, {0, 0, 0}, eps, 60, 29);
  r.detail = "contact dz " + detail_acc::fmt(reach.max_abs_dz) + " of cap " + detail_acc::fmt(cap);
  if (!(reach.max_abs_dz >= 0.5 * cap) || !(reach.max_abs_dz <= cap * 1.01)) r.pass = false;

  const auto fol = build_model(ModelKind::foliation, 0.5, 0.0, 1);
  const ReachReport flat = reachability_probe(fol.alpha, {0, 0, 0}, eps, 60, 31);
  r.detail += "; foliation dz " + detail_acc::fmt(flat.max_abs_dz);
  if (!(flat.max_abs_dz <= 1e-12)) r.pass = false;

  // the foliation distance estimates plateau at optimizer failure
  const ConstantsBundle b = make_bundle(0.5, 1.0 / (2.0 * std::numbers::pi), 0.5, 1.0, 1.0,
                                        0.5, 0.5, 1.0);
  OptimizerConfig cfg;
  cfg.seed = 404;
  cfg.restarts = 2;
  cfg.step_budget = 3000;
  const ScalingResult res = scaling_experiment(fol.alpha, 0.5, {0, 0, 0},
                                               Polyline::open({{0, 0, 0}, {0, 0, 0.25}}),
                                               {0.1, 0.05, 0.02}, cfg, b);
  r.detail += res.partial && res.fitted_points == 0 ? "; foliation estimates all unconverged"
                                                    : "; foliation estimates unexpectedly converged";
  if (!(res.partial && res.fitted_points == 0)) r.pass = false;
  return r;
}

// 10. Hoelder norm estimator against the brute-force oracle.
inline CriterionResult norm_estimator_checks() {
  CriterionResult r{"norm estimator: |x|^0.5 gives 2.0 +- 2%, monotone, below certified bound", true, ""};
  const auto f1 = [](const Vec3& p) { return std::pow(std::abs(p.x), 0.5); };
  const Box seg{{-1, 0, 0}, {1, 0, 0}};
  const NormEstimate est = hoelder_norm_estimate(f1, 0.5, seg, GridSpec{129, 4000, 2});
  const double rel = std::abs(est.value() - 2.0) / 2.0;
  r.detail = "estimate " + detail_acc::fmt(est.value()) + " (" + detail_acc::fmt(100.0 * rel) + "%)";
  if (rel > 0.02) r.pass = false;

  const HoelderField field = synth_weierstrass(0.3, 2.0, 12, 1.0, 3);
  const auto eval = field.evaluator();
  const Box slab{{-0.5, -0.5, 0.0}, {0.5, 0.5, 0.0}};
  double prev = 0.0;
  bool monotone = true;
  bool below = true;
  for (int res : {17, 33, 65}) {
    const NormEstimate e = hoelder_norm_estimate(eval, field.theta, slab, GridSpec{res, 2000, 11});
    if (e.value() < prev) monotone = false;
    if (e.value() > field.analytic_norm_bound) below = false;
    prev = e.value();
  }
  r.detail += "; refinement " + std::string(monotone ? "monotone" : "NOT monotone") +
              ", bound " + std::string(below ? "respected" : "EXCEEDED");
  r.pass = r.pass && monotone && below;
  return r;
}

inline bool run_all(std::ostream& out) {
  const std::vector<CriterionResult (*)()> criteria{
      vertical_distance_oracle, smooth_scaling_slope,  perturbed_pointwise_bound,
      hoelder_stokes_constant,  analytic_stokes_circle, isoperimetric_filling,
      curly_brace_sweep,        c_limit_continuity,     integrability_contrast,
      norm_estimator_checks};
  bool all = true;
  int index = 0;
  for (const auto& fn : criteria) {
    ++index;
    const CriterionResult res = fn();
    out << (res.pass ? "[PASS] " : "[FAIL] ") << index << ". " << res.name;
    if (!res.detail.empty()) out << " -- " << res.detail;
    out << "\n" << std::flush;
    all = all && res.pass;
  }
  out << (all ? "acceptance: all criteria passed\n" : "acceptance: FAILURES present\n");
  return all;
}

}  // namespace srlab::acceptance

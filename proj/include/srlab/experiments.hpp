#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "srlab/config.hpp"
#include "srlab/constants.hpp"
#include "srlab/disks.hpp"
#include "srlab/hoelder_field.hpp"
#include "srlab/models.hpp"
#include "srlab/report.hpp"
#include "srlab/scaling.hpp"
#include "srlab/sr_distance.hpp"

namespace srlab {

namespace experiments {

inline MetricChart chart_from(const ExperimentConfig& cfg) {
  MetricChart chart;
  chart.period = kv::as_double_or(cfg.raw, "chart.period", 1.0);
  chart.validate();
  return chart;
}

inline ModelBundle model_from(const ExperimentConfig& cfg) {
  const ModelKind kind = parse_model_kind(cfg.raw.get_or("model.kind", "heisenberg"));
  const double theta = kv::as_theta(cfg.raw, "model.theta", 0.5);
  const double eps = kv::as_double_or(cfg.raw, "model.perturbation",
                                      kind == ModelKind::perturbed ? 0.05 : 0.0);
  kv::require_range(eps >= 0.0, "model.perturbation must be >= 0");
  return build_model(kind, theta, eps, cfg.seed, chart_from(cfg));
}

inline void attach_model_descriptor(const ModelBundle& m, ReportBundle& out) {
  KvRecord rec;
  for (const auto& [k, v] : model_descriptor(m.model, m.chart.period)) rec.set(k, v);
  out.artifacts.emplace_back("model_descriptor.txt", to_kv_text(rec));
}

inline OptimizerConfig optimizer_from(const ExperimentConfig& cfg) {
  OptimizerConfig opt;
  opt.segments = static_cast<int>(kv::as_long_or(cfg.raw, "optimizer.segments", opt.segments));
  opt.restarts = static_cast<int>(kv::as_long_or(cfg.raw, "optimizer.restarts", opt.restarts));
  opt.step_budget = kv::as_long_or(cfg.raw, "optimizer.step_budget", opt.step_budget);
  opt.endpoint_tol_rel = kv::as_double_or(cfg.raw, "optimizer.endpoint_tol_rel", opt.endpoint_tol_rel);
  opt.endpoint_tol_abs = kv::as_double_or(cfg.raw, "optimizer.endpoint_tol_abs", opt.endpoint_tol_abs);
  opt.defect_tol = kv::as_double_or(cfg.raw, "optimizer.defect_tol", opt.defect_tol);
  opt.penalty0 = kv::as_double_or(cfg.raw, "optimizer.penalty0", opt.penalty0);
  opt.penalty_growth = kv::as_double_or(cfg.raw, "optimizer.penalty_growth", opt.penalty_growth);
  opt.max_escalations =
      static_cast<int>(kv::as_long_or(cfg.raw, "optimizer.max_escalations", opt.max_escalations));
  opt.seed = cfg.seed;
  try {
    opt.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return opt;
}

inline HoelderField field_from(const ExperimentConfig& cfg) {
  const double theta = kv::as_theta(cfg.raw, "field.theta", 0.5);
  const double lambda = kv::as_double_or(cfg.raw, "field.lambda", 4.0);
  kv::require_range(lambda >= 2.0, "field.lambda must be >= 2");
  const long depth = kv::as_long_or(cfg.raw, "field.depth", 8);
  kv::require_range(depth >= 0, "field.depth must be >= 0");
  const double amplitude = kv::as_double_or(cfg.raw, "field.amplitude", 1.0);
  kv::require_range(amplitude >= 0.0, "field.amplitude must be >= 0");
  return synth_weierstrass(theta, lambda, static_cast<int>(depth), amplitude, cfg.seed,
                           chart_from(cfg).period);
}

inline KvRecord field_recipe(const HoelderField& f, std::uint64_t seed) {
  KvRecord rec;
  rec.set("theta", fmt_double(f.theta));
  rec.set("lambda", fmt_double(f.lambda));
  rec.set("depth", std::to_string(f.depth));
  rec.set("seed", std::to_string(seed));
  rec.set("amplitude", fmt_double(f.amplitude));
  rec.set("period", fmt_double(f.period));
  return rec;
}

inline GridSpec grid_from(const ExperimentConfig& cfg) {
  GridSpec grid;
  grid.resolution = static_cast<int>(kv::as_long_or(cfg.raw, "grid.resolution", 33));
  grid.pair_budget = kv::as_long_or(cfg.raw, "grid.pair_budget", 20000);
  grid.seed = cfg.seed;
  try {
    grid.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return grid;
}

inline void run_synth(const ExperimentConfig& cfg, ReportBundle& out) {
  const HoelderField f = field_from(cfg);
  out.add_scalar("sup_bound", f.sup_bound);
  out.add_scalar("seminorm_bound", f.seminorm_bound);
  out.add_scalar("analytic_norm_bound", f.analytic_norm_bound);
  out.artifacts.emplace_back("field_recipe.txt", to_kv_text(field_recipe(f, cfg.seed)));

  // samples along the main diagonal of the chart box
  const GridSpec grid = grid_from(cfg);
  CsvTable t;
  t.header = {"t", "value"};
  double sampled_sup = 0.0;
  for (int i = 0; i < grid.resolution; ++i) {
    const double s = static_cast<double>(i) / (grid.resolution - 1);
    const Vec3 x = (s - 0.5) * Vec3{f.period, f.period, f.period};
    const double v = f.eval(x);
    sampled_sup = std::max(sampled_sup, std::abs(v));
    t.rows.push_back({fmt_double(s), fmt_double(v)});
  }
  out.tables.emplace_back("synth", std::move(t));
  out.add_scalar("sampled_sup", sampled_sup);
  out.add_assertion("sampled_sup_below_bound", sampled_sup <= f.sup_bound,
                    fmt_double(sampled_sup) + " vs " + fmt_double(f.sup_bound));
}

inline void run_norm(const ExperimentConfig& cfg, ReportBundle& out) {
  const HoelderField f = field_from(cfg);
  const GridSpec grid = grid_from(cfg);
  const Box box = MetricChart{f.period}.box();
  const auto eval = f.evaluator();

  CsvTable t;
  t.header = {"resolution", "sup", "seminorm", "value"};
  double final_value = 0.0;
  for (int res : {17, 33, grid.resolution}) {
    GridSpec g = grid;
    g.resolution = res;
    const NormEstimate est = hoelder_norm_estimate(eval, f.theta, box, g);
    final_value = est.value();
    t.rows.push_back(
        {std::to_string(res), fmt_double(est.sup), fmt_double(est.seminorm), fmt_double(est.value())});
  }
  out.tables.emplace_back("norm", std::move(t));
  out.add_scalar("estimate", final_value);
  out.add_scalar("analytic_norm_bound", f.analytic_norm_bound);
  out.add_assertion("estimate_below_bound", final_value <= f.analytic_norm_bound,
                    fmt_double(final_value) + " vs " + fmt_double(f.analytic_norm_bound));
  out.artifacts.emplace_back("field_recipe.txt", to_kv_text(field_recipe(f, cfg.seed)));
}

inline void run_dist(const ExperimentConfig& cfg, ReportBundle& out) {
  const ModelBundle m = model_from(cfg);
  const OptimizerConfig opt = optimizer_from(cfg);
  const Vec3 p = kv::as_vec3(cfg.raw, "dist.p");
  const Vec3 q = kv::as_vec3(cfg.raw, "dist.q");
  attach_model_descriptor(m, out);
  const DistanceEstimate est = estimate_upper(m.alpha, p, q, opt);
  out.add_scalar("value", est.value);
  out.add_scalar("defect", est.defect);
  out.add_scalar("endpoint_gap", est.endpoint_gap);
  out.add_scalar("iterations", static_cast<double>(est.iterations));
  out.add_scalar("d_r", m.chart.distance(p, q));
  out.add_scalar_text("status", est.converged() ? "converged" : "unconverged");
  out.add_assertion("estimate_converged", est.converged(),
                    "endpoint_gap " + fmt_double(est.endpoint_gap));
  CsvTable t;
  t.header = {"x", "y", "z"};
  for (const Vec3& v : est.path.vertices())
    t.rows.push_back({fmt_double(v.x), fmt_double(v.y), fmt_double(v.z)});
  out.tables.emplace_back("dist_path", std::move(t));
}

inline void run_probe(const ExperimentConfig& cfg, ReportBundle& out) {
  const ModelBundle m = model_from(cfg);
  const Vec3 p = kv::as_vec3_or(cfg.raw, "probe.point", {0, 0, 0});
  const std::vector<double> eps_list =
      cfg.raw.has("probe.eps") ? kv::as_list(cfg.raw, "probe.eps") : std::vector<double>{0.1};
  const long samples = kv::as_long_or(cfg.raw, "probe.samples", 60);
  kv::require_range(samples >= 1, "probe.samples must be >= 1");
  const long steps = kv::as_long_or(cfg.raw, "probe.steps", 64);
  kv::require_range(steps >= 4, "probe.steps must be >= 4");

  attach_model_descriptor(m, out);
  CsvTable t;
  t.header = {"eps", "max_abs_dz", "max_d_r", "area_cap", "cap_fraction"};
  CsvTable cloud;
  cloud.header = {"eps", "x", "y", "z"};
  for (double eps : eps_list) {
    kv::require_range(eps > 0.0, "probe.eps entries must be positive");
    const ReachReport rep = reachability_probe(m.alpha, p, eps, samples, cfg.seed, m.chart,
                                               static_cast<int>(steps));
    const double cap = eps * eps / (4.0 * std::numbers::pi);
    t.rows.push_back({fmt_double(eps), fmt_double(rep.max_abs_dz), fmt_double(rep.max_riemannian),
                      fmt_double(cap), fmt_double(rep.max_abs_dz / cap)});
    for (const Vec3& e : rep.endpoints)
      cloud.rows.push_back({fmt_double(eps), fmt_double(e.x), fmt_double(e.y), fmt_double(e.z)});
  }
  out.tables.emplace_back("probe", std::move(t));
  out.tables.emplace_back("probe_cloud", std::move(cloud));
}

inline void run_stokes(const ExperimentConfig& cfg, ReportBundle& out) {
  const ModelBundle m = model_from(cfg);
  const bool normalized = cfg.raw.get_or("stokes.normalized", "true") == "true";
  const OneForm form = normalized ? unit_form(m.alpha) : m.alpha;
  const double theta = m.alpha.theta;

  DiskFamily fam;
  const std::string kind = cfg.raw.get_or("stokes.kind", "mixed");
  if (kind == "flat")
    fam.kind = DiskFamily::Kind::flat;
  else if (kind == "wavy")
    fam.kind = DiskFamily::Kind::wavy;
  else if (kind == "mixed")
    fam.kind = DiskFamily::Kind::mixed;
  else
    throw ConfigError("stokes.kind must be flat|wavy|mixed, got '" + kind + "'");
  fam.r_min = kv::as_double_or(cfg.raw, "stokes.r_min", fam.r_min);
  fam.r_max = kv::as_double_or(cfg.raw, "stokes.r_max", fam.r_max);
  fam.segments = static_cast<int>(kv::as_long_or(cfg.raw, "stokes.segments", fam.segments));
  fam.rings = static_cast<int>(kv::as_long_or(cfg.raw, "stokes.rings", fam.rings));
  fam.sigma = kv::as_double_or(cfg.raw, "stokes.sigma", fam.sigma);
  try {
    fam.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const long trials = kv::as_long_or(cfg.raw, "stokes.trials", 400);
  kv::require_range(trials >= 1, "stokes.trials must be >= 1");

  attach_model_descriptor(m, out);
  CsvTable t;
  t.header = {"trial", "boundary_len", "area", "ratio_over_norm"};
  double k_hat = 0.0;
  long admissible = 0;
  for (long trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(trial));
    const TriangulatedDisk disk = detail::family_disk(fam, rng, trial);
    const double blen = disk.boundary_length();
    const double area = disk.area();
    if (!(blen > 0.0 && blen < fam.sigma && area > 0.0)) continue;
    ++admissible;
    const double ratio = stokes_ratio(form, disk, theta, fam.sigma) / form.norm_upper;
    k_hat = std::max(k_hat, ratio);
    t.rows.push_back(
        {std::to_string(trial), fmt_double(blen), fmt_double(area), fmt_double(ratio)});
  }
  out.tables.emplace_back("stokes", std::move(t));
  out.add_scalar("k_hat", k_hat);
  out.add_scalar("admissible", static_cast<double>(admissible));
  out.add_scalar("norm_upper", form.norm_upper);

  const KEstimate cross = estimate_K(form, theta, fam, trials, cfg.seed);
  out.add_assertion("k_hat_matches_estimator", cross.k_hat == k_hat && cross.admissible == admissible,
                    fmt_double(cross.k_hat) + " vs " + fmt_double(k_hat));
  out.add_assertion("k_hat_finite", std::isfinite(k_hat) && admissible > 0, fmt_double(k_hat));
}

inline void run_fill(const ExperimentConfig& cfg, ReportBundle& out) {
  const std::string shape = cfg.raw.get_or("fill.shape", "circle");
  const double radius = kv::as_double_or(cfg.raw, "fill.radius", 0.05);
  kv::require_range(radius > 0.0, "fill.radius must be positive");
  const long segments = kv::as_long_or(cfg.raw, "fill.segments", 64);
  kv::require_range(segments >= 3, "fill.segments must be >= 3");

  std::vector<Vec3> verts;
  if (shape == "circle" || shape == "wavy") {
    for (long i = 0; i < segments; ++i) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(segments);
      double r = radius;
      double z = 0.0;
      if (shape == "wavy") {
        r *= 1.0 + 0.2 * std::cos(3.0 * a);
        z = 0.3 * radius * std::sin(2.0 * a);
      }
      verts.push_back({r * std::cos(a), r * std::sin(a), z});
    }
  } else if (shape == "square") {
    verts = {{0, 0, 0}, {radius, 0, 0}, {radius, radius, 0}, {0, radius, 0}};
  } else if (shape == "outback") {
    verts = {{0, 0, 0}, {radius / 2.0, 0, 0}, {radius, 0, 0}, {radius / 2.0, 0, 0}};
  } else {
    throw ConfigError("fill.shape must be circle|wavy|square|outback, got '" + shape + "'");
  }

  FillOptions opts;
  opts.delta_m = kv::as_double_or(cfg.raw, "fill.delta_m", opts.delta_m);
  opts.c_m = kv::as_double_or(cfg.raw, "fill.c_m", opts.c_m);
  opts.rings = static_cast<int>(kv::as_long_or(cfg.raw, "fill.rings", opts.rings));
  opts.smoothing_iters =
      static_cast<int>(kv::as_long_or(cfg.raw, "fill.smoothing_iters", opts.smoothing_iters));

  FilledDisk filled;
  try {
    filled = fill_disk(Polyline::loop(std::move(verts)), opts);
  } catch (const std::invalid_argument& e) {
    // configured loop violates a filling precondition
    throw ConfigError(e.what());
  }
  out.add_scalar("area", filled.checks.area);
  out.add_scalar("boundary_len", filled.checks.boundary_len);
  out.add_scalar("initial_area", filled.checks.initial_area);
  out.add_scalar("max_dist_to_boundary", filled.checks.max_dist_to_boundary);
  out.add_scalar("c_m", opts.c_m);
  out.add_scalar("delta_m", opts.delta_m);
  out.add_assertion("area_bound", filled.checks.area_bound_ok,
                    fmt_double(filled.checks.area) + " vs c_m*len^2");
  out.add_assertion("neighborhood", filled.checks.neighborhood_ok,
                    fmt_double(filled.checks.max_dist_to_boundary) + " vs c_m*len");
  out.add_assertion("combinatorial_disk", is_combinatorial_disk(filled.disk), "");
  out.artifacts.emplace_back("fill_disk.off", disk_off(filled.disk));
}

inline void run_scaling(const ExperimentConfig& cfg, ReportBundle& out) {
  const ModelBundle m = model_from(cfg);
  const double theta = m.alpha.theta;
  const OptimizerConfig opt = optimizer_from(cfg);
  const Vec3 base = kv::as_vec3_or(cfg.raw, "scaling.base", {0, 0, 0});

  const double c_m =
      kv::as_double_or(cfg.raw, "constants.c_m", 1.0 / (2.0 * std::numbers::pi));
  const double delta_m = kv::as_double_or(cfg.raw, "constants.delta_m", 0.5);
  const double sigma = kv::as_double_or(cfg.raw, "constants.sigma", 0.5);
  kv::require_range(c_m > 0.0 && delta_m > 0.0 && sigma > 0.0,
                    "constants.c_m, constants.delta_m, constants.sigma must be positive");
  const double tau = std::min(delta_m, sigma);

  // transverse curve: vertical segment long enough for every epsilon
  const Polyline curve = Polyline::open({base, base + Vec3{0, 0, tau}});
  const int angle_samples = 16;
  const double sin_phi0 = min_sin_angle(m.alpha, curve, angle_samples);
  const double alpha_norm = m.alpha.unit_norm_upper;

  double k_value = 0.0;
  const std::string k_spec = cfg.raw.get_or("constants.k", "auto");
  if (k_spec == "auto") {
    DiskFamily fam;
    fam.sigma = sigma;
    fam.r_max = std::min(fam.r_max, 0.95 * sigma / (2.0 * std::numbers::pi));
    const long k_trials = kv::as_long_or(cfg.raw, "constants.k_trials", 400);
    kv::require_range(k_trials >= 1, "constants.k_trials must be >= 1");
    const OneForm normalized = unit_form(m.alpha);
    k_value = estimate_K(normalized, theta, fam, k_trials, Rng::mix(cfg.seed ^ 0x4b)).k_hat;
  } else {
    KvRecord tmp;
    tmp.set("constants.k", k_spec);
    k_value = kv::as_double(tmp, "constants.k");
  }
  kv::require_range(k_value > 0.0, "constants.k must be positive");

  double eta_value = 0.0;
  const std::string eta_spec = cfg.raw.get_or("constants.eta", "auto");
  std::string eta_procedure;
  if (eta_spec == "auto") {
    OptimizerConfig eta_cfg = opt;
    eta_cfg.seed = Rng::mix(cfg.seed ^ 0xe7a);
    const EtaEstimate est = estimate_eta(m.alpha, base, curve, tau, eta_cfg);
    eta_value = est.eta;
    eta_procedure = "dyadic sweep over tau/2 * 2^-j: largest distance with estimate below tau/2 was " +
                    fmt_double(est.largest_passing) + ", halved for safety";
    kv::require_range(eta_value > 0.0, "constants.eta auto-estimation found no passing distance");
  } else {
    KvRecord tmp;
    tmp.set("constants.eta", eta_spec);
    eta_value = kv::as_double(tmp, "constants.eta");
    eta_procedure = "configured override";
    kv::require_range(eta_value > 0.0, "constants.eta must be positive");
  }

  const ConstantsBundle bundle =
      make_bundle(theta, c_m, k_value, sin_phi0, alpha_norm, delta_m, sigma, eta_value);

  std::vector<double> epsilons;
  if (cfg.raw.get_or("scaling.epsilons", "auto") == "auto") {
    const long count = kv::as_long_or(cfg.raw, "scaling.count", 8);
    kv::require_range(count >= 3, "scaling.count must be >= 3");
    const double hi = 0.9 * bundle.rho;
    const double lo = bundle.rho / 30.0;
    for (long i = 0; i < count; ++i)
      epsilons.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
  } else {
    epsilons = kv::as_list(cfg.raw, "scaling.epsilons");
  }

  ScalingResult res;
  try {
    res = scaling_experiment(m.alpha, theta, base, curve, epsilons, opt, bundle, m.chart);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  out.tables.emplace_back("scaling", scaling_csv(res));
  out.add_scalar("slope", res.slope);
  out.add_scalar("intercept", res.intercept);
  out.add_scalar("r2", res.r2);
  out.add_scalar("violations", static_cast<double>(res.violations));
  out.add_scalar("c", bundle.c);
  out.add_scalar("rho", bundle.rho);
  out.add_scalar("sin_phi0", sin_phi0);
  out.add_scalar("sin_phi0_samples_per_segment", angle_samples);
  out.add_scalar("alpha_norm", alpha_norm);
  out.add_scalar("k", k_value);
  out.add_scalar("eta", eta_value);
  out.add_scalar_text("eta_procedure", eta_procedure);
  out.artifacts.emplace_back("constants_bundle.txt", to_kv_text(bundle_kv(bundle)));
  attach_model_descriptor(m, out);
  out.add_assertion("no_pointwise_violations", res.violations == 0,
                    std::to_string(res.violations) + " violations");
  out.add_assertion("all_estimates_converged", !res.partial, "");
  if (res.fitted_points >= 2)
    out.add_assertion("fit_quality", res.r2 >= 0.98, "r2 = " + fmt_double(res.r2));
}

inline void run_limits(const ExperimentConfig& cfg, ReportBundle& out) {
  const double theta_min = kv::as_double_or(cfg.raw, "limits.theta_min", 0.9);
  const double theta_max = kv::as_double_or(cfg.raw, "limits.theta_max", 0.999);
  kv::require_range(theta_min > 0.0 && theta_max < 1.0 && theta_min < theta_max,
                    "limits.theta range must satisfy 0 < theta_min < theta_max < 1");
  const long count = kv::as_long_or(cfg.raw, "limits.count", 21);
  kv::require_range(count >= 2, "limits.count must be >= 2");
  const double c_m = kv::as_double_or(cfg.raw, "limits.c_m", 1.0 / (4.0 * std::numbers::pi));
  const double k = kv::as_double_or(cfg.raw, "limits.k", 1.0);
  const double sin_phi0 = kv::as_double_or(cfg.raw, "limits.sin_phi0", 1.0);
  const double alpha_norm = kv::as_double_or(cfg.raw, "limits.alpha_norm", 1.0);
  kv::require_range(c_m > 0.0 && k > 0.0 && sin_phi0 > 0.0 && sin_phi0 <= 1.0 && alpha_norm > 0.0,
                    "limits constants must be positive (sin_phi0 in (0,1])");

  std::vector<double> thetas;
  for (long i = 0; i < count; ++i)
    thetas.push_back(theta_min + (theta_max - theta_min) * static_cast<double>(i) / (count - 1));
  const C1LimitResult table = c1_limit_check(c_m, k, sin_phi0, alpha_norm, thetas);

  CsvTable t;
  t.header = {"theta", "c"};
  double sup = 0.0;
  for (std::size_t i = 0; i < table.thetas.size(); ++i) {
    sup = std::max(sup, table.c_values[i]);
    t.rows.push_back({fmt_double(table.thetas[i]), fmt_double(table.c_values[i])});
  }
  out.tables.emplace_back("limits", std::move(t));
  out.add_scalar("c_at_one", table.c_at_one);
  out.add_scalar("sup_c", sup);
  out.add_assertion("sup_finite", std::isfinite(sup) && std::isfinite(table.c_at_one), "");
  const double first_err = std::abs(table.c_values.front() - table.c_at_one);
  const double last_err = std::abs(table.c_values.back() - table.c_at_one);
  out.add_assertion("approaches_limit", last_err <= std::max(0.01 * table.c_at_one, first_err),
                    "|C(theta_max) - C(1)| = " + fmt_double(last_err));
}

}  // namespace experiments

// Execute the experiment named in the config and collect every output into a
// report bundle. Deterministic: the same config yields byte-identical tables.
inline ReportBundle run_config(const ExperimentConfig& cfg) {
  ReportBundle out;
  out.experiment = to_string(cfg.kind);
  out.config_echo = cfg.raw;
  const auto t0 = std::chrono::steady_clock::now();
  switch (cfg.kind) {
    case ExperimentKind::synth: experiments::run_synth(cfg, out); break;
    case ExperimentKind::norm: experiments::run_norm(cfg, out); break;
    case ExperimentKind::dist: experiments::run_dist(cfg, out); break;
    case ExperimentKind::probe: experiments::run_probe(cfg, out); break;
    case ExperimentKind::stokes: experiments::run_stokes(cfg, out); break;
    case ExperimentKind::fill: experiments::run_fill(cfg, out); break;
    case ExperimentKind::scaling: experiments::run_scaling(cfg, out); break;
    case ExperimentKind::limits: experiments::run_limits(cfg, out); break;
  }
  out.timing_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

inline ReportBundle run_config_file(const std::string& path) {
  return run_config(ExperimentConfig::load(path));
}

}  // namespace srlab

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "srlab/chart.hpp"
#include "srlab/hoelder_field.hpp"
#include "srlab/one_form.hpp"

namespace srlab {

enum class ModelKind { heisenberg, perturbed, foliation };

inline std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::heisenberg: return "heisenberg";
    case ModelKind::perturbed: return "perturbed";
    case ModelKind::foliation: return "foliation";
  }
  return "?";
}

inline ModelKind parse_model_kind(const std::string& s) {
  if (s == "heisenberg") return ModelKind::heisenberg;
  if (s == "perturbed") return ModelKind::perturbed;
  if (s == "foliation") return ModelKind::foliation;
  throw std::invalid_argument("model.kind must be one of heisenberg|perturbed|foliation, got '" + s + "'");
}

struct DistributionModel {
  ModelKind kind = ModelKind::heisenberg;
  double theta = 0.5;
  double perturbation_amplitude = 0.0;
  std::uint64_t seed = 0;
  HoelderField p_field;  // perturbed only
  HoelderField q_field;  // perturbed only
  std::string description;
};

struct ModelBundle {
  OneForm alpha;
  DistributionModel model;
  MetricChart chart;
};

namespace detail {

// Bounds for the smooth contact coefficients y/2 and -x/2 over the centered
// chart box: sup = L/4, and |delta/2| <= r^theta diam^{1-theta} / 2.
inline CoefficientBounds contact_coeff_bounds(double theta, double period) {
  const double diam = period * std::sqrt(3.0);
  return {period / 4.0, 0.5 * std::pow(diam, 1.0 - theta)};
}

}  // namespace detail

// Default lacunary recipe for the perturbation fields.
constexpr double kPerturbationLambda = 4.0;
constexpr int kPerturbationDepth = 10;

// Assemble a named distribution model:
//   heisenberg  alpha = dz - (x dy - y dx)/2            (smooth contact form)
//   foliation   alpha = dz                              (integrable null model)
//   perturbed   alpha = dz - ((x + eps P) dy - (y + eps Q) dx)/2
// with P, Q lacunary C^theta fields. Amplitude 0 reproduces heisenberg exactly.
inline ModelBundle build_model(ModelKind kind, double theta, double perturbation_amplitude,
                               std::uint64_t seed, const MetricChart& chart = {}) {
  chart.validate();
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in (0,1)");
  if (!(perturbation_amplitude >= 0.0))
    throw std::invalid_argument("model.perturbation must be >= 0");

  ModelBundle out;
  out.chart = chart;
  out.model.kind = kind;
  out.model.theta = theta;
  out.model.seed = seed;

  OneForm& alpha = out.alpha;
  alpha.theta = theta;
  alpha.dual_norm_lower = 1.0;  // a3 == 1 in every model

  switch (kind) {
    case ModelKind::heisenberg: {
      alpha.coeff = [](const Vec3& x) { return Vec3{x.y / 2.0, -x.x / 2.0, 1.0}; };
      const CoefficientBounds cb = detail::contact_coeff_bounds(theta, chart.period);
      alpha.coeff_bounds = {cb, cb, CoefficientBounds{1.0, 0.0}};
      out.model.description = "contact form dz - (x dy - y dx)/2";
      break;
    }
    case ModelKind::foliation: {
      alpha.coeff = [](const Vec3&) { return Vec3{0.0, 0.0, 1.0}; };
      alpha.coeff_bounds = {CoefficientBounds{}, CoefficientBounds{}, CoefficientBounds{1.0, 0.0}};
      out.model.description = "integrable foliation dz";
      break;
    }
    case ModelKind::perturbed: {
      const double eps = perturbation_amplitude;
      out.model.perturbation_amplitude = eps;
      out.model.p_field = synth_weierstrass(theta, kPerturbationLambda, kPerturbationDepth, 1.0,
                                            Rng::mix(seed ^ 0x70), chart.period);
      out.model.q_field = synth_weierstrass(theta, kPerturbationLambda, kPerturbationDepth, 1.0,
                                            Rng::mix(seed ^ 0x71), chart.period);
      alpha.coeff = [eps, p = out.model.p_field, q = out.model.q_field](const Vec3& x) {
        return Vec3{(x.y + eps * q.eval(x)) / 2.0, -(x.x + eps * p.eval(x)) / 2.0, 1.0};
      };
      const CoefficientBounds smooth = detail::contact_coeff_bounds(theta, chart.period);
      const auto field_part = [eps](const HoelderField& f) {
        return CoefficientBounds{eps * f.sup_bound / 2.0, eps * f.seminorm_bound / 2.0};
      };
      const CoefficientBounds qb = field_part(out.model.q_field);
      const CoefficientBounds pb = field_part(out.model.p_field);
      alpha.coeff_bounds = {CoefficientBounds{smooth.sup + qb.sup, smooth.seminorm + qb.seminorm},
                            CoefficientBounds{smooth.sup + pb.sup, smooth.seminorm + pb.seminorm},
                            CoefficientBounds{1.0, 0.0}};
      out.model.description = "contact form with C^theta coefficient perturbation";
      break;
    }
  }

  double raw = 0.0;
  for (const auto& cb : alpha.coeff_bounds) raw = std::max(raw, cb.sup + cb.seminorm);
  alpha.norm_upper = raw;
  alpha.unit_norm_upper = unit_form(alpha).norm_upper;
  return out;
}

// Model descriptors use the same plain-text key-value record format as
// field recipes; a descriptor reproduces the model bit-exactly.
inline std::vector<std::pair<std::string, std::string>> model_descriptor(
    const DistributionModel& m, double chart_period) {
  std::vector<std::pair<std::string, std::string>> rec;
  rec.emplace_back("kind", to_string(m.kind));
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", m.theta);
  rec.emplace_back("theta", buf);
  std::snprintf(buf, sizeof(buf), "%.17g", m.perturbation_amplitude);
  rec.emplace_back("perturbation", buf);
  rec.emplace_back("seed", std::to_string(m.seed));
  std::snprintf(buf, sizeof(buf), "%.17g", chart_period);
  rec.emplace_back("period", buf);
  return rec;
}

}  // namespace srlab

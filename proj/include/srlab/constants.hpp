#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "srlab/one_form.hpp"
#include "srlab/paths.hpp"

namespace srlab {

// Every named constant of the vertical lower-bound argument. tau, rho and c
// are derived; the builder recomputes them from the other fields and the
// formula functions below reproduce them bit-identically.
struct ConstantsBundle {
  double theta = 0.5;
  double c_m = 0.0;        // isoperimetric filling constant
  double k = 0.0;          // Hoelder Stokes constant
  double sin_phi0 = 0.0;   // min sin of the angle between the curve and H
  double alpha_norm = 0.0; // certified C^theta bound of the normalized form
  double delta_m = 0.0;    // filling smallness threshold
  double sigma = 0.0;      // Stokes smallness threshold
  double tau = 0.0;        // min(delta_m, sigma)
  double eta = 0.0;        // uniform-continuity threshold
  double rho = 0.0;        // scale below which the lower bound applies
  double c = 0.0;          // constant of the lower bound d_H >= c d_R^{1/(1+theta)}

  void validate() const {
    if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in (0,1)");
    if (!(c_m > 0.0)) throw std::invalid_argument("constants.c_m must be positive");
    if (!(k > 0.0)) throw std::invalid_argument("constants.k must be positive");
    if (!(sin_phi0 > 0.0 && sin_phi0 <= 1.0))
      throw std::invalid_argument("constants.sin_phi0 must lie in (0,1]");
    if (!(alpha_norm > 0.0)) throw std::invalid_argument("constants.alpha_norm must be positive");
    if (!(delta_m > 0.0) || !(sigma > 0.0) || !(eta > 0.0))
      throw std::invalid_argument("constants delta_m, sigma, eta must be positive");
  }
};

// Shared factor c_m^{theta/(1+theta)} k^{1/(1+theta)} (sin phi0)^{-1/(1+theta)}
// ||alpha||^{1/(1+theta)} appearing in both the constant and the brace bound.
inline double bound_prefactor(const ConstantsBundle& b) {
  const double p = 1.0 / (1.0 + b.theta);
  return std::pow(b.c_m, b.theta * p) * std::pow(b.k, p) * std::pow(b.sin_phi0, -p) *
         std::pow(b.alpha_norm, p);
}

inline double constant_C(const ConstantsBundle& b) {
  if (!(b.sin_phi0 > 0.0))
    throw std::invalid_argument("constant_C: sin_phi0 must be positive (transverse curve required)");
  b.validate();
  return 1.0 / (2.0 * bound_prefactor(b));
}

inline double rho_threshold(const ConstantsBundle& b) {
  b.validate();
  const double third = 1.0 / (std::pow(2.0, (1.0 + b.theta) / b.theta) * b.c_m *
                              std::pow(b.k, 1.0 / b.theta) * std::pow(b.sin_phi0, -1.0 / b.theta) *
                              std::pow(b.alpha_norm, 1.0 / b.theta));
  return std::min(b.eta, std::min(b.tau / 2.0, third));
}

inline ConstantsBundle make_bundle(double theta, double c_m, double k, double sin_phi0,
                                   double alpha_norm, double delta_m, double sigma, double eta) {
  ConstantsBundle b;
  b.theta = theta;
  b.c_m = c_m;
  b.k = k;
  b.sin_phi0 = sin_phi0;
  b.alpha_norm = alpha_norm;
  b.delta_m = delta_m;
  b.sigma = sigma;
  b.eta = eta;
  b.tau = std::min(delta_m, sigma);
  b.validate();
  b.rho = rho_threshold(b);
  b.c = constant_C(b);
  return b;
}

// 1 - prefactor * len^{theta/(1+theta)}: the bracketed quantity in the length
// regrouping step. For any len below rho the value is >= 1/2; this function
// makes that claim executable.
inline double curly_brace_check(const ConstantsBundle& b, double gamma0_length) {
  b.validate();
  if (!(gamma0_length < rho_threshold(b)))
    throw std::invalid_argument("curly_brace_check: gamma0 length must be below rho");
  if (!(gamma0_length >= 0.0)) throw std::invalid_argument("curly_brace_check: negative length");
  return 1.0 - bound_prefactor(b) * std::pow(gamma0_length, b.theta / (1.0 + b.theta));
}

// Minimum of sin_angle over segment-midpoint samples of a transverse curve.
inline double min_sin_angle(const OneForm& alpha, const Polyline& curve, int samples_per_segment = 8) {
  if (curve.trivial()) throw std::invalid_argument("min_sin_angle: curve is trivial");
  if (samples_per_segment < 1) throw std::invalid_argument("min_sin_angle: samples must be >= 1");
  double min_sin = 1.0;
  for (std::size_t i = 0; i < curve.segment_count(); ++i) {
    const auto [a, b] = curve.segment(i);
    const Vec3 d = b - a;
    for (int s = 0; s < samples_per_segment; ++s) {
      const double t = (s + 0.5) / samples_per_segment;
      const double v = sin_angle(alpha, a + t * d, d);
      if (v == 0.0)
        throw std::invalid_argument("min_sin_angle: curve is not transverse (sampled angle is 0)");
      min_sin = std::min(min_sin, v);
    }
  }
  return min_sin;
}

struct C1LimitResult {
  std::vector<double> thetas;
  std::vector<double> c_values;
  double c_at_one = 0.0;  // the same formula evaluated at theta = 1
};

// C(theta) across a grid of exponents with the other inputs held fixed,
// together with the theta = 1 formula value it should approach.
inline C1LimitResult c1_limit_check(double c_m, double k, double sin_phi0, double alpha_norm,
                                    const std::vector<double>& thetas) {
  C1LimitResult out;
  const auto c_of = [&](double theta) {
    const double p = 1.0 / (1.0 + theta);
    return 1.0 / (2.0 * std::pow(c_m, theta * p) * std::pow(k, p) * std::pow(sin_phi0, -p) *
                  std::pow(alpha_norm, p));
  };
  for (double t : thetas) {
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("theta must lie in (0,1)");
    out.thetas.push_back(t);
    out.c_values.push_back(c_of(t));
  }
  out.c_at_one = c_of(1.0);
  return out;
}

}  // namespace srlab

#pragma once

// Independent oracles used to freeze expected values. Everything here is
// deliberately brute force and shares no code with the library paths it
// checks.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracles {

// ||f||_inf + sup |f(x)-f(y)|/|x-y|^theta over all pairs of an n-point grid
// on [a, b]. O(n^2); keep n around 1e4.
inline double brute_force_hoelder_norm_1d(const std::function<double(double)>& f, double theta,
                                          double a, double b, int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  std::vector<double> vs(static_cast<std::size_t>(n));
  double sup = 0.0;
  for (int i = 0; i < n; ++i) {
    xs[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
    vs[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);
    sup = std::max(sup, std::abs(vs[static_cast<std::size_t>(i)]));
  }
  double semi = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double q = std::abs(vs[static_cast<std::size_t>(i)] - vs[static_cast<std::size_t>(j)]) /
                       std::pow(xs[static_cast<std::size_t>(j)] - xs[static_cast<std::size_t>(i)], theta);
      if (q > semi) semi = q;
    }
  }
  return sup + semi;
}

// Isoperimetric (Dido) facts for the unperturbed contact model: a horizontal
// lift climbs by the signed area its shadow encloses, so the shortest lift
// over height z has length 2 sqrt(pi |z|), and a loop of length L encloses
// area at most L^2 / (4 pi).
inline double dido_length(double height) { return 2.0 * std::sqrt(std::numbers::pi * std::abs(height)); }
inline double dido_area_cap(double loop_length) {
  return loop_length * loop_length / (4.0 * std::numbers::pi);
}

// Signed area of a closed planar polygon (shoelace).
inline double shoelace_area(const std::vector<std::pair<double, double>>& poly) {
  double a = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [x0, y0] = poly[i];
    const auto& [x1, y1] = poly[(i + 1) % n];
    a += 0.5 * (x0 * y1 - x1 * y0);
  }
  return a;
}

}  // namespace oracles

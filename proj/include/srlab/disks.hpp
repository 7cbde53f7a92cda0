#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "srlab/one_form.hpp"
#include "srlab/paths.hpp"
#include "srlab/rng.hpp"
#include "srlab/vec3.hpp"

namespace srlab {

// Triangulated 2-disk: a combinatorial disk (Euler characteristic 1 with a
// single boundary cycle) whose boundary reproduces the input loop verbatim.
struct TriangulatedDisk {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<int> boundary;  // ordered vertex indices of the loop

  double area() const {
    double a = 0.0;
    for (const auto& t : triangles) {
      const Vec3& p = vertices[static_cast<std::size_t>(t[0])];
      const Vec3& q = vertices[static_cast<std::size_t>(t[1])];
      const Vec3& r = vertices[static_cast<std::size_t>(t[2])];
      a += 0.5 * (q - p).cross(r - p).norm();
    }
    return a;
  }

  double boundary_length() const {
    double len = 0.0;
    const std::size_t n = boundary.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec3& a = vertices[static_cast<std::size_t>(boundary[i])];
      const Vec3& b = vertices[static_cast<std::size_t>(boundary[(i + 1) % n])];
      len += (b - a).norm();
    }
    return len;
  }

  Polyline boundary_loop() const {
    std::vector<Vec3> verts;
    verts.reserve(boundary.size());
    for (int i : boundary) verts.push_back(vertices[static_cast<std::size_t>(i)]);
    return Polyline::loop(std::move(verts));
  }
};

// Combinatorial validity: V - E + F = 1, and the edges incident to exactly
// one triangle form a single closed cycle matching `boundary`.
inline bool is_combinatorial_disk(const TriangulatedDisk& d) {
  if (d.triangles.empty() || d.boundary.size() < 3) return false;
  std::map<std::pair<int, int>, int> edge_count;
  const auto key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
  for (const auto& t : d.triangles) {
    for (int i = 0; i < 3; ++i) {
      const int a = t[static_cast<std::size_t>(i)];
      const int b = t[static_cast<std::size_t>((i + 1) % 3)];
      if (a == b) return false;
      ++edge_count[key(a, b)];
    }
  }
  long boundary_edges = 0;
  for (const auto& [e, c] : edge_count) {
    if (c > 2) return false;
    if (c == 1) ++boundary_edges;
  }
  std::set<int> used;
  for (const auto& t : d.triangles) used.insert(t.begin(), t.end());
  const long v = static_cast<long>(used.size());
  const long e = static_cast<long>(edge_count.size());
  const long f = static_cast<long>(d.triangles.size());
  if (v - e + f != 1) return false;
  if (boundary_edges != static_cast<long>(d.boundary.size())) return false;
  for (std::size_t i = 0; i < d.boundary.size(); ++i) {
    const int a = d.boundary[i];
    const int b = d.boundary[(i + 1) % d.boundary.size()];
    auto it = edge_count.find(key(a, b));
    if (it == edge_count.end() || it->second != 1) return false;
  }
  return true;
}

struct FillOptions {
  double delta_m = 0.5;          // smallness threshold for fillable loops
  double c_m = 1.0 / (2.0 * std::numbers::pi);  // filling constant
  int rings = 0;                 // 0 = choose from the loop size
  int smoothing_iters = 60;
};

struct FillChecks {
  double area = 0.0;
  double boundary_len = 0.0;
  double initial_area = 0.0;
  double max_dist_to_boundary = 0.0;
  int accepted_smoothing_steps = 0;
  bool area_bound_ok = false;          // area <= c_m |G|^2
  bool neighborhood_ok = false;        // disk within c_m |G| of the loop
};

struct FilledDisk {
  TriangulatedDisk disk;
  FillChecks checks;
};

namespace detail {

// Concentric-ring triangulation of the cone over the loop centroid. Ring R
// holds the input vertices verbatim, so the boundary is never resampled.
inline TriangulatedDisk ring_cone(const std::vector<Vec3>& loop, int rings) {
  const int n = static_cast<int>(loop.size());
  Vec3 centroid{};
  for (const Vec3& v : loop) centroid = centroid + v;
  centroid = centroid / n;

  TriangulatedDisk d;
  d.vertices.push_back(centroid);
  const auto ring_index = [n](int ring, int i) { return 1 + (ring - 1) * n + (i % n); };
  for (int ring = 1; ring <= rings; ++ring) {
    const double t = static_cast<double>(ring) / rings;
    for (int i = 0; i < n; ++i) {
      if (ring == rings)
        d.vertices.push_back(loop[static_cast<std::size_t>(i)]);
      else
        d.vertices.push_back(centroid + t * (loop[static_cast<std::size_t>(i)] - centroid));
    }
  }
  for (int i = 0; i < n; ++i) d.triangles.push_back({0, ring_index(1, i), ring_index(1, i + 1)});
  for (int ring = 1; ring < rings; ++ring) {
    for (int i = 0; i < n; ++i) {
      const int a = ring_index(ring, i);
      const int b = ring_index(ring, i + 1);
      const int c = ring_index(ring + 1, i);
      const int e = ring_index(ring + 1, i + 1);
      d.triangles.push_back({a, e, b});
      d.triangles.push_back({a, c, e});
    }
  }
  for (int i = 0; i < n; ++i) d.boundary.push_back(ring_index(rings, i));
  return d;
}

inline double dist_point_segment(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 d = b - a;
  const double l2 = d.norm2();
  double t = l2 > 0.0 ? (p - a).dot(d) / l2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + t * d)).norm();
}

inline double dist_to_loop(const Vec3& p, const std::vector<Vec3>& loop) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i)
    best = std::min(best, dist_point_segment(p, loop[i], loop[(i + 1) % n]));
  return best;
}

}  // namespace detail

// Fill a closed loop with a triangulated disk: cone over the centroid,
// concentric refinement, then damped Laplacian smoothing of interior
// vertices. A smoothing step is accepted only if the total area decreases,
// so the reported area never exceeds the cone's. Boundary vertices are
// never moved.
inline FilledDisk fill_disk(const Polyline& gamma, const FillOptions& opts = {}) {
  if (!gamma.closed()) throw std::invalid_argument("fill_disk: loop must be a closed polyline");
  if (gamma.size() < 3) throw std::invalid_argument("fill_disk: loop needs at least 3 vertices");
  const double glen = path_length(gamma);
  if (!(glen < opts.delta_m))
    throw std::invalid_argument("fill_disk: loop length " + std::to_string(glen) +
                                " is not below the filling threshold delta_m = " +
                                std::to_string(opts.delta_m) +
                                " (small loops only)");

  const std::vector<Vec3>& loop = gamma.vertices();
  const int n = static_cast<int>(loop.size());
  const int rings = opts.rings > 0 ? opts.rings : std::clamp(n / 8, 2, 12);

  FilledDisk out;
  out.disk = detail::ring_cone(loop, rings);
  TriangulatedDisk& d = out.disk;
  out.checks.initial_area = d.area();

  // interior vertices and their one-ring neighbors
  const int n_verts = static_cast<int>(d.vertices.size());
  const int first_boundary = n_verts - n;
  std::vector<std::set<int>> nbrs(static_cast<std::size_t>(n_verts));
  for (const auto& t : d.triangles) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i != j) nbrs[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])].insert(t[static_cast<std::size_t>(j)]);
      }
    }
  }

  double area = out.checks.initial_area;
  double damping = 0.7;
  for (int iter = 0; iter < opts.smoothing_iters; ++iter) {
    std::vector<Vec3> moved = d.vertices;
    for (int i = 0; i < first_boundary; ++i) {
      Vec3 avg{};
      const auto& nb = nbrs[static_cast<std::size_t>(i)];
      if (nb.empty()) continue;
      for (int j : nb) avg = avg + d.vertices[static_cast<std::size_t>(j)];
      avg = avg / static_cast<double>(nb.size());
      moved[static_cast<std::size_t>(i)] =
          d.vertices[static_cast<std::size_t>(i)] +
          damping * (avg - d.vertices[static_cast<std::size_t>(i)]);
    }
    TriangulatedDisk trial = d;
    trial.vertices = std::move(moved);
    const double trial_area = trial.area();
    if (trial_area < area) {
      d.vertices = std::move(trial.vertices);
      const double gain = area - trial_area;
      area = trial_area;
      ++out.checks.accepted_smoothing_steps;
      if (gain < 1e-14 * (1.0 + area)) break;
    } else {
      damping *= 0.5;
      if (damping < 1e-3) break;
    }
  }

  out.checks.area = area;
  out.checks.boundary_len = d.boundary_length();
  double max_dist = 0.0;
  for (const Vec3& v : d.vertices) max_dist = std::max(max_dist, detail::dist_to_loop(v, loop));
  out.checks.max_dist_to_boundary = max_dist;
  out.checks.area_bound_ok = area <= opts.c_m * glen * glen;
  out.checks.neighborhood_ok = max_dist <= opts.c_m * glen;
  return out;
}

// Line integral of alpha over a closed loop, composite 2-point Gauss per
// segment. Linear in alpha; flips sign under orientation reversal.
inline double boundary_integral(const OneForm& alpha, const Polyline& gamma) {
  if (!gamma.closed()) throw std::invalid_argument("boundary_integral: loop must be closed");
  constexpr double kGaussOffset = 0.28867513459481287;  // 1 / (2 sqrt 3)
  double acc = 0.0;
  for (std::size_t i = 0; i < gamma.segment_count(); ++i) {
    const auto [a, b] = gamma.segment(i);
    const Vec3 d = b - a;
    for (const double t : {0.5 - kGaussOffset, 0.5 + kGaussOffset})
      acc += 0.5 * alpha.coeff(a + t * d).dot(d);
  }
  return acc;
}

inline double boundary_integral(const OneForm& alpha, const TriangulatedDisk& disk) {
  return boundary_integral(alpha, disk.boundary_loop());
}

// |int_boundary alpha| / (|bd D|^{1-theta} |D|^theta). Dividing by a
// certified norm bound of alpha yields the empirical candidate for the
// constant in the Hoelder Stokes inequality.
inline double stokes_ratio(const OneForm& alpha, const TriangulatedDisk& disk, double theta,
                           double sigma = 0.5) {
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in (0,1)");
  const double blen = disk.boundary_length();
  const double area = disk.area();
  if (!(blen > 0.0) || !(area > 0.0))
    throw std::invalid_argument("stokes_ratio: disk is degenerate (zero boundary or area)");
  if (!(blen < sigma))
    throw std::invalid_argument("stokes_ratio: boundary length " + std::to_string(blen) +
                                " is not below sigma = " + std::to_string(sigma));
  const double integral = std::abs(boundary_integral(alpha, disk));
  return integral / (std::pow(blen, 1.0 - theta) * std::pow(area, theta));
}

struct DiskFamily {
  enum class Kind { flat, wavy, mixed };
  Kind kind = Kind::mixed;
  double r_min = 0.02;
  double r_max = 0.075;
  int segments = 64;
  int rings = 6;
  double center_spread = 0.2;   // centers drawn from a cube of this half-width
  double waviness = 0.15;       // relative radial / vertical modulation
  double sigma = 0.5;           // admissibility cap on |bd D|
  int smoothing_iters = 20;

  void validate() const {
    if (!(r_min > 0.0 && r_max >= r_min)) throw std::invalid_argument("disk family radii invalid");
    if (segments < 8) throw std::invalid_argument("disk family segments must be >= 8");
  }
};

struct KEstimate {
  double k_hat = 0.0;       // sup of stokes_ratio / norm_upper over admissible disks
  long admissible = 0;
  long skipped = 0;
  double worst_boundary = 0.0;
  double worst_area = 0.0;
};

namespace detail {

inline TriangulatedDisk family_disk(const DiskFamily& fam, Rng& rng, long index) {
  const bool wavy = fam.kind == DiskFamily::Kind::wavy ||
                    (fam.kind == DiskFamily::Kind::mixed && index % 2 == 1);
  const double r = rng.uniform(fam.r_min, fam.r_max);
  Vec3 center{rng.uniform(-fam.center_spread, fam.center_spread),
              rng.uniform(-fam.center_spread, fam.center_spread),
              rng.uniform(-fam.center_spread, fam.center_spread)};
  const Vec3 n = rng.unit_vec3();
  Vec3 a = n.cross(std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0}).normalized();
  Vec3 b = n.cross(a);

  double wob_amp[2] = {0.0, 0.0}, wob_phase[2] = {0.0, 0.0};
  int wob_mode[2] = {2, 3};
  double z_amp = 0.0, z_phase = 0.0;
  int z_mode = 2;
  if (wavy) {
    for (int m = 0; m < 2; ++m) {
      wob_amp[m] = fam.waviness * rng.uniform(0.0, 1.0);
      wob_phase[m] = rng.uniform(0.0, 2.0 * std::numbers::pi);
      wob_mode[m] = 2 + static_cast<int>(rng.below(3));
    }
    z_amp = fam.waviness * rng.uniform(0.0, 1.0);
    z_phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    z_mode = 1 + static_cast<int>(rng.below(3));
  }

  std::vector<Vec3> loop;
  loop.reserve(static_cast<std::size_t>(fam.segments));
  for (int i = 0; i < fam.segments; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / fam.segments;
    double rr = r;
    for (int m = 0; m < 2; ++m) rr *= 1.0 + wob_amp[m] * std::cos(wob_mode[m] * phi + wob_phase[m]);
    Vec3 p = center + rr * std::cos(phi) * a + rr * std::sin(phi) * b;
    p = p + r * z_amp * std::cos(z_mode * phi + z_phase) * n;
    loop.push_back(p);
  }

  if (!wavy) return ring_cone(loop, fam.rings);
  FillOptions opts;
  opts.delta_m = std::numeric_limits<double>::infinity();  // admissibility is checked by sigma
  opts.rings = fam.rings;
  opts.smoothing_iters = fam.smoothing_iters;
  return fill_disk(Polyline::loop(std::move(loop)), opts).disk;
}

}  // namespace detail

// Empirical sup of the Hoelder Stokes ratio over a randomized disk family.
// Per-trial RNG streams are derived from (seed, trial index), so enlarging
// the trial budget only appends disks and the estimate is nondecreasing.
inline KEstimate estimate_K(const OneForm& alpha, double theta, const DiskFamily& family,
                            long trials, std::uint64_t seed) {
  family.validate();
  if (trials < 1) throw std::invalid_argument("estimate_K: trials must be >= 1");
  if (!(alpha.norm_upper > 0.0))
    throw std::invalid_argument("estimate_K: alpha carries no positive norm bound");

  KEstimate est;
  for (long t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
    const TriangulatedDisk disk = detail::family_disk(family, rng, t);
    const double blen = disk.boundary_length();
    const double area = disk.area();
    if (!(blen > 0.0 && blen < family.sigma && area > 0.0)) {
      ++est.skipped;
      continue;
    }
    ++est.admissible;
    const double ratio = stokes_ratio(alpha, disk, theta, family.sigma) / alpha.norm_upper;
    if (ratio > est.k_hat) {
      est.k_hat = ratio;
      est.worst_boundary = blen;
      est.worst_area = area;
    }
  }
  return est;
}

}  // namespace srlab

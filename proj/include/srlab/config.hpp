#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "srlab/vec3.hpp"

namespace srlab {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key-value record with dotted section names ("model.kind = perturbed").
// Keys keep their insertion order so echoes and hashes are stable.
class KvRecord {
 public:
  void set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries_) {
      if (k == key) {
        v = value;
        return;
      }
    }
    entries_.emplace_back(key, value);
  }

  bool has(const std::string& key) const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const auto& e) { return e.first == key; });
  }

  const std::string& get(const std::string& key) const {
    for (const auto& [k, v] : entries_)
      if (k == key) return v;
    throw ConfigError("missing config key: " + key);
  }

  std::string get_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? get(key) : fallback;
  }

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

inline KvRecord parse_kv_text(const std::string& text) {
  KvRecord rec;
  std::istringstream in(text);
  std::string line;
  long line_no = 0;
  const auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + " is not 'key = value': " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + " has an empty key");
    if (rec.has(key)) throw ConfigError("duplicate config key: " + key);
    rec.set(key, value);
  }
  return rec;
}

inline std::string to_kv_text(const KvRecord& rec) {
  std::string out;
  for (const auto& [k, v] : rec.entries()) {
    out += k;
    out += " = ";
    out += v;
    out += "\n";
  }
  return out;
}

inline KvRecord load_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_kv_text(buf.str());
}

namespace kv {

inline double as_double(const KvRecord& rec, const std::string& key) {
  const std::string& s = rec.get(key);
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + " must be a number, got '" + s + "'");
  }
  if (pos != s.size()) throw ConfigError(key + " must be a number, got '" + s + "'");
  return v;
}

inline double as_double_or(const KvRecord& rec, const std::string& key, double fallback) {
  return rec.has(key) ? as_double(rec, key) : fallback;
}

inline long as_long(const KvRecord& rec, const std::string& key) {
  const double v = as_double(rec, key);
  const long l = static_cast<long>(v);
  if (static_cast<double>(l) != v) throw ConfigError(key + " must be an integer");
  return l;
}

inline long as_long_or(const KvRecord& rec, const std::string& key, long fallback) {
  return rec.has(key) ? as_long(rec, key) : fallback;
}

inline std::uint64_t as_seed(const KvRecord& rec, const std::string& key) {
  const long v = as_long(rec, key);
  if (v < 0) throw ConfigError(key + " must be nonnegative");
  return static_cast<std::uint64_t>(v);
}

inline std::vector<double> as_list(const KvRecord& rec, const std::string& key) {
  const std::string& s = rec.get(key);
  std::vector<double> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError(key + " must be a comma-separated list of numbers, got '" + s + "'");
    }
  }
  if (out.empty()) throw ConfigError(key + " must be a nonempty list");
  return out;
}

inline Vec3 as_vec3(const KvRecord& rec, const std::string& key) {
  const auto list = as_list(rec, key);
  if (list.size() != 3) throw ConfigError(key + " must be three comma-separated numbers");
  return {list[0], list[1], list[2]};
}

inline Vec3 as_vec3_or(const KvRecord& rec, const std::string& key, const Vec3& fallback) {
  return rec.has(key) ? as_vec3(rec, key) : fallback;
}

inline void require_range(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

inline double as_theta(const KvRecord& rec, const std::string& key, double fallback) {
  const double theta = as_double_or(rec, key, fallback);
  require_range(theta > 0.0 && theta < 1.0, "theta must lie in (0,1)");
  return theta;
}

}  // namespace kv

enum class ExperimentKind { synth, norm, dist, probe, stokes, fill, scaling, limits };

inline std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::synth: return "synth";
    case ExperimentKind::norm: return "norm";
    case ExperimentKind::dist: return "dist";
    case ExperimentKind::probe: return "probe";
    case ExperimentKind::stokes: return "stokes";
    case ExperimentKind::fill: return "fill";
    case ExperimentKind::scaling: return "scaling";
    case ExperimentKind::limits: return "limits";
  }
  return "?";
}

inline ExperimentKind parse_experiment_kind(const std::string& s) {
  for (ExperimentKind k : {ExperimentKind::synth, ExperimentKind::norm, ExperimentKind::dist,
                           ExperimentKind::probe, ExperimentKind::stokes, ExperimentKind::fill,
                           ExperimentKind::scaling, ExperimentKind::limits}) {
    if (to_string(k) == s) return k;
  }
  throw ConfigError("experiment must be one of synth|norm|dist|probe|stokes|fill|scaling|limits, got '" +
                    s + "'");
}

// Allowed keys per experiment; anything else is reported, never ignored.
inline void check_known_keys(const KvRecord& rec, ExperimentKind kind) {
  static const std::vector<std::string> common{"experiment", "seed", "out", "format",
                                               "chart.period"};
  static const std::vector<std::string> model{"model.kind", "model.theta", "model.perturbation"};
  static const std::vector<std::string> field{"field.theta", "field.lambda", "field.depth",
                                              "field.amplitude"};
  static const std::vector<std::string> grid{"grid.resolution", "grid.pair_budget"};
  static const std::vector<std::string> optimizer{
      "optimizer.segments",     "optimizer.restarts",         "optimizer.step_budget",
      "optimizer.endpoint_tol_rel", "optimizer.endpoint_tol_abs", "optimizer.defect_tol",
      "optimizer.penalty0",     "optimizer.penalty_growth",   "optimizer.max_escalations"};

  std::vector<std::string> allowed = common;
  const auto add = [&](const std::vector<std::string>& more) {
    allowed.insert(allowed.end(), more.begin(), more.end());
  };
  switch (kind) {
    case ExperimentKind::synth:
      add(field);
      add(grid);
      break;
    case ExperimentKind::norm:
      add(field);
      add(grid);
      break;
    case ExperimentKind::dist:
      add(model);
      add(optimizer);
      add({"dist.p", "dist.q"});
      break;
    case ExperimentKind::probe:
      add(model);
      add({"probe.point", "probe.eps", "probe.samples", "probe.steps"});
      break;
    case ExperimentKind::stokes:
      add(model);
      add({"stokes.trials", "stokes.kind", "stokes.r_min", "stokes.r_max", "stokes.segments",
           "stokes.rings", "stokes.sigma", "stokes.normalized"});
      break;
    case ExperimentKind::fill:
      add({"fill.shape", "fill.radius", "fill.segments", "fill.delta_m", "fill.c_m", "fill.rings",
           "fill.smoothing_iters"});
      break;
    case ExperimentKind::scaling:
      add(model);
      add(optimizer);
      add({"scaling.base", "scaling.epsilons", "scaling.count", "constants.c_m",
           "constants.delta_m", "constants.sigma", "constants.eta", "constants.k",
           "constants.k_trials"});
      break;
    case ExperimentKind::limits:
      add({"limits.theta_min", "limits.theta_max", "limits.count", "limits.c_m", "limits.k",
           "limits.sin_phi0", "limits.alpha_norm"});
      break;
  }

  std::string unknown;
  for (const auto& [k, v] : rec.entries()) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      if (!unknown.empty()) unknown += ", ";
      unknown += k;
    }
  }
  if (!unknown.empty()) throw ConfigError("unknown config keys: " + unknown);
}

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::scaling;
  KvRecord raw;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::string format = "csv";

  static ExperimentConfig from_record(KvRecord rec) {
    ExperimentConfig cfg;
    cfg.kind = parse_experiment_kind(rec.get("experiment"));
    check_known_keys(rec, cfg.kind);
    if (!rec.has("seed")) throw ConfigError("missing config key: seed (wall-clock seeding is not allowed)");
    cfg.seed = kv::as_seed(rec, "seed");
    cfg.out_dir = rec.get_or("out", ".");
    cfg.format = rec.get_or("format", "csv");
    if (cfg.format != "csv" && cfg.format != "json")
      throw ConfigError("format must be csv or json, got '" + cfg.format + "'");
    cfg.raw = std::move(rec);
    return cfg;
  }

  static ExperimentConfig load(const std::string& path) { return from_record(load_kv_file(path)); }
};

}  // namespace srlab

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "srlab/config.hpp"
#include "srlab/constants.hpp"
#include "srlab/disks.hpp"
#include "srlab/paths.hpp"
#include "srlab/scaling.hpp"

namespace srlab {

// Shortest-exact-enough decimal form; the same bits always print the same
// bytes, which is what the determinism contract needs.
inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Simple CSV table: header plus string rows. Empty tables still print the
// header line.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_text() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out += ",";
      out += header[i];
    }
    out += "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ",";
        out += row[i];
      }
      out += "\n";
    }
    return out;
  }
};

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

inline std::string polyline_csv(const Polyline& p) {
  CsvTable t;
  t.header = {"x", "y", "z"};
  for (const Vec3& v : p.vertices()) t.rows.push_back({fmt_double(v.x), fmt_double(v.y), fmt_double(v.z)});
  if (p.closed() && !p.vertices().empty()) {
    const Vec3& v = p.vertices().front();
    t.rows.push_back({fmt_double(v.x), fmt_double(v.y), fmt_double(v.z)});
  }
  return t.to_text();
}

// OFF-style plain text mesh.
inline std::string disk_off(const TriangulatedDisk& d) {
  std::string out = "OFF\n";
  out += std::to_string(d.vertices.size()) + " " + std::to_string(d.triangles.size()) + " 0\n";
  for (const Vec3& v : d.vertices)
    out += fmt_double(v.x) + " " + fmt_double(v.y) + " " + fmt_double(v.z) + "\n";
  for (const auto& t : d.triangles)
    out += "3 " + std::to_string(t[0]) + " " + std::to_string(t[1]) + " " + std::to_string(t[2]) + "\n";
  return out;
}

inline CsvTable scaling_csv(const ScalingResult& res) {
  CsvTable t;
  t.header = {"epsilon", "d_r", "d_hat", "lower_bound", "violation"};
  for (const ScalingPoint& p : res.points) {
    t.rows.push_back({fmt_double(p.epsilon), fmt_double(p.d_r), fmt_double(p.d_hat),
                      fmt_double(p.lower_bound), p.violation ? "1" : "0"});
  }
  return t;
}

// Key-value record for constants bundles (External Interfaces reuse the same
// plain-text format as field recipes).
inline KvRecord bundle_kv(const ConstantsBundle& b) {
  KvRecord rec;
  rec.set("theta", fmt_double(b.theta));
  rec.set("c_m", fmt_double(b.c_m));
  rec.set("k", fmt_double(b.k));
  rec.set("sin_phi0", fmt_double(b.sin_phi0));
  rec.set("alpha_norm", fmt_double(b.alpha_norm));
  rec.set("delta_m", fmt_double(b.delta_m));
  rec.set("sigma", fmt_double(b.sigma));
  rec.set("eta", fmt_double(b.eta));
  return rec;
}

inline ConstantsBundle bundle_from_kv(const KvRecord& rec) {
  return make_bundle(kv::as_double(rec, "theta"), kv::as_double(rec, "c_m"),
                     kv::as_double(rec, "k"), kv::as_double(rec, "sin_phi0"),
                     kv::as_double(rec, "alpha_norm"), kv::as_double(rec, "delta_m"),
                     kv::as_double(rec, "sigma"), kv::as_double(rec, "eta"));
}

struct Assertion {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Everything one experiment run produces: the config echo and its content
// hash, named scalar outputs, named tables, pass/fail assertions, timing.
// Timing is excluded from the content hash so reruns hash identically.
struct ReportBundle {
  std::string experiment;
  KvRecord config_echo;
  std::vector<std::pair<std::string, std::string>> scalars;  // name -> formatted value
  std::vector<std::pair<std::string, CsvTable>> tables;
  std::vector<std::pair<std::string, std::string>> artifacts;  // filename -> text
  std::vector<Assertion> assertions;
  double timing_ms = 0.0;

  void add_scalar(const std::string& name, double value) {
    scalars.emplace_back(name, fmt_double(value));
  }
  void add_scalar_text(const std::string& name, const std::string& value) {
    scalars.emplace_back(name, value);
  }
  void add_assertion(const std::string& name, bool pass, const std::string& detail = "") {
    assertions.push_back({name, pass, detail});
  }

  bool all_pass() const {
    for (const auto& a : assertions)
      if (!a.pass) return false;
    return true;
  }

  std::string config_hash() const {
    // sorted canonical form, independent of key order in the file; the
    // output location and format steer file emission, not content
    auto entries = config_echo.entries();
    std::sort(entries.begin(), entries.end());
    std::string canon;
    for (const auto& [k, v] : entries) {
      if (k == "out" || k == "format") continue;
      canon += k + "=" + v + "\n";
    }
    return hex64(fnv1a64(canon));
  }

  // Hash of all reproducible content (no timing). Tables are hashed in name
  // order so the hash survives serialization formats that reorder them.
  std::string content_hash() const {
    std::string canon = experiment + "\n" + config_hash() + "\n";
    for (const auto& [k, v] : scalars) canon += k + "=" + v + "\n";
    std::vector<std::size_t> order(tables.size());
    for (std::size_t i = 0; i < tables.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return tables[a].first < tables[b].first; });
    for (std::size_t i : order) canon += tables[i].first + "\n" + tables[i].second.to_text();
    auto arts = artifacts;
    std::sort(arts.begin(), arts.end());
    for (const auto& [name, text] : arts) canon += name + "\n" + text;
    for (const auto& a : assertions)
      canon += a.name + "=" + (a.pass ? "pass" : "fail") + "\n";
    return hex64(fnv1a64(canon));
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["experiment"] = experiment;
    nlohmann::json cfg = nlohmann::json::array();
    for (const auto& [k, v] : config_echo.entries()) cfg.push_back({k, v});
    j["config"] = cfg;
    j["config_hash"] = config_hash();
    nlohmann::json sc = nlohmann::json::array();
    for (const auto& [k, v] : scalars) sc.push_back({k, v});
    j["scalars"] = sc;
    nlohmann::json tb = nlohmann::json::object();
    for (const auto& [name, table] : tables) tb[name] = table.to_text();
    j["tables"] = tb;
    nlohmann::json ar = nlohmann::json::object();
    for (const auto& [name, text] : artifacts) ar[name] = text;
    j["artifacts"] = ar;
    nlohmann::json as = nlohmann::json::array();
    for (const auto& a : assertions)
      as.push_back({{"name", a.name}, {"pass", a.pass}, {"detail", a.detail}});
    j["assertions"] = as;
    j["content_hash"] = content_hash();
    j["timing_ms"] = timing_ms;
    return j;
  }

  static ReportBundle from_json(const nlohmann::json& j) {
    ReportBundle b;
    b.experiment = j.at("experiment").get<std::string>();
    for (const auto& e : j.at("config"))
      b.config_echo.set(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    for (const auto& e : j.at("scalars"))
      b.scalars.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    for (const auto& [name, text] : j.at("tables").items()) {
      CsvTable t;
      std::istringstream in(text.get<std::string>());
      std::string line;
      bool first = true;
      while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (first) {
          t.header = cells;
          first = false;
        } else {
          t.rows.push_back(cells);
        }
      }
      b.tables.emplace_back(name, std::move(t));
    }
    for (const auto& [name, text] : j.at("artifacts").items())
      b.artifacts.emplace_back(name, text.get<std::string>());
    for (const auto& e : j.at("assertions"))
      b.assertions.push_back(
          {e.at("name").get<std::string>(), e.at("pass").get<bool>(), e.at("detail").get<std::string>()});
    b.timing_ms = j.value("timing_ms", 0.0);
    return b;
  }
};

// Write the declared format(s): tables as CSV files when format is csv, and
// always the JSON summary so every report embeds the constants it used.
inline std::vector<std::string> emit_report(const ReportBundle& bundle, const std::string& format,
                                            const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (!std::filesystem::is_directory(out_dir))
    throw std::runtime_error("output directory is not writable: " + out_dir);

  std::vector<std::string> written;
  if (format == "csv") {
    for (const auto& [name, table] : bundle.tables) {
      const std::string path = out_dir + "/" + name + ".csv";
      write_text_file(path, table.to_text());
      written.push_back(path);
    }
  }
  for (const auto& [name, text] : bundle.artifacts) {
    const std::string path = out_dir + "/" + name;
    write_text_file(path, text);
    written.push_back(path);
  }
  const std::string summary = out_dir + "/" + bundle.experiment + "_summary.json";
  write_text_file(summary, bundle.to_json().dump(2) + "\n");
  written.push_back(summary);
  return written;
}

}  // namespace srlab

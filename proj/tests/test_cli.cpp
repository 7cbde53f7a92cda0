// End-to-end checks of the command-line runner: exit codes, output schema,
// and the byte-level determinism contract.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const fs::path log = fs::temp_directory_path() / "srlab_cli_log.txt";
  const std::string cmd = std::string(SRLAB_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult res;
  res.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(log);
  std::ostringstream buf;
  buf << in.rdbuf();
  res.output = buf.str();
  return res;
}

std::string fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("srlab_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string write_config(const std::string& tag, const std::string& text) {
  const fs::path path = fs::temp_directory_path() / ("srlab_cfg_" + tag + ".txt");
  std::ofstream out(path);
  out << text;
  return path.string();
}

const std::string kConfigDir = SRLAB_CONFIG_DIR;

}  // namespace

TEST_CASE("scaling run succeeds and writes the documented csv") {
  const std::string out = fresh_dir("scaling");
  const RunResult res =
      run_cli("scaling --config " + kConfigDir + "/scaling_heisenberg.txt --out " + out);
  INFO(res.output);
  REQUIRE(res.exit_code == 0);

  const std::string csv = slurp(out + "/scaling.csv");
  REQUIRE(csv.rfind("epsilon,d_r,d_hat,lower_bound,violation\n", 0) == 0);
  // header + 4 epsilon rows
  REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 5);

  const nlohmann::json summary = nlohmann::json::parse(slurp(out + "/scaling_summary.json"));
  REQUIRE(summary.at("experiment") == "scaling");
  REQUIRE(summary.contains("content_hash"));
}

TEST_CASE("identical configs produce byte-identical csv outputs") {
  const std::string out1 = fresh_dir("det1");
  const std::string out2 = fresh_dir("det2");
  const std::string cfg = kConfigDir + "/probe_contrast.txt";
  REQUIRE(run_cli("probe --config " + cfg + " --out " + out1).exit_code == 0);
  REQUIRE(run_cli("probe --config " + cfg + " --out " + out2).exit_code == 0);
  REQUIRE(slurp(out1 + "/probe.csv") == slurp(out2 + "/probe.csv"));
  REQUIRE(slurp(out1 + "/probe_cloud.csv") == slurp(out2 + "/probe_cloud.csv"));

  const auto hash = [](const std::string& dir) {
    return nlohmann::json::parse(slurp(dir + "/probe_summary.json")).at("content_hash");
  };
  REQUIRE(hash(out1) == hash(out2));
}

TEST_CASE("theta outside (0,1) exits with the config error code") {
  const std::string bad = write_config("theta", R"(experiment = dist
seed = 1
model.theta = 1.5
dist.p = 0,0,0
dist.q = 0,0,0.1
)");
  const RunResult res = run_cli("dist --config " + bad + " --out " + fresh_dir("badtheta"));
  REQUIRE(res.exit_code == 2);
  REQUIRE(res.output.find("theta must lie in (0,1)") != std::string::npos);
}

TEST_CASE("unknown keys exit with the config error code and are listed") {
  const std::string bad = write_config("keys", R"(experiment = dist
seed = 1
dist.p = 0,0,0
dist.q = 0,0,0.1
optimiser.restarts = 4
)");
  const RunResult res = run_cli("dist --config " + bad + " --out " + fresh_dir("badkeys"));
  REQUIRE(res.exit_code == 2);
  REQUIRE(res.output.find("unknown config keys") != std::string::npos);
  REQUIRE(res.output.find("optimiser.restarts") != std::string::npos);
}

TEST_CASE("missing config file is a config error") {
  const RunResult res = run_cli("dist --config /nonexistent/file.txt");
  REQUIRE(res.exit_code == 2);
}

TEST_CASE("subcommand and config experiment must agree") {
  const RunResult res =
      run_cli("probe --config " + kConfigDir + "/dist_vertical.txt --out " + fresh_dir("mismatch"));
  REQUIRE(res.exit_code == 2);
  REQUIRE(res.output.find("does not match") != std::string::npos);
}

TEST_CASE("dist run reports the estimate and writes the best path") {
  const std::string out = fresh_dir("dist");
  const RunResult res =
      run_cli("dist --config " + kConfigDir + "/dist_vertical.txt --out " + out);
  INFO(res.output);
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.output.find("value = ") != std::string::npos);
  const std::string path_csv = slurp(out + "/dist_path.csv");
  REQUIRE(path_csv.rfind("x,y,z\n", 0) == 0);
}

TEST_CASE("fill run reports the area checks; oversized loops are config errors") {
  const std::string out = fresh_dir("fill");
  const RunResult ok = run_cli("fill --config " + kConfigDir + "/fill_circle.txt --out " + out);
  INFO(ok.output);
  REQUIRE(ok.exit_code == 0);
  REQUIRE(std::filesystem::exists(out + "/fill_disk.off"));

  const std::string bad = write_config("bigloop", R"(experiment = fill
seed = 1
fill.shape = circle
fill.radius = 1.0
fill.segments = 64
)");
  const RunResult res = run_cli("fill --config " + bad + " --out " + fresh_dir("fillbad"));
  REQUIRE(res.exit_code == 2);
  REQUIRE(res.output.find("delta_m") != std::string::npos);
}

TEST_CASE("seed override changes the config echo") {
  const std::string out = fresh_dir("seed");
  const RunResult res = run_cli("probe --config " + kConfigDir +
                                "/probe_contrast.txt --seed 99 --out " + out);
  REQUIRE(res.exit_code == 0);
  const nlohmann::json summary = nlohmann::json::parse(slurp(out + "/probe_summary.json"));
  bool saw_seed = false;
  for (const auto& e : summary.at("config")) {
    if (e.at(0) == "seed") {
      REQUIRE(e.at(1) == "99");
      saw_seed = true;
    }
  }
  REQUIRE(saw_seed);
}

TEST_CASE("json format skips csv tables but keeps the summary") {
  const std::string out = fresh_dir("jsonfmt");
  const RunResult res = run_cli("probe --config " + kConfigDir +
                                "/probe_contrast.txt --format json --out " + out);
  REQUIRE(res.exit_code == 0);
  REQUIRE_FALSE(std::filesystem::exists(out + "/probe.csv"));
  REQUIRE(std::filesystem::exists(out + "/probe_summary.json"));
}

// Experiment runner for the subriemannian distance laboratory.
//
// Subcommands mirror the experiment kinds (synth, norm, dist, probe, stokes,
// fill, scaling, limits); `verify` runs the acceptance suite. Exit codes:
// 0 pass, 1 assertion failure or unconverged estimate, 2 config error.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "srlab/acceptance.hpp"
#include "srlab/srlab.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::string format;
  long long seed = -1;
};

int run_experiment(const std::string& kind_name, const CommonArgs& args) {
  try {
    srlab::KvRecord rec = srlab::load_kv_file(args.config_path);
    if (!rec.has("experiment")) rec.set("experiment", kind_name);
    if (rec.get("experiment") != kind_name)
      throw srlab::ConfigError("config experiment '" + rec.get("experiment") +
                               "' does not match subcommand '" + kind_name + "'");
    if (args.seed >= 0) rec.set("seed", std::to_string(args.seed));
    if (!args.out_dir.empty()) rec.set("out", args.out_dir);
    if (!args.format.empty()) rec.set("format", args.format);

    const srlab::ExperimentConfig cfg = srlab::ExperimentConfig::from_record(std::move(rec));
    const srlab::ReportBundle bundle = srlab::run_config(cfg);
    const auto written = srlab::emit_report(bundle, cfg.format, cfg.out_dir);

    std::cout << "experiment " << bundle.experiment << " (config " << bundle.config_hash() << ")\n";
    for (const auto& [name, value] : bundle.scalars) std::cout << "  " << name << " = " << value << "\n";
    for (const auto& a : bundle.assertions)
      std::cout << "  [" << (a.pass ? "pass" : "FAIL") << "] " << a.name
                << (a.detail.empty() ? "" : " (" + a.detail + ")") << "\n";
    for (const auto& f : written) std::cout << "  wrote " << f << "\n";
    return bundle.all_pass() ? 0 : 1;
  } catch (const srlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for subriemannian distances over Hoelder-continuous "
               "horizontal distributions"};
  app.require_subcommand(1);

  CommonArgs args;
  bool verify_requested = false;

  const auto add_common = [&args](CLI::App* cmd) {
    cmd->add_option("--config", args.config_path, "experiment config file (key = value lines)")
        ->required();
    cmd->add_option("--seed", args.seed, "override the config seed");
    cmd->add_option("--out", args.out_dir, "override the output directory");
    cmd->add_option("--format", args.format, "override the output format (csv|json)");
  };

  std::string selected;
  for (const std::string kind : {"synth", "norm", "dist", "probe", "stokes", "fill", "scaling",
                                 "limits"}) {
    CLI::App* cmd = app.add_subcommand(kind, "run the " + kind + " experiment");
    add_common(cmd);
    cmd->callback([&selected, kind] { selected = kind; });
  }
  CLI::App* verify = app.add_subcommand("verify", "run the full acceptance suite");
  verify->callback([&verify_requested] { verify_requested = true; });

  CLI11_PARSE(app, argc, argv);

  if (verify_requested) return srlab::acceptance::run_all(std::cout) ? 0 : 1;
  return run_experiment(selected, args);
}

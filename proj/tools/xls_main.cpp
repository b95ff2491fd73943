// Experiment runner: declarative condition/convergence/diagnostics studies
// and sampler verification, with CSV output.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "xls/experiment.hpp"

namespace {

int write_result(const xls::ExperimentResult& result, const std::string& path) {
  if (path.empty()) {
    result.write_csv(std::cout);
  } else {
    std::ofstream out(path);
    if (!out) {
      std::cerr << "error: cannot open output path " << path << "\n";
      return 2;
    }
    result.write_csv(out);
  }
  return result.any_flagged() ? 3 : 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Christoffel-weighted least-squares experiment runner"};
  app.require_subcommand(1);

  // --- run ---------------------------------------------------------------
  auto* run_cmd = app.add_subcommand("run", "Run an experiment described by a config file");
  std::string config_path;
  run_cmd->add_option("config", config_path, "Path to key=value experiment config")->required();
  std::optional<std::string> out_override;
  run_cmd->add_option("--out", out_override, "Output CSV path (default: config 'out' or stdout)")
      ->envname("XLS_OUT");
  std::optional<std::uint64_t> seed_override;
  run_cmd->add_option("--seed", seed_override, "Base seed override")->envname("XLS_SEED");
  std::optional<int> threads_override;
  run_cmd->add_option("--threads", threads_override, "Worker threads (0 = all cores)")
      ->envname("XLS_THREADS");
  std::optional<double> truncate_override;
  run_cmd->add_option("--truncate", truncate_override,
                      "Apply T_L truncation to predictions at this level (0 = off)")
      ->envname("XLS_TRUNCATE");

  // --- check-samplers ----------------------------------------------------
  auto* check_cmd = app.add_subcommand("check-samplers", "Distributional checks for every sampling rule");
  int sampler_count = 100000;
  check_cmd->add_option("--s", sampler_count, "Draws per check")->envname("XLS_S");

  // --- list-presets --------------------------------------------------------
  auto* presets_cmd = app.add_subcommand("list-presets", "List built-in sample-count presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "error: cannot open config " << config_path << "\n";
        return 2;
      }
      xls::ExperimentSpec spec;
      try {
        spec = xls::ExperimentSpec::parse_config(in);
      } catch (const std::exception& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
      }
      if (seed_override) spec.base_seed = *seed_override;
      if (threads_override) spec.threads = *threads_override;
      if (truncate_override) spec.truncate_limit = *truncate_override;
      if (out_override) spec.output_path = *out_override;

      const xls::ExperimentResult result = xls::run_experiment(spec);
      return write_result(result, spec.output_path);
    }

    if (check_cmd->parsed()) {
      xls::ExperimentSpec spec;
      spec.kind = xls::ExperimentKind::SamplerCheck;
      spec.sampler_count = sampler_count;
      const xls::ExperimentResult result = xls::run_experiment(spec);
      result.write_csv(std::cout);
      for (const auto& row : result.sampler_rows) {
        if (!row.pass) {
          std::cerr << "sampler check failed: " << row.rule << " d=" << row.dim << " "
                    << row.statistic << "\n";
          return 1;
        }
      }
      return 0;
    }

    if (presets_cmd->parsed()) {
      for (const auto& [name, rule] : xls::sample_count_presets())
        std::cout << name << " -> " << rule.str() << "\n";
      return 0;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}

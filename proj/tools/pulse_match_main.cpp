#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pulsematch/harness.hpp"

using namespace pulsematch;

namespace {

int emit(const ExperimentResult& result) {
  if (result.config.output_path.empty()) {
    std::cout << to_csv(result.records);
    std::cout << summary_csv(to_string(result.config.algorithm), result.summary);
  } else {
    write_output(result, result.config.output_path, result.config.format);
    std::cout << "wrote " << result.records.size() << " records to "
              << result.config.output_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pulse-match: synchronous link-activation matching on K_{n,n}"};
  app.require_subcommand(1);

  std::string algorithm;
  std::string n_text;
  std::string wiring = "default";
  std::string format = "csv";
  std::string out_path;
  int trials = 1;
  uint64_t seed = 1;
  int max_rounds = 0;
  int threads = 1;

  CLI::App* run_cmd = app.add_subcommand("run", "Run an experiment grid");
  run_cmd->add_option("--algorithm", algorithm,
                      "kt0-random, kt0-baseline, kt1-fast, kt1-recursive")
      ->required();
  run_cmd->add_option("--n", n_text, "n values: 64 | 2^10 | 1-64, comma separated")
      ->required();
  run_cmd->add_option("--trials", trials, "trials per n");
  run_cmd->add_option("--seed", seed, "master seed");
  run_cmd->add_option("--wiring", wiring, "default, random, identity, adaptive");
  run_cmd->add_option("--format", format, "csv or json");
  run_cmd->add_option("--out", out_path, "output path (stdout if omitted)");
  run_cmd->add_option("--max-rounds", max_rounds, "override the round cap");
  run_cmd->add_option("--threads", threads, "worker threads");

  bool full = false;
  std::string fig_out = "figure.csv";
  CLI::App* fig_cmd =
      app.add_subcommand("figure", "Mean phases of kt0-random against log2 n");
  fig_cmd->add_flag("--full", full, "n up to 2^20 at 1000 trials");
  fig_cmd->add_option("--out", fig_out, "output path");
  fig_cmd->add_option("--format", format, "csv or json");
  fig_cmd->add_option("--seed", seed, "master seed");
  fig_cmd->add_option("--threads", threads, "worker threads");

  std::vector<std::string> replay;
  CLI::App* ver_cmd = app.add_subcommand("verify", "Replay one trial by seed");
  ver_cmd->add_option("--replay", replay, "n and derived seed")
      ->expected(2)
      ->required();
  ver_cmd->add_option("--algorithm", algorithm, "algorithm name")->required();
  ver_cmd->add_option("--wiring", wiring, "wiring override");
  ver_cmd->add_option("--max-rounds", max_rounds, "override the round cap");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      ExperimentConfig config;
      config.algorithm = parse_algorithm(algorithm);
      config.n_values = parse_n_list(n_text);
      config.trials = trials;
      config.seed = seed;
      config.wiring = parse_wiring(wiring);
      config.output_path = out_path;
      config.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
      config.max_rounds = max_rounds;
      config.threads = threads;
      return emit(run_experiment(config));
    }
    if (fig_cmd->parsed()) {
      ExperimentConfig config = figure_preset(full);
      config.seed = seed;
      config.output_path = fig_out;
      config.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
      config.threads = threads;
      return emit(run_experiment(config));
    }
    long long n = parse_n_list(replay[0]).at(0);
    uint64_t derived = std::stoull(replay[1]);
    TrialOutcome out = replay_trial(parse_algorithm(algorithm), n, derived,
                                    parse_wiring(wiring), max_rounds);
    std::vector<TrialRecord> records{out.record};
    std::cout << to_csv(records);
    if (!out.record.valid) {
      std::cerr << "matching invalid: " << out.record.algorithm << " n=" << n
                << " seed=" << derived << "\n";
      return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

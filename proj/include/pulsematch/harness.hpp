#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pulsematch/engine.hpp"

namespace pulsematch {

enum class AlgorithmKind { Kt0Random, Kt0Baseline, Kt1Fast, Kt1Recursive };
enum class WiringKind { Default, Random, Identity, Adaptive };
enum class OutputFormat { Csv, Json };

const char* to_string(AlgorithmKind kind);
const char* to_string(WiringKind kind);
AlgorithmKind parse_algorithm(std::string_view name);
WiringKind parse_wiring(std::string_view name);
std::vector<std::string> algorithm_names();

struct ExperimentConfig {
  AlgorithmKind algorithm = AlgorithmKind::Kt0Random;
  std::vector<long long> n_values;
  int trials = 1;
  uint64_t seed = 1;
  WiringKind wiring = WiringKind::Default;
  std::string output_path;  // empty writes to stdout (csv only)
  OutputFormat format = OutputFormat::Csv;
  int max_rounds = 0;  // 0 keeps the engine default
  int threads = 1;
};

struct TrialRecord {
  std::string algorithm;
  std::string model;  // KT0 or KT1
  long long n = 0;
  int trial = 0;
  uint64_t seed = 0;
  int rounds = 0;
  long long phases = 0;
  long long pulses = 0;
  bool valid = false;
  std::string termination;
};

struct AggregateRow {
  long long n = 0;
  int trials = 0;
  double phases_mean = 0, phases_stddev = 0;
  long long phases_min = 0, phases_max = 0;
  double rounds_mean = 0, rounds_stddev = 0;
  long long rounds_min = 0, rounds_max = 0;
  double pulses_mean = 0, pulses_stddev = 0;
  long long pulses_min = 0, pulses_max = 0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialRecord> records;
  std::vector<AggregateRow> summary;
};

// Pure function of (master seed, n, trial index); replaying one trial in
// isolation reproduces it exactly.
uint64_t trial_seed(uint64_t master, long long n, int trial);

struct TrialOutcome {
  TrialRecord record;
  RunResult run;
};

// Runs one trial with the algorithm's default network setup. The random
// algorithm uses randomly permuted ports and canonical identifiers; the
// baseline probe uses adaptive wiring and shuffled identifiers; the
// deterministic algorithms use shuffled identifiers (ports are
// meaningless when the opposite identifier list is known). A wiring
// override replaces the port setup; the random algorithm is parity
// wrapped automatically when it meets the adaptive wiring.
TrialOutcome run_trial(AlgorithmKind kind, long long n, int trial,
                       uint64_t master_seed,
                       WiringKind wiring = WiringKind::Default,
                       int max_rounds = 0);

// Reruns a single trial from its already-derived seed, as printed in a
// record or a validation error.
TrialOutcome replay_trial(AlgorithmKind kind, long long n, uint64_t seed,
                          WiringKind wiring = WiringKind::Default,
                          int max_rounds = 0);

// Runs the whole grid, validates every matching, and aggregates per n.
// Any invalid matching throws with the offending (n, seed) for replay.
ExperimentResult run_experiment(const ExperimentConfig& config);

std::string to_csv(std::span<const TrialRecord> records);
std::string summary_csv(std::string_view algorithm,
                        std::span<const AggregateRow> rows);
std::string to_json(const ExperimentResult& result);
std::vector<TrialRecord> parse_csv(const std::string& text);

// csv: records at `path` plus aggregates at `path`.summary;
// json: one document at `path` with records and summary arrays.
void write_output(const ExperimentResult& result, const std::string& path,
                  OutputFormat format);

// The simulation-study preset: mean phases of the randomized algorithm
// against log2 n. Desk scale runs n = 2^1..2^14 at 200 trials; full scale
// runs n = 2^1..2^20 at 1000 trials.
ExperimentConfig figure_preset(bool full = false);

// Comma-separated entries; each entry is an integer, 2^k, or an
// inclusive range a-b of either form.
std::vector<long long> parse_n_list(const std::string& text);

}  // namespace pulsematch

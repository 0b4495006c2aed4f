#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pulsematch/harness.hpp"

using namespace pulsematch;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("algorithm and wiring names round-trip") {
  for (const std::string& name : algorithm_names()) {
    CHECK(to_string(parse_algorithm(name)) == name);
  }
  CHECK(parse_algorithm("kt0-random") == AlgorithmKind::Kt0Random);
  CHECK(parse_algorithm("kt0-baseline") == AlgorithmKind::Kt0Baseline);
  CHECK(parse_algorithm("kt1-fast") == AlgorithmKind::Kt1Fast);
  CHECK(parse_algorithm("kt1-recursive") == AlgorithmKind::Kt1Recursive);
  CHECK_THROWS_AS(parse_algorithm("kt9"), std::invalid_argument);
  CHECK(parse_wiring("adaptive") == WiringKind::Adaptive);
  CHECK(parse_wiring("default") == WiringKind::Default);
  CHECK_THROWS_AS(parse_wiring("mesh"), std::invalid_argument);
}

TEST_CASE("trial seeds derive purely from master, n, and index") {
  CHECK(trial_seed(1, 8, 0) == trial_seed(1, 8, 0));
  std::set<uint64_t> seen;
  for (uint64_t master : {1u, 2u}) {
    for (long long n : {4LL, 8LL}) {
      for (int trial = 0; trial < 4; ++trial) {
        seen.insert(trial_seed(master, n, trial));
      }
    }
  }
  CHECK(seen.size() == 16);
}

TEST_CASE("n-list parsing accepts integers, powers, and ranges") {
  CHECK(parse_n_list("1,2^3,5-8") ==
        std::vector<long long>{1, 8, 5, 6, 7, 8});
  CHECK(parse_n_list("2^4-2^6") ==
        std::vector<long long>{16, 17, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27,
                               28, 29, 30, 31, 32, 33, 34, 35, 36, 37, 38, 39,
                               40, 41, 42, 43, 44, 45, 46, 47, 48, 49, 50, 51,
                               52, 53, 54, 55, 56, 57, 58, 59, 60, 61, 62, 63,
                               64});
  CHECK(parse_n_list("7") == std::vector<long long>{7});
  CHECK(parse_n_list("3,") == std::vector<long long>{3});  // stray comma
  CHECK_THROWS_AS(parse_n_list(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_n_list("0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_n_list("-4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_n_list("8-4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_n_list("x"), std::invalid_argument);
}

TEST_CASE("run_trial applies the per-algorithm defaults") {
  TrialOutcome fast = run_trial(AlgorithmKind::Kt1Fast, 16, 0, 99);
  CHECK(fast.record.model == "KT1");
  CHECK(fast.record.algorithm == "kt1-fast");
  CHECK(fast.record.rounds == 12);
  CHECK(fast.record.pulses == 88);
  CHECK(fast.record.valid);
  CHECK(fast.record.termination == "AllMatched");

  TrialOutcome base = run_trial(AlgorithmKind::Kt0Baseline, 16, 0, 99);
  CHECK(base.record.model == "KT0");
  CHECK(base.record.rounds == 33);
  CHECK(base.record.pulses == 16LL * 17 / 2 + 16);

  TrialOutcome rnd = run_trial(AlgorithmKind::Kt0Random, 16, 0, 99);
  CHECK(rnd.record.model == "KT0");
  CHECK(rnd.record.valid);

  // the randomized algorithm is parity wrapped under the adversary
  TrialOutcome wrapped =
      run_trial(AlgorithmKind::Kt0Random, 16, 0, 99, WiringKind::Adaptive);
  CHECK(wrapped.record.valid);
  CHECK(wrapped.record.rounds > rnd.record.rounds);

  CHECK_THROWS_AS(
      run_trial(AlgorithmKind::Kt1Fast, 8, 0, 1, WiringKind::Adaptive),
      std::invalid_argument);
}

TEST_CASE("replaying a derived seed reproduces the trial") {
  TrialOutcome direct = run_trial(AlgorithmKind::Kt0Random, 24, 3, 7);
  TrialOutcome replay =
      replay_trial(AlgorithmKind::Kt0Random, 24, direct.record.seed);
  CHECK(replay.record.seed == direct.record.seed);
  CHECK(replay.record.rounds == direct.record.rounds);
  CHECK(replay.record.pulses == direct.record.pulses);
  CHECK(replay.run.matching.edges == direct.run.matching.edges);
  CHECK(replay.record.trial == 0);
  CHECK(direct.record.trial == 3);
}

TEST_CASE("experiments keep config order and aggregate per size") {
  ExperimentConfig config;
  config.algorithm = AlgorithmKind::Kt1Fast;
  config.n_values = {16, 4, 8};
  config.trials = 3;
  config.seed = 5;
  ExperimentResult result = run_experiment(config);

  REQUIRE(result.records.size() == 9);
  for (int i = 0; i < 9; ++i) {
    CHECK(result.records[i].n == config.n_values[i / 3]);
    CHECK(result.records[i].trial == i % 3);
    CHECK(result.records[i].valid);
  }
  REQUIRE(result.summary.size() == 3);
  CHECK(result.summary[0].n == 16);
  CHECK(result.summary[1].n == 4);
  CHECK(result.summary[2].n == 8);
  // deterministic algorithm: zero spread, mean equals the frozen count
  CHECK(result.summary[0].rounds_mean == doctest::Approx(12.0));
  CHECK(result.summary[0].rounds_stddev == doctest::Approx(0.0));
  CHECK(result.summary[0].pulses_min == result.summary[0].pulses_max);
  CHECK(result.summary[0].trials == 3);
}

TEST_CASE("summary statistics match a direct recomputation") {
  ExperimentConfig config;
  config.algorithm = AlgorithmKind::Kt0Random;
  config.n_values = {32};
  config.trials = 25;
  config.seed = 11;
  ExperimentResult result = run_experiment(config);
  REQUIRE(result.summary.size() == 1);
  const AggregateRow& row = result.summary[0];

  double mean = 0;
  long long lo = result.records[0].pulses, hi = lo;
  for (const TrialRecord& r : result.records) {
    mean += static_cast<double>(r.pulses);
    lo = std::min(lo, r.pulses);
    hi = std::max(hi, r.pulses);
  }
  mean /= 25;
  double var = 0;
  for (const TrialRecord& r : result.records) {
    var += (r.pulses - mean) * (r.pulses - mean);
  }
  var /= 24;  // sample variance
  CHECK(row.pulses_mean == doctest::Approx(mean).epsilon(1e-9));
  CHECK(row.pulses_stddev == doctest::Approx(std::sqrt(var)).epsilon(1e-9));
  CHECK(row.pulses_min == lo);
  CHECK(row.pulses_max == hi);
}

TEST_CASE("csv output is stable, parseable, and replayable") {
  ExperimentConfig config;
  config.algorithm = AlgorithmKind::Kt1Recursive;
  config.n_values = {5, 16};
  config.trials = 2;
  config.seed = 3;
  ExperimentResult result = run_experiment(config);

  std::string csv = to_csv(result.records);
  CHECK(csv.substr(0, csv.find('\n')) ==
        "algorithm,model,n,trial,seed,rounds,phases,pulses,valid,termination");
  std::vector<TrialRecord> parsed = parse_csv(csv);
  REQUIRE(parsed.size() == result.records.size());
  for (size_t i = 0; i < parsed.size(); ++i) {
    CHECK(parsed[i].algorithm == result.records[i].algorithm);
    CHECK(parsed[i].n == result.records[i].n);
    CHECK(parsed[i].seed == result.records[i].seed);
    CHECK(parsed[i].pulses == result.records[i].pulses);
    CHECK(parsed[i].valid == result.records[i].valid);
  }
  CHECK(to_csv(parsed) == csv);

  // identical configs give byte-identical output
  ExperimentResult again = run_experiment(config);
  CHECK(to_csv(again.records) == csv);
  CHECK(summary_csv(to_string(config.algorithm), again.summary) ==
        summary_csv(to_string(config.algorithm), result.summary));

  CHECK_THROWS_AS(parse_csv("not,a,header\n1,2,3\n"), std::invalid_argument);
}

TEST_CASE("json output carries records and summary") {
  ExperimentConfig config;
  config.algorithm = AlgorithmKind::Kt1Fast;
  config.n_values = {4};
  config.trials = 2;
  config.format = OutputFormat::Json;
  ExperimentResult result = run_experiment(config);
  std::string text = to_json(result);
  CHECK(text.find("\"records\"") != std::string::npos);
  CHECK(text.find("\"summary\"") != std::string::npos);
  CHECK(text.find("\"kt1-fast\"") != std::string::npos);
  CHECK(text.find("\"rounds\": 5") != std::string::npos);
}

TEST_CASE("invalid runs abort the experiment with a replay hint") {
  ExperimentConfig config;
  config.algorithm = AlgorithmKind::Kt0Random;
  config.n_values = {32};
  config.trials = 1;
  config.seed = 2;
  config.max_rounds = 2;  // far too few rounds to finish
  try {
    run_experiment(config);
    FAIL("expected the experiment to reject the unfinished run");
  } catch (const std::runtime_error& e) {
    std::string what = e.what();
    CHECK(what.find("pulse-match verify --replay 32") != std::string::npos);
    CHECK(what.find("--algorithm kt0-random") != std::string::npos);
  }
}

TEST_CASE("file outputs land where requested") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "pulsematch-test-out";
  fs::create_directories(dir);

  ExperimentConfig config;
  config.algorithm = AlgorithmKind::Kt1Fast;
  config.n_values = {8};
  config.trials = 2;
  ExperimentResult result = run_experiment(config);

  fs::path csv_path = dir / "out.csv";
  write_output(result, csv_path.string(), OutputFormat::Csv);
  CHECK(slurp(csv_path) == to_csv(result.records));
  CHECK(slurp(csv_path.string() + ".summary") ==
        summary_csv("kt1-fast", result.summary));

  fs::path json_path = dir / "out.json";
  write_output(result, json_path.string(), OutputFormat::Json);
  CHECK(slurp(json_path) == to_json(result));

  fs::remove_all(dir);
}

TEST_CASE("the figure preset pins the study grid") {
  ExperimentConfig desk = figure_preset(false);
  CHECK(desk.algorithm == AlgorithmKind::Kt0Random);
  REQUIRE(desk.n_values.size() == 14);
  CHECK(desk.n_values.front() == 2);
  CHECK(desk.n_values.back() == 1 << 14);
  CHECK(desk.trials == 200);
  CHECK(desk.seed == 20240817);
  CHECK(desk.output_path == "figure.csv");

  ExperimentConfig full = figure_preset(true);
  REQUIRE(full.n_values.size() == 20);
  CHECK(full.n_values.back() == 1 << 20);
  CHECK(full.trials == 1000);
}

TEST_CASE("threaded and sequential experiments agree") {
  ExperimentConfig config;
  config.algorithm = AlgorithmKind::Kt0Random;
  config.n_values = {8, 16};
  config.trials = 8;
  config.seed = 17;
  ExperimentResult seq = run_experiment(config);
  config.threads = 4;
  ExperimentResult par = run_experiment(config);
  CHECK(to_csv(par.records) == to_csv(seq.records));
}

#include "pulsematch/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "pulsematch/adversary.hpp"
#include "pulsematch/kt0_random.hpp"
#include "pulsematch/kt1_interval.hpp"
#include "pulsematch/kt1_recursive.hpp"
#include "pulsematch/rng.hpp"

namespace pulsematch {

namespace {

constexpr uint64_t kTrialTag = 0x747269616c736564ull;
constexpr uint64_t kFigureSeed = 20240817ull;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Accumulator {
  long long count = 0;
  double mean = 0, m2 = 0;
  long long min = 0, max = 0;
  void add(long long x) {
    if (count == 0) {
      min = max = x;
    } else {
      min = std::min(min, x);
      max = std::max(max, x);
    }
    ++count;
    double d = static_cast<double>(x) - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (static_cast<double>(x) - mean);
  }
  double stddev() const {
    return count > 1 ? std::sqrt(m2 / static_cast<double>(count - 1)) : 0.0;
  }
};

long long parse_n_token(const std::string& tok) {
  size_t caret = tok.find('^');
  long long value = 0;
  if (caret != std::string::npos) {
    long long base = std::stoll(tok.substr(0, caret));
    long long exp = std::stoll(tok.substr(caret + 1));
    if (base != 2 || exp < 0 || exp > 62) {
      throw std::invalid_argument("only 2^k with 0 <= k <= 62 is supported");
    }
    value = 1LL << exp;
  } else {
    value = std::stoll(tok);
  }
  if (value < 1) throw std::invalid_argument("n must be positive");
  return value;
}

}  // namespace

const char* to_string(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::Kt0Random: return "kt0-random";
    case AlgorithmKind::Kt0Baseline: return "kt0-baseline";
    case AlgorithmKind::Kt1Fast: return "kt1-fast";
    case AlgorithmKind::Kt1Recursive: return "kt1-recursive";
  }
  return "?";
}

const char* to_string(WiringKind kind) {
  switch (kind) {
    case WiringKind::Default: return "default";
    case WiringKind::Random: return "random";
    case WiringKind::Identity: return "identity";
    case WiringKind::Adaptive: return "adaptive";
  }
  return "?";
}

std::vector<std::string> algorithm_names() {
  return {"kt0-random", "kt0-baseline", "kt1-fast", "kt1-recursive"};
}

AlgorithmKind parse_algorithm(std::string_view name) {
  if (name == "kt0-random") return AlgorithmKind::Kt0Random;
  if (name == "kt0-baseline") return AlgorithmKind::Kt0Baseline;
  if (name == "kt1-fast") return AlgorithmKind::Kt1Fast;
  if (name == "kt1-recursive") return AlgorithmKind::Kt1Recursive;
  throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

WiringKind parse_wiring(std::string_view name) {
  if (name == "default") return WiringKind::Default;
  if (name == "random") return WiringKind::Random;
  if (name == "identity") return WiringKind::Identity;
  if (name == "adaptive") return WiringKind::Adaptive;
  throw std::invalid_argument("unknown wiring: " + std::string(name));
}

uint64_t trial_seed(uint64_t master, long long n, int trial) {
  return derive_seed(master, static_cast<uint64_t>(n),
                     static_cast<uint64_t>(trial), kTrialTag);
}

TrialOutcome run_trial(AlgorithmKind kind, long long n, int trial,
                       uint64_t master_seed, WiringKind wiring,
                       int max_rounds) {
  TrialOutcome out =
      replay_trial(kind, n, trial_seed(master_seed, n, trial), wiring, max_rounds);
  out.record.trial = trial;
  return out;
}

TrialOutcome replay_trial(AlgorithmKind kind, long long n, uint64_t seed,
                          WiringKind wiring, int max_rounds) {
  NetworkSpec spec;
  spec.n = n;
  spec.seed = seed;

  bool adaptive = false;
  switch (kind) {
    case AlgorithmKind::Kt0Random:
      spec.knowledge = Knowledge::KT0;
      spec.id_assignment = IdAssignment::Canonical;
      spec.port_strategy = PortStrategy::RandomPermutation;
      break;
    case AlgorithmKind::Kt0Baseline:
      spec.knowledge = Knowledge::KT0;
      spec.id_assignment = IdAssignment::RandomShuffle;
      spec.port_strategy = PortStrategy::Adaptive;
      adaptive = true;
      break;
    case AlgorithmKind::Kt1Fast:
    case AlgorithmKind::Kt1Recursive:
      spec.knowledge = Knowledge::KT1;
      spec.id_assignment = IdAssignment::RandomShuffle;
      spec.port_strategy = PortStrategy::Identity;
      break;
  }
  switch (wiring) {
    case WiringKind::Default:
      break;
    case WiringKind::Random:
      spec.port_strategy = PortStrategy::RandomPermutation;
      adaptive = false;
      break;
    case WiringKind::Identity:
      spec.port_strategy = PortStrategy::Identity;
      adaptive = false;
      break;
    case WiringKind::Adaptive:
      spec.port_strategy = PortStrategy::Adaptive;
      adaptive = true;
      break;
  }
  if (spec.knowledge == Knowledge::KT1 &&
      spec.port_strategy == PortStrategy::Adaptive) {
    throw std::invalid_argument(
        "adaptive wiring is only defined for the KT0 algorithms");
  }

  std::unique_ptr<PulseAlgorithm> algo;
  switch (kind) {
    case AlgorithmKind::Kt0Random:
      algo = std::make_unique<Kt0RandomMatching>();
      if (adaptive) {
        algo = std::make_unique<ParityWrapped>(std::move(algo));
      }
      break;
    case AlgorithmKind::Kt0Baseline:
      algo = std::make_unique<BaselineSequentialProbe>();
      break;
    case AlgorithmKind::Kt1Fast:
      algo = std::make_unique<IntervalMachine>(flat_schedule(n));
      break;
    case AlgorithmKind::Kt1Recursive:
      algo = std::make_unique<IntervalMachine>(recursive_schedule(n));
      break;
  }

  Network net = build_network(spec);
  RunOptions options;
  options.max_rounds = max_rounds;
  TrialOutcome out;
  out.run = run(net, *algo, options);
  ValidationReport report = validate_matching(net, out.run.matching);

  out.record.algorithm = to_string(kind);
  out.record.model = spec.knowledge == Knowledge::KT0 ? "KT0" : "KT1";
  out.record.n = n;
  out.record.trial = 0;
  out.record.seed = spec.seed;
  out.record.rounds = out.run.metrics.rounds;
  out.record.phases = out.run.metrics.phases;
  out.record.pulses = out.run.metrics.total_pulses;
  out.record.valid = report.valid;
  out.record.termination = to_string(out.run.metrics.termination_reason);
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (config.n_values.empty()) throw std::invalid_argument("no n values given");
  for (long long n : config.n_values) {
    if (n < 1) throw std::invalid_argument("n must be positive");
  }

  ExperimentResult result;
  result.config = config;
  const size_t total =
      config.n_values.size() * static_cast<size_t>(config.trials);
  result.records.resize(total);

  auto run_task = [&](size_t task) {
    size_t ni = task / config.trials;
    int trial = static_cast<int>(task % config.trials);
    TrialOutcome out =
        run_trial(config.algorithm, config.n_values[ni], trial, config.seed,
                  config.wiring, config.max_rounds);
    result.records[task] = std::move(out.record);
  };

  int threads = std::max(1, config.threads);
  if (threads == 1) {
    for (size_t task = 0; task < total; ++task) run_task(task);
  } else {
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (size_t task = next.fetch_add(1); task < total;
             task = next.fetch_add(1)) {
          run_task(task);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  for (const TrialRecord& rec : result.records) {
    if (!rec.valid) {
      std::ostringstream msg;
      msg << "invalid matching: algorithm=" << rec.algorithm << " n=" << rec.n
          << " trial=" << rec.trial << " seed=" << rec.seed
          << " (replay: pulse-match verify --replay " << rec.n << " "
          << rec.seed << " --algorithm " << rec.algorithm << ")";
      throw std::runtime_error(msg.str());
    }
  }

  for (size_t ni = 0; ni < config.n_values.size(); ++ni) {
    Accumulator phases, rounds, pulses;
    for (int t = 0; t < config.trials; ++t) {
      const TrialRecord& rec = result.records[ni * config.trials + t];
      phases.add(rec.phases);
      rounds.add(rec.rounds);
      pulses.add(rec.pulses);
    }
    AggregateRow row;
    row.n = config.n_values[ni];
    row.trials = config.trials;
    row.phases_mean = phases.mean;
    row.phases_stddev = phases.stddev();
    row.phases_min = phases.min;
    row.phases_max = phases.max;
    row.rounds_mean = rounds.mean;
    row.rounds_stddev = rounds.stddev();
    row.rounds_min = rounds.min;
    row.rounds_max = rounds.max;
    row.pulses_mean = pulses.mean;
    row.pulses_stddev = pulses.stddev();
    row.pulses_min = pulses.min;
    row.pulses_max = pulses.max;
    result.summary.push_back(row);
  }
  return result;
}

std::string to_csv(std::span<const TrialRecord> records) {
  std::ostringstream out;
  out << "algorithm,model,n,trial,seed,rounds,phases,pulses,valid,termination\n";
  for (const TrialRecord& r : records) {
    out << r.algorithm << ',' << r.model << ',' << r.n << ',' << r.trial << ','
        << r.seed << ',' << r.rounds << ',' << r.phases << ',' << r.pulses
        << ',' << (r.valid ? 1 : 0) << ',' << r.termination << '\n';
  }
  return out.str();
}

std::string summary_csv(std::string_view algorithm,
                        std::span<const AggregateRow> rows) {
  std::ostringstream out;
  out << "algorithm,n,trials"
      << ",phases_mean,phases_stddev,phases_min,phases_max"
      << ",rounds_mean,rounds_stddev,rounds_min,rounds_max"
      << ",pulses_mean,pulses_stddev,pulses_min,pulses_max\n";
  for (const AggregateRow& r : rows) {
    out << algorithm << ',' << r.n << ',' << r.trials << ','
        << format_double(r.phases_mean) << ',' << format_double(r.phases_stddev)
        << ',' << r.phases_min << ',' << r.phases_max << ','
        << format_double(r.rounds_mean) << ',' << format_double(r.rounds_stddev)
        << ',' << r.rounds_min << ',' << r.rounds_max << ','
        << format_double(r.pulses_mean) << ',' << format_double(r.pulses_stddev)
        << ',' << r.pulses_min << ',' << r.pulses_max << '\n';
  }
  return out.str();
}

std::string to_json(const ExperimentResult& result) {
  nlohmann::json doc;
  doc["records"] = nlohmann::json::array();
  for (const TrialRecord& r : result.records) {
    doc["records"].push_back({{"algorithm", r.algorithm},
                              {"model", r.model},
                              {"n", r.n},
                              {"trial", r.trial},
                              {"seed", r.seed},
                              {"rounds", r.rounds},
                              {"phases", r.phases},
                              {"pulses", r.pulses},
                              {"valid", r.valid},
                              {"termination", r.termination}});
  }
  doc["summary"] = nlohmann::json::array();
  for (const AggregateRow& r : result.summary) {
    doc["summary"].push_back({{"n", r.n},
                              {"trials", r.trials},
                              {"phases_mean", r.phases_mean},
                              {"phases_stddev", r.phases_stddev},
                              {"phases_min", r.phases_min},
                              {"phases_max", r.phases_max},
                              {"rounds_mean", r.rounds_mean},
                              {"rounds_stddev", r.rounds_stddev},
                              {"rounds_min", r.rounds_min},
                              {"rounds_max", r.rounds_max},
                              {"pulses_mean", r.pulses_mean},
                              {"pulses_stddev", r.pulses_stddev},
                              {"pulses_min", r.pulses_min},
                              {"pulses_max", r.pulses_max}});
  }
  return doc.dump(2);
}

std::vector<TrialRecord> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "algorithm,model,n,trial,seed,rounds,phases,pulses,valid,termination") {
    throw std::invalid_argument("unexpected CSV header");
  }
  std::vector<TrialRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 10) throw std::invalid_argument("malformed CSV row");
    TrialRecord r;
    r.algorithm = fields[0];
    r.model = fields[1];
    r.n = std::stoll(fields[2]);
    r.trial = std::stoi(fields[3]);
    r.seed = std::stoull(fields[4]);
    r.rounds = std::stoi(fields[5]);
    r.phases = std::stoll(fields[6]);
    r.pulses = std::stoll(fields[7]);
    r.valid = fields[8] == "1";
    r.termination = fields[9];
    records.push_back(std::move(r));
  }
  return records;
}

void write_output(const ExperimentResult& result, const std::string& path,
                  OutputFormat format) {
  if (path.empty()) throw std::invalid_argument("output path is empty");
  if (format == OutputFormat::Json) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << to_json(result);
    return;
  }
  {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << to_csv(result.records);
  }
  std::ofstream sum(path + ".summary");
  if (!sum) throw std::runtime_error("cannot write " + path + ".summary");
  sum << summary_csv(to_string(result.config.algorithm), result.summary);
}

ExperimentConfig figure_preset(bool full) {
  ExperimentConfig config;
  config.algorithm = AlgorithmKind::Kt0Random;
  config.trials = full ? 1000 : 200;
  config.seed = kFigureSeed;
  int top = full ? 20 : 14;
  for (int i = 1; i <= top; ++i) config.n_values.push_back(1LL << i);
  config.output_path = "figure.csv";
  return config;
}

std::vector<long long> parse_n_list(const std::string& text) {
  std::vector<long long> values;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    size_t dash = tok.find('-', 1);  // skip a leading sign
    if (dash == std::string::npos) {
      values.push_back(parse_n_token(tok));
      continue;
    }
    long long a = parse_n_token(tok.substr(0, dash));
    long long b = parse_n_token(tok.substr(dash + 1));
    if (b < a) throw std::invalid_argument("descending range: " + tok);
    if (b - a >= 1000000) throw std::invalid_argument("range too large: " + tok);
    for (long long v = a; v <= b; ++v) values.push_back(v);
  }
  if (values.empty()) throw std::invalid_argument("no n values in: " + text);
  return values;
}

}  // namespace pulsematch

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pulsematch/harness.hpp"

namespace py = pybind11;
using namespace pulsematch;

namespace {

py::dict record_dict(const TrialRecord& r) {
  py::dict d;
  d["algorithm"] = r.algorithm;
  d["model"] = r.model;
  d["n"] = r.n;
  d["trial"] = r.trial;
  d["seed"] = r.seed;
  d["rounds"] = r.rounds;
  d["phases"] = r.phases;
  d["pulses"] = r.pulses;
  d["valid"] = r.valid;
  d["termination"] = r.termination;
  return d;
}

py::dict summary_dict(const AggregateRow& r) {
  py::dict d;
  d["n"] = r.n;
  d["trials"] = r.trials;
  d["phases_mean"] = r.phases_mean;
  d["phases_stddev"] = r.phases_stddev;
  d["phases_min"] = r.phases_min;
  d["phases_max"] = r.phases_max;
  d["rounds_mean"] = r.rounds_mean;
  d["rounds_stddev"] = r.rounds_stddev;
  d["rounds_min"] = r.rounds_min;
  d["rounds_max"] = r.rounds_max;
  d["pulses_mean"] = r.pulses_mean;
  d["pulses_stddev"] = r.pulses_stddev;
  d["pulses_min"] = r.pulses_min;
  d["pulses_max"] = r.pulses_max;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Synchronous link-activation matching on complete bipartite graphs";
  m.attr("__version__") = "1.0.0";

  m.def("algorithms", &algorithm_names, "Names accepted by run_trial");

  m.def(
      "run_trial",
      [](const std::string& algorithm, long long n, int trial, uint64_t seed,
         const std::string& wiring, int max_rounds) {
        TrialOutcome out = run_trial(parse_algorithm(algorithm), n, trial,
                                     seed, parse_wiring(wiring), max_rounds);
        py::dict d = record_dict(out.record);
        py::list edges;
        for (const auto& [u, w] : out.run.matching.edges) {
          edges.append(py::make_tuple(u, w));
        }
        d["edges"] = edges;
        return d;
      },
      py::arg("algorithm"), py::arg("n"), py::arg("trial") = 0,
      py::arg("seed") = 1, py::arg("wiring") = "default",
      py::arg("max_rounds") = 0,
      "Run one trial; returns the record plus the matched identifier pairs");

  m.def(
      "run_experiment",
      [](const std::string& algorithm, const std::vector<long long>& n_values,
         int trials, uint64_t seed, const std::string& wiring, int threads) {
        ExperimentConfig config;
        config.algorithm = parse_algorithm(algorithm);
        config.n_values = n_values;
        config.trials = trials;
        config.seed = seed;
        config.wiring = parse_wiring(wiring);
        config.threads = threads;
        ExperimentResult result = run_experiment(config);
        py::list records;
        for (const TrialRecord& r : result.records) records.append(record_dict(r));
        py::list summary;
        for (const AggregateRow& r : result.summary) summary.append(summary_dict(r));
        py::dict d;
        d["records"] = records;
        d["summary"] = summary;
        d["csv"] = to_csv(result.records);
        return d;
      },
      py::arg("algorithm"), py::arg("n_values"), py::arg("trials") = 1,
      py::arg("seed") = 1, py::arg("wiring") = "default", py::arg("threads") = 1,
      "Run a grid and return records, per-n summary, and the CSV text");

  m.def(
      "figure_preset",
      [](bool full) {
        ExperimentConfig config = figure_preset(full);
        py::dict d;
        d["algorithm"] = std::string(to_string(config.algorithm));
        d["n_values"] = config.n_values;
        d["trials"] = config.trials;
        d["seed"] = config.seed;
        return d;
      },
      py::arg("full") = false,
      "Preset grid reproducing the mean-phases-vs-log2-n study");
}

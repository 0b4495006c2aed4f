#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pulsematch/network.hpp"
#include "pulsematch/rng.hpp"

namespace pulsematch {

enum class TerminationReason : uint8_t { AllMatched, MaxRounds };

const char* to_string(TerminationReason r);

struct RunMetrics {
  int rounds = 0;
  long long phases = 0;
  long long total_pulses = 0;
  std::vector<long long> pulses_per_round;  // index r-1 = round r
  bool terminated = false;                  // every node emitted an output
  TerminationReason termination_reason = TerminationReason::MaxRounds;
};

struct MatchingResult {
  // Per node index: matched opposite-side id, or 0 while unmatched.
  std::vector<NodeId> left_output;
  std::vector<NodeId> right_output;
  std::vector<std::pair<NodeId, NodeId>> edges;  // (left id, right id)
  bool consistent = true;
  std::string inconsistency;
};

struct ValidationReport {
  bool valid = false;
  std::string message;
};

struct RunResult {
  RunMetrics metrics;
  MatchingResult matching;
};

// Collects what a node does in one round. Targets are local port numbers
// under KT0 and opposite-side node indices under KT1.
struct NodeActions {
  std::vector<int> pulses;
  bool emit_output = false;
  int output_target = -1;

  void pulse(int target) { pulses.push_back(target); }
  void output(int target) {
    emit_output = true;
    output_target = target;
  }
  void clear() {
    pulses.clear();
    emit_output = false;
    output_target = -1;
  }
};

// A node-step protocol driven by the engine. One instance serves a whole
// trial; per-node state lives inside the implementation, keyed by
// (side, node index). `step` is called once per live node per round with the
// inbox of pulses sent in the previous round, sorted ascending; it must be a
// pure function of its inputs plus the node's stream.
class PulseAlgorithm {
 public:
  virtual ~PulseAlgorithm() = default;
  virtual Knowledge knowledge() const = 0;
  virtual void reset(const Network& net) = 0;
  virtual void step(Side side, int node, int round, std::span<const int> inbox,
                    RngStream& rng, NodeActions& act) = 0;
  // Algorithm-defined phase counter after `round` rounds have run.
  virtual long long phases_at(int round) const = 0;
};

struct PulseEvent {
  Side side;     // sender side
  int sender;    // sender index
  int receiver;  // opposite-side index
  int port;      // sender-local port, -1 under KT1

  friend bool operator==(const PulseEvent&, const PulseEvent&) = default;
};

// Optional observer for tests and tooling.
class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void on_round(int round, std::span<const PulseEvent> pulses) {
    (void)round;
    (void)pulses;
  }
  virtual void on_output(Side side, int node, int target) {
    (void)side;
    (void)node;
    (void)target;
  }
};

// Safety cap, an order of magnitude above the expected round counts.
int default_max_rounds(int n);

struct RunOptions {
  int max_rounds = 0;  // 0 = default_max_rounds(n)
  TraceSink* sink = nullptr;
};

// Drives rounds 1, 2, ... : freezes all inboxes, steps every live node,
// deduplicates each node's activations, counts pulses, and delivers them to
// next-round inboxes. Stops when every node has emitted an output or the
// round cap is hit. Throws std::invalid_argument if the algorithm's
// knowledge model differs from the network's.
RunResult run(Network& net, PulseAlgorithm& algo, const RunOptions& opts = {});

// Perfect-matching oracle: n mutually consistent edges covering both id sets.
ValidationReport validate_matching(const Network& net, const MatchingResult& m);

}  // namespace pulsematch

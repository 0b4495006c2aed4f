#pragma once

#include <vector>

#include "pulsematch/engine.hpp"

namespace pulsematch {

// Tuning for the geometric prompt ramp used in stage 1.
// Phase i prompts floor((1/c)^(i-1)) ports per unmatched left node.
struct Stage1Params {
  double c = 0.5;       // per-phase survival target, 0 < c < 1
  int t_override = -1;  // when >= 0, forces the stage-1 phase count
};

// Number of stage-1 phases: smallest T with n * c^T <= ceil(log2 n),
// i.e. ceil(log_{1/c}(n / max(1, ceil(log2 n)))). Zero for n <= 4.
int stage1_phase_count(long long n, const Stage1Params& params = {});

// Ports prompted per unmatched left node in stage-1 phase i (1-based).
long long prompt_target_count(int phase, const Stage1Params& params = {});

struct Kt0RandomStats {
  long long n = 0;
  int t = 0;  // stage-1 phase count used in the run
  // matched_per_phase[i] = pairs matched during phase index i (1-based,
  // index 0 unused). Stage-1 phases are 1..t, discovery is t+1, stage-2
  // phases are t+2, t+3, ...
  std::vector<long long> matched_per_phase;
  long long unmatched_after_phase(int phase) const;
};

// Randomized matching for port-numbered networks with unknown neighbors.
//
// Stage 1 runs T phases of four rounds each. Unmatched left nodes prompt
// a random sample of ports (with replacement, deduplicated), unmatched
// right nodes acknowledge every prompt, each prompter invites one random
// acknowledger, and each invited right node accepts one random inviter.
// Matched right nodes halt at the accept; matched left nodes learn the
// accept at the start of the next phase and halt then.
//
// Two discovery rounds follow: survivors prompt every port and collect
// acknowledgements, so both sides learn the exact set of live ports.
// Stage 2 then runs three-round phases where every unmatched left node
// invites a uniform live port, invited right nodes accept one inviter,
// and both endpoints of a new pair notify their remaining live ports
// before halting, keeping the live sets exact.
class Kt0RandomMatching final : public PulseAlgorithm {
 public:
  explicit Kt0RandomMatching(Stage1Params params = {});

  Knowledge knowledge() const override { return Knowledge::KT0; }
  void reset(const Network& net) override;
  void step(Side side, int node, int round, std::span<const int> inbox,
            RngStream& rng, NodeActions& act) override;
  long long phases_at(int round) const override;

  const Kt0RandomStats& stats() const { return stats_; }
  const Stage1Params& params() const { return params_; }

 private:
  struct LeftState {
    int invited = -1;            // port invited this phase, -1 if none
    std::vector<int> live;       // stage-2 live ports (unmatched rights)
    bool live_ready = false;
  };
  struct RightState {
    int partner = -1;            // accepted port, -1 while unmatched
    std::vector<int> live;       // stage-2 live ports (unmatched lefts)
    bool live_ready = false;
  };

  void note_match(int phase);
  static void erase_sorted(std::vector<int>& v, int port);
  static void erase_all_sorted(std::vector<int>& v, std::span<const int> ports);

  Stage1Params params_;
  int n_ = 0;
  int t_ = 0;
  std::vector<LeftState> left_;
  std::vector<RightState> right_;
  Kt0RandomStats stats_;
};

// Runs the algorithm on a fresh network and returns metrics plus matching.
RunResult run_randomized_matching(const NetworkSpec& spec,
                                  Stage1Params params = {},
                                  const RunOptions& options = {});

}  // namespace pulsematch

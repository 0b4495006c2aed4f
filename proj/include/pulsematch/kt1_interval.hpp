#pragma once

#include <vector>

#include "pulsematch/engine.hpp"

namespace pulsematch {

// Smallest b with 2^b >= n (n >= 1).
int ceil_log2(long long n);

// One contiguous slice of the round schedule. A segment is sized for a
// bound on the live span; nodes whose span is smaller simply use fewer
// of the segment's slots.
struct Kt1Segment {
  enum class Kind { Interval, Terminal };
  Kind kind = Kind::Interval;
  long long bound = 0;  // upper bound on span size handled by this segment
  int first_round = 1;  // engine round of the segment's first slot
  int rounds = 0;       // scheduled slots (excludes trailing responses)
  int s = 0;            // ceil_log2(bound)
  int w = 0;            // ceil_log2(s), code width for bound-sized spans
  bool pim = false;     // per-interval sequential matching appended
};

// What a given engine round is for.
struct Kt1Slot {
  enum class Kind {
    None,     // before round 1
    Coord,    // left nodes report to the span coordinator
    Recruit,  // coordinator enlists helper left nodes
    Bit,      // coordinator broadcasts helper codes, one bit per round
    PartA,    // helpers broadcast leader ranks, one bit per helper
    PartB,    // leaders announce themselves to their counterparts
    Inform,   // leaders tell their interval who leads it
    Pim,      // right leaders match their interval one rank per round
    TermBit,  // terminal: coordinator broadcasts ranks to all members
    Respond,  // terminal: left nodes claim their counterpart
    Observe,  // terminal: right nodes learn their partner
    Tail,     // past the schedule; trailing responses drain here
  };
  int segment = 0;
  Kind kind = Kind::None;
  int k = 0;  // bit index for Bit/TermBit, 1-based step for Pim/Tail
};

class Kt1Schedule {
 public:
  Kt1Schedule() = default;
  explicit Kt1Schedule(std::vector<Kt1Segment> segments);

  const std::vector<Kt1Segment>& segments() const { return segments_; }
  long long root_bound() const;
  int total_rounds() const;  // last scheduled slot (trailing drain excluded)
  Kt1Slot slot_at(int round) const;

 private:
  std::vector<Kt1Segment> segments_;
};

// Builds an interval segment for spans up to `bound` (> 4).
Kt1Segment make_interval_segment(long long bound, int first_round, bool pim);
// Builds a terminal segment for spans up to `bound` (<= 4).
Kt1Segment make_terminal_segment(long long bound, int first_round);

// Single interval segment with per-interval sequential matching for
// n > 4, terminal segment otherwise.
Kt1Schedule flat_schedule(long long n);

// Deterministic matching for networks where both sides know the full
// opposite identifier list. Node indices double as global ranks, and the
// schedule is a fixed function of n, so every node runs the same slot
// clock without any negotiation.
//
// Interval segments: all live left nodes report to the lowest right node
// of their span, which learns the span size m and recruits ceil(log2 m)
// helpers by broadcasting each helper's index bit by bit. Helpers then
// broadcast the interval-leader ranks (multiples of ceil(log2 m)) in one
// round, each helper carrying one binary digit. Leaders announce
// themselves to their equal-rank counterparts and inform their interval.
// With per-interval matching enabled, each right leader then walks its
// interval one rank per round; otherwise the intervals recurse in the
// next segment. Terminal segments code every member's rank directly.
class IntervalMachine final : public PulseAlgorithm {
 public:
  explicit IntervalMachine(Kt1Schedule schedule);

  Knowledge knowledge() const override { return Knowledge::KT1; }
  void reset(const Network& net) override;
  void step(Side side, int node, int round, std::span<const int> inbox,
            RngStream& rng, NodeActions& act) override;
  long long phases_at(int round) const override;

  const Kt1Schedule& schedule() const { return schedule_; }

 private:
  struct NodeSt {
    int lo = 0;
    int hi = 0;  // live span of global ranks [lo, hi)
    int seg = -1;
    bool coordinator = false;
    bool recruited = false;
    bool is_leader = false;
    int code = 0;
    int rank = -1;  // global rank once learned
  };

  [[noreturn]] static void bad(const char* what);
  void process_prev(Side side, int node, const Kt1Slot& prev,
                    std::span<const int> inbox, const Kt1Slot& cur,
                    NodeActions& act);
  void act_cur(Side side, int node, const Kt1Slot& cur, NodeActions& act);

  Kt1Schedule schedule_;
  int n_ = 0;
  std::vector<NodeSt> left_;
  std::vector<NodeSt> right_;
};

// Runs the flat schedule on a fresh network.
RunResult fast_interval_matching(const NetworkSpec& spec,
                                 const RunOptions& options = {});

}  // namespace pulsematch

#pragma once

#include <memory>
#include <vector>

#include "pulsematch/engine.hpp"

namespace pulsematch {

// Port wiring that is decided online, against the algorithm. A send on a
// fresh port binds it to the lowest-numbered opposite node the sender has
// never exchanged a pulse with; the receiving end uses that node's lowest
// unbound port. Left ports bind on odd rounds and right ports on even
// rounds, so at most one side commits fresh edges per round and bindings
// never collide. Algorithms whose sides both transmit in the same round
// must be parity-wrapped first.
class AdaptiveWiring final : public DynamicWiring {
 public:
  explicit AdaptiveWiring(int n);

  std::pair<int, int> route(Side side, int node, int port, int round) override;
  int bound_peer(Side side, int node, int port) const override;
  int bound_port(Side side, int node, int peer) const override;

  // Binds every remaining port pair in lexicographic order, yielding a
  // full wiring for post-run validation.
  void complete();

  bool communicated(int left, int right) const;
  long long rule_binds() const { return rule_binds_; }
  long long fallback_binds() const { return fallback_binds_; }

  struct BindRecord {
    int round;
    Side side;
    int node;
    int port;
    int peer;
    int peer_port;
    friend bool operator==(const BindRecord&, const BindRecord&) = default;
  };
  const std::vector<BindRecord>& bind_log() const { return bind_log_; }

 private:
  int port_index(Side side, int node, int port) const;
  int edge_index(Side side, int node, int peer) const;

  int n_;
  // port_peer_[side][node*n + port-1] = bound opposite node, -1 unbound
  std::vector<int> port_peer_[2];
  // edge_port_[side][node*n + peer] = node's port on that edge, 0 unbound
  std::vector<int> edge_port_[2];
  std::vector<uint8_t> communicated_;    // [left*n + right]
  std::vector<int> next_candidate_[2];   // rule scan cursor per node
  std::vector<int> next_free_port_[2];   // receiver port scan cursor
  long long rule_binds_ = 0;
  long long fallback_binds_ = 0;
  std::vector<BindRecord> bind_log_;
};

// Probe algorithm used to exhibit the adaptive wiring's quadratic message
// floor. Each left node tries one port per probe step, starting from its
// own identifier so that under a fixed identity wiring the very first
// probes already form a perfect matching. Left nodes probe on odd rounds;
// right nodes answer the lowest-port probe on even rounds and halt.
class BaselineSequentialProbe final : public PulseAlgorithm {
 public:
  Knowledge knowledge() const override { return Knowledge::KT0; }
  void reset(const Network& net) override;
  void step(Side side, int node, int round, std::span<const int> inbox,
            RngStream& rng, NodeActions& act) override;
  long long phases_at(int round) const override { return (round + 1) / 2; }

 private:
  int n_ = 0;
  std::vector<int> offset_;  // left probe start, own id mod n
  std::vector<int> tries_;   // probes sent so far per left node
};

// Runs an algorithm at half speed so that left nodes act only on odd
// rounds and right nodes only on even rounds, which the adaptive wiring
// requires. Wrapped round r maps to engine rounds 2r-1 (left) and 2r
// (right); inboxes are delayed so each node observes exactly what it
// would have seen unwrapped. When a node announces its match it also
// pulses the matched port once, so the transcript ends with one extra
// pulse per node unless that port was already pulsed in the same step.
class ParityWrapped final : public PulseAlgorithm {
 public:
  explicit ParityWrapped(std::unique_ptr<PulseAlgorithm> inner);

  Knowledge knowledge() const override { return inner_->knowledge(); }
  void reset(const Network& net) override;
  void step(Side side, int node, int round, std::span<const int> inbox,
            RngStream& rng, NodeActions& act) override;
  long long phases_at(int round) const override {
    return inner_->phases_at((round + 1) / 2);
  }

  PulseAlgorithm& inner() { return *inner_; }
  long long appended_pulses() const { return appended_pulses_; }

 private:
  std::unique_ptr<PulseAlgorithm> inner_;
  std::vector<std::vector<int>> right_buffer_;
  long long appended_pulses_ = 0;
};

}  // namespace pulsematch

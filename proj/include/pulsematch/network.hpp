#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "pulsematch/rng.hpp"

namespace pulsematch {

enum class Side : uint8_t { Left, Right };
enum class Knowledge : uint8_t { KT0, KT1 };
enum class PortStrategy : uint8_t { RandomPermutation, Identity, Adaptive };
enum class IdAssignment : uint8_t { Canonical, RandomShuffle };

using NodeId = int64_t;

inline Side opposite(Side s) {
  return s == Side::Left ? Side::Right : Side::Left;
}

struct NetworkSpec {
  int n = 1;
  Knowledge knowledge = Knowledge::KT0;
  PortStrategy port_strategy = PortStrategy::RandomPermutation;
  IdAssignment id_assignment = IdAssignment::Canonical;
  uint64_t seed = 0;
};

// Mutable port assignment, consulted at delivery time. A link's two port
// numbers are fixed the first time a pulse crosses it; implementations must
// keep both sides' partial port maps bijective.
class DynamicWiring {
 public:
  virtual ~DynamicWiring() = default;
  // Sender (side, node) pulses local port `port` (1-based) in `round`.
  // Returns {peer index on the opposite side, peer-local port}.
  virtual std::pair<int, int> route(Side side, int node, int port,
                                    int round) = 0;
  // Peer an already-bound port leads to, or -1 if the port is unbound.
  virtual int bound_peer(Side side, int node, int port) const = 0;
  // Local port of `node` on its link to `peer`, or -1 if unbound.
  virtual int bound_port(Side side, int node, int peer) const = 0;
};

// Defined in adversary.cpp; build_network uses it for PortStrategy::Adaptive.
std::shared_ptr<DynamicWiring> make_adaptive_wiring(int n);

// Complete bipartite network K_{n,n}. Node indices per side follow ascending
// id order, so index k is also the rank-k node of its side. Ports are
// 1-based. Under static strategies the port maps are fixed at construction;
// under Adaptive they grow during the run through the attached wiring.
class Network {
 public:
  explicit Network(const NetworkSpec& spec);

  const NetworkSpec& spec() const { return spec_; }
  int n() const { return spec_.n; }

  NodeId id_of(Side side, int node) const {
    return side == Side::Left ? left_ids_[node] : right_ids_[node];
  }
  std::span<const NodeId> ids(Side side) const {
    return side == Side::Left ? std::span<const NodeId>(left_ids_)
                              : std::span<const NodeId>(right_ids_);
  }
  // Index of an id on `side`, or -1 if the id does not belong to that side.
  int index_of(Side side, NodeId id) const;

  // Opposite-side node reached from (side, node) through `port`.
  // Adaptive wiring returns -1 for unbound ports.
  int port_to_peer(Side side, int node, int port) const;
  // Port of (side, node) on its link to `peer`; -1 if adaptive and unbound.
  int peer_to_port(Side side, int node, int peer) const;

  DynamicWiring* dynamic_wiring() { return wiring_.get(); }
  const DynamicWiring* dynamic_wiring() const { return wiring_.get(); }

 private:
  NetworkSpec spec_;
  std::vector<NodeId> left_ids_;   // ascending
  std::vector<NodeId> right_ids_;  // ascending
  std::vector<FeistelPermutation> left_perm_, right_perm_;
  std::shared_ptr<DynamicWiring> wiring_;
};

// Validates the spec (throws std::invalid_argument on n < 1 or an Adaptive
// strategy combined with KT1) and materializes the network.
Network build_network(const NetworkSpec& spec);

}  // namespace pulsematch

#include "pulsematch/network.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pulsematch {
namespace {

constexpr uint64_t kIdTag = 0x6e6f64652d696473ull;
constexpr uint64_t kWiringTag = 0x706f72742d6d6170ull;

std::vector<NodeId> iota_ids(NodeId first, int n) {
  std::vector<NodeId> ids(static_cast<size_t>(n));
  std::iota(ids.begin(), ids.end(), first);
  return ids;
}

}  // namespace

Network::Network(const NetworkSpec& spec) : spec_(spec) {
  const int n = spec.n;
  if (spec.id_assignment == IdAssignment::Canonical) {
    left_ids_ = iota_ids(1, n);
    right_ids_ = iota_ids(static_cast<NodeId>(n) + 1, n);
  } else {
    std::vector<NodeId> pool = iota_ids(1, 2 * n);
    RngStream rng = derive_stream(spec.seed, kIdTag);
    for (size_t i = pool.size() - 1; i > 0; --i) {
      size_t j = static_cast<size_t>(rng.below(i + 1));
      std::swap(pool[i], pool[j]);
    }
    left_ids_.assign(pool.begin(), pool.begin() + n);
    right_ids_.assign(pool.begin() + n, pool.end());
    std::sort(left_ids_.begin(), left_ids_.end());
    std::sort(right_ids_.begin(), right_ids_.end());
  }

  if (spec.port_strategy == PortStrategy::RandomPermutation) {
    left_perm_.reserve(static_cast<size_t>(n));
    right_perm_.reserve(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
      left_perm_.emplace_back(static_cast<uint64_t>(n),
                              derive_seed(spec.seed, kWiringTag, 0, v));
      right_perm_.emplace_back(static_cast<uint64_t>(n),
                               derive_seed(spec.seed, kWiringTag, 1, v));
    }
  } else if (spec.port_strategy == PortStrategy::Adaptive) {
    wiring_ = make_adaptive_wiring(n);
  }
}

int Network::index_of(Side side, NodeId id) const {
  auto sp = ids(side);
  auto it = std::lower_bound(sp.begin(), sp.end(), id);
  if (it == sp.end() || *it != id) return -1;
  return static_cast<int>(it - sp.begin());
}

int Network::port_to_peer(Side side, int node, int port) const {
  switch (spec_.port_strategy) {
    case PortStrategy::Identity:
      return port - 1;
    case PortStrategy::RandomPermutation: {
      const auto& perm =
          side == Side::Left ? left_perm_[node] : right_perm_[node];
      return static_cast<int>(perm.forward(static_cast<uint64_t>(port - 1)));
    }
    case PortStrategy::Adaptive:
      return wiring_->bound_peer(side, node, port);
  }
  return -1;
}

int Network::peer_to_port(Side side, int node, int peer) const {
  switch (spec_.port_strategy) {
    case PortStrategy::Identity:
      return peer + 1;
    case PortStrategy::RandomPermutation: {
      const auto& perm =
          side == Side::Left ? left_perm_[node] : right_perm_[node];
      return static_cast<int>(perm.inverse(static_cast<uint64_t>(peer))) + 1;
    }
    case PortStrategy::Adaptive:
      return wiring_->bound_port(side, node, peer);
  }
  return -1;
}

Network build_network(const NetworkSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("network size must be >= 1");
  if (spec.port_strategy == PortStrategy::Adaptive &&
      spec.knowledge != Knowledge::KT0) {
    throw std::invalid_argument("adaptive wiring is only defined for KT0");
  }
  return Network(spec);
}

}  // namespace pulsematch

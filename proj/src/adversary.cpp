#include "pulsematch/adversary.hpp"

#include <algorithm>
#include <stdexcept>

namespace pulsematch {

namespace {
constexpr int kMaxAdaptiveN = 2048;  // dense n*n maps per side
}

AdaptiveWiring::AdaptiveWiring(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("adaptive wiring requires n >= 1");
  if (n > kMaxAdaptiveN) {
    throw std::invalid_argument("adaptive wiring keeps dense per-pair state; n > 2048 unsupported");
  }
  for (int s = 0; s < 2; ++s) {
    port_peer_[s].assign(static_cast<size_t>(n) * n, -1);
    edge_port_[s].assign(static_cast<size_t>(n) * n, 0);
    next_candidate_[s].assign(n, 0);
    next_free_port_[s].assign(n, 0);
  }
  communicated_.assign(static_cast<size_t>(n) * n, 0);
}

int AdaptiveWiring::port_index(Side, int node, int port) const {
  return node * n_ + (port - 1);
}

int AdaptiveWiring::edge_index(Side, int node, int peer) const {
  return node * n_ + peer;
}

bool AdaptiveWiring::communicated(int left, int right) const {
  return communicated_[static_cast<size_t>(left) * n_ + right] != 0;
}

std::pair<int, int> AdaptiveWiring::route(Side side, int node, int port,
                                          int round) {
  if (node < 0 || node >= n_ || port < 1 || port > n_) {
    throw std::logic_error("adaptive wiring: route outside the network");
  }
  const int s = side == Side::Left ? 0 : 1;
  const int o = 1 - s;
  const int pi = port_index(side, node, port);
  if (port_peer_[s][pi] >= 0) {
    int peer = port_peer_[s][pi];
    return {peer, edge_port_[o][edge_index(opposite(side), peer, node)]};
  }

  const bool odd = round % 2 == 1;
  if ((side == Side::Left) != odd) {
    throw std::logic_error(
        "adaptive wiring: left ports bind on odd rounds and right ports on "
        "even rounds; parity-wrap the algorithm");
  }

  int peer = -1;
  int& cursor = next_candidate_[s][node];
  while (cursor < n_) {
    bool comm = side == Side::Left ? communicated(node, cursor)
                                   : communicated(cursor, node);
    if (!comm) break;
    ++cursor;
  }
  if (cursor < n_) {
    peer = cursor;
    ++rule_binds_;
  } else {
    // every opposite node already communicated: bind any unbound pair
    for (int cand = 0; cand < n_; ++cand) {
      if (edge_port_[s][edge_index(side, node, cand)] == 0) {
        peer = cand;
        break;
      }
    }
    if (peer < 0) throw std::logic_error("adaptive wiring: no unbound pair left");
    ++fallback_binds_;
  }

  int& free_cursor = next_free_port_[o][peer];
  while (free_cursor < n_ &&
         port_peer_[o][static_cast<size_t>(peer) * n_ + free_cursor] >= 0) {
    ++free_cursor;
  }
  if (free_cursor >= n_) {
    throw std::logic_error("adaptive wiring: peer has no free port");
  }
  const int q = free_cursor + 1;

  port_peer_[s][pi] = peer;
  edge_port_[s][edge_index(side, node, peer)] = port;
  port_peer_[o][static_cast<size_t>(peer) * n_ + (q - 1)] = node;
  edge_port_[o][edge_index(opposite(side), peer, node)] = q;
  int l = side == Side::Left ? node : peer;
  int r = side == Side::Left ? peer : node;
  communicated_[static_cast<size_t>(l) * n_ + r] = 1;
  bind_log_.push_back({round, side, node, port, peer, q});
  return {peer, q};
}

int AdaptiveWiring::bound_peer(Side side, int node, int port) const {
  if (node < 0 || node >= n_ || port < 1 || port > n_) return -1;
  return port_peer_[side == Side::Left ? 0 : 1][port_index(side, node, port)];
}

int AdaptiveWiring::bound_port(Side side, int node, int peer) const {
  if (node < 0 || node >= n_ || peer < 0 || peer >= n_) return -1;
  int p = edge_port_[side == Side::Left ? 0 : 1][edge_index(side, node, peer)];
  return p == 0 ? -1 : p;
}

void AdaptiveWiring::complete() {
  for (int l = 0; l < n_; ++l) {
    for (int r = 0; r < n_; ++r) {
      if (edge_port_[0][edge_index(Side::Left, l, r)] != 0) continue;
      int p = 0;
      while (port_peer_[0][static_cast<size_t>(l) * n_ + p] >= 0) ++p;
      int q = 0;
      while (port_peer_[1][static_cast<size_t>(r) * n_ + q] >= 0) ++q;
      port_peer_[0][static_cast<size_t>(l) * n_ + p] = r;
      edge_port_[0][edge_index(Side::Left, l, r)] = p + 1;
      port_peer_[1][static_cast<size_t>(r) * n_ + q] = l;
      edge_port_[1][edge_index(Side::Right, r, l)] = q + 1;
    }
  }
}

std::shared_ptr<DynamicWiring> make_adaptive_wiring(int n) {
  return std::make_shared<AdaptiveWiring>(n);
}

void BaselineSequentialProbe::reset(const Network& net) {
  n_ = net.n();
  offset_.resize(n_);
  for (int v = 0; v < n_; ++v) {
    offset_[v] = static_cast<int>(net.id_of(Side::Left, v) % n_);
  }
  tries_.assign(n_, 0);
}

void BaselineSequentialProbe::step(Side side, int node, int round,
                                   std::span<const int> inbox, RngStream&,
                                   NodeActions& act) {
  const bool odd = round % 2 == 1;
  if (side == Side::Left) {
    if (!odd) return;
    if (!inbox.empty()) {
      act.output(inbox[0]);
      return;
    }
    if (tries_[node] >= n_) return;
    int port = (offset_[node] + tries_[node]) % n_ + 1;
    ++tries_[node];
    act.pulse(port);
    return;
  }
  if (odd || inbox.empty()) return;
  act.pulse(inbox[0]);
  act.output(inbox[0]);
}

ParityWrapped::ParityWrapped(std::unique_ptr<PulseAlgorithm> inner)
    : inner_(std::move(inner)) {}

void ParityWrapped::reset(const Network& net) {
  inner_->reset(net);
  right_buffer_.assign(net.n(), {});
  appended_pulses_ = 0;
}

void ParityWrapped::step(Side side, int node, int round,
                         std::span<const int> inbox, RngStream& rng,
                         NodeActions& act) {
  const bool odd = round % 2 == 1;
  if (side == Side::Left) {
    if (!odd) return;
    inner_->step(side, node, (round + 1) / 2, inbox, rng, act);
  } else {
    if (odd) return;
    std::vector<int> present = std::move(right_buffer_[node]);
    right_buffer_[node].assign(inbox.begin(), inbox.end());
    inner_->step(side, node, round / 2, present, rng, act);
  }
  if (act.emit_output) {
    int p = act.output_target;
    if (std::find(act.pulses.begin(), act.pulses.end(), p) == act.pulses.end()) {
      act.pulse(p);
      ++appended_pulses_;
    }
  }
}

}  // namespace pulsematch

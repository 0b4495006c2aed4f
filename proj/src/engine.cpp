#include "pulsematch/engine.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace pulsematch {
namespace {

constexpr uint64_t kNodeTag = 0x6e6f64652d726e67ull;

int ceil_log2_int(int n) {
  return n <= 1 ? 0 : std::bit_width(static_cast<unsigned>(n - 1));
}

}  // namespace

const char* to_string(TerminationReason r) {
  return r == TerminationReason::AllMatched ? "AllMatched" : "MaxRounds";
}

int default_max_rounds(int n) { return 64 * (ceil_log2_int(n) + 1) + 16; }

namespace {

struct SideState {
  std::vector<std::vector<int>> inbox;
  std::vector<std::vector<int>> next_inbox;
  std::vector<char> halted;
  std::vector<int> output;  // KT0: port, KT1: opposite index; -1 = none
  std::vector<RngStream> rng;
};

void assemble(const Network& net, const SideState sides[2], RunResult& out) {
  const int n = net.n();
  const bool kt1 = net.spec().knowledge == Knowledge::KT1;
  auto& m = out.matching;
  m.left_output.assign(n, 0);
  m.right_output.assign(n, 0);

  // Resolve each emitted output to the opposite-side index.
  std::vector<int> peer[2] = {std::vector<int>(n, -1),
                              std::vector<int>(n, -1)};
  for (int s = 0; s < 2; ++s) {
    Side side = s == 0 ? Side::Left : Side::Right;
    for (int v = 0; v < n; ++v) {
      int target = sides[s].output[v];
      if (target < 0) continue;
      int p = kt1 ? target : net.port_to_peer(side, v, target);
      if (p < 0 || p >= n) {
        m.consistent = false;
        m.inconsistency = "output resolves to no peer";
        continue;
      }
      peer[s][v] = p;
      NodeId id = net.id_of(opposite(side), p);
      (s == 0 ? m.left_output : m.right_output)[v] = id;
    }
  }

  for (int v = 0; v < n && m.consistent; ++v) {
    int w = peer[0][v];
    if (w < 0) continue;
    if (peer[1][w] != v) {
      m.consistent = false;
      m.inconsistency = "left " + std::to_string(net.id_of(Side::Left, v)) +
                        " claims right " +
                        std::to_string(net.id_of(Side::Right, w)) +
                        " but is not claimed back";
      break;
    }
    m.edges.emplace_back(net.id_of(Side::Left, v), net.id_of(Side::Right, w));
  }
}

}  // namespace

RunResult run(Network& net, PulseAlgorithm& algo, const RunOptions& opts) {
  if (algo.knowledge() != net.spec().knowledge) {
    throw std::invalid_argument(
        "algorithm knowledge model does not match the network spec");
  }
  const int n = net.n();
  const bool kt1 = net.spec().knowledge == Knowledge::KT1;
  const bool adaptive = net.spec().port_strategy == PortStrategy::Adaptive;
  const int max_rounds =
      opts.max_rounds > 0 ? opts.max_rounds : default_max_rounds(n);

  algo.reset(net);

  SideState sides[2];
  for (int s = 0; s < 2; ++s) {
    sides[s].inbox.resize(n);
    sides[s].next_inbox.resize(n);
    sides[s].halted.assign(n, 0);
    sides[s].output.assign(n, -1);
    sides[s].rng.reserve(n);
    for (int v = 0; v < n; ++v) {
      sides[s].rng.push_back(
          derive_stream(net.spec().seed, kNodeTag, static_cast<uint64_t>(s),
                        static_cast<uint64_t>(v)));
    }
  }

  RunResult result;
  RunMetrics& metrics = result.metrics;
  int remaining = 2 * n;
  NodeActions act;
  std::vector<PulseEvent> events;

  int round = 0;
  while (remaining > 0 && round < max_rounds) {
    ++round;
    events.clear();
    for (int s = 0; s < 2; ++s) {
      Side side = s == 0 ? Side::Left : Side::Right;
      for (int v = 0; v < n; ++v) {
        if (sides[s].halted[v]) continue;
        act.clear();
        algo.step(side, v, round, sides[s].inbox[v], sides[s].rng[v], act);

        if (!act.pulses.empty()) {
          std::sort(act.pulses.begin(), act.pulses.end());
          act.pulses.erase(std::unique(act.pulses.begin(), act.pulses.end()),
                           act.pulses.end());
          for (int target : act.pulses) {
            int peer, peer_key, port;
            if (kt1) {
              if (target < 0 || target >= n)
                throw std::logic_error("pulse to invalid peer index");
              peer = target;
              peer_key = v;  // KT1 receivers observe sender indices
              port = -1;
            } else {
              if (target < 1 || target > n)
                throw std::logic_error("pulse on invalid port");
              port = target;
              if (adaptive) {
                auto [p, q] = net.dynamic_wiring()->route(side, v, port, round);
                peer = p;
                peer_key = q;
              } else {
                peer = net.port_to_peer(side, v, port);
                peer_key = net.peer_to_port(opposite(side), peer, v);
              }
            }
            sides[1 - s].next_inbox[peer].push_back(peer_key);
            events.push_back(PulseEvent{side, v, peer, port});
          }
        }
        if (act.emit_output) {
          sides[s].output[v] = act.output_target;
          sides[s].halted[v] = 1;
          --remaining;
          if (opts.sink) opts.sink->on_output(side, v, act.output_target);
        }
      }
    }

    metrics.pulses_per_round.push_back(static_cast<long long>(events.size()));
    metrics.total_pulses += static_cast<long long>(events.size());
    if (opts.sink) opts.sink->on_round(round, events);

    for (int s = 0; s < 2; ++s) {
      std::swap(sides[s].inbox, sides[s].next_inbox);
      for (int v = 0; v < n; ++v) {
        sides[s].next_inbox[v].clear();
        std::sort(sides[s].inbox[v].begin(), sides[s].inbox[v].end());
      }
    }
  }

  metrics.rounds = round;
  metrics.terminated = remaining == 0;
  metrics.termination_reason = metrics.terminated
                                   ? TerminationReason::AllMatched
                                   : TerminationReason::MaxRounds;
  metrics.phases = algo.phases_at(round);

  assemble(net, sides, result);
  return result;
}

ValidationReport validate_matching(const Network& net,
                                   const MatchingResult& m) {
  const int n = net.n();
  if (!m.consistent)
    return {false, "inconsistent outputs: " + m.inconsistency};
  for (int v = 0; v < n; ++v) {
    if (m.left_output[v] == 0)
      return {false, "left node " + std::to_string(net.id_of(Side::Left, v)) +
                         " has no output"};
    if (m.right_output[v] == 0)
      return {false, "right node " +
                         std::to_string(net.id_of(Side::Right, v)) +
                         " has no output"};
  }
  if (static_cast<int>(m.edges.size()) != n)
    return {false, "expected " + std::to_string(n) + " edges, got " +
                       std::to_string(m.edges.size())};
  std::vector<NodeId> ls, rs;
  ls.reserve(m.edges.size());
  rs.reserve(m.edges.size());
  for (auto& [l, r] : m.edges) {
    ls.push_back(l);
    rs.push_back(r);
  }
  std::sort(ls.begin(), ls.end());
  std::sort(rs.begin(), rs.end());
  auto left = net.ids(Side::Left);
  auto right = net.ids(Side::Right);
  if (!std::equal(ls.begin(), ls.end(), left.begin(), left.end()))
    return {false, "left endpoints do not cover the left side exactly"};
  if (!std::equal(rs.begin(), rs.end(), right.begin(), right.end()))
    return {false, "right endpoints do not cover the right side exactly"};
  return {true, "perfect matching"};
}

}  // namespace pulsematch

#include "pulsematch/kt0_random.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pulsematch {

namespace {

int ceil_log2_ll(long long n) {
  int b = 0;
  while ((1LL << b) < n) ++b;
  return b;
}

struct RoundClass {
  enum Kind { Stage1, Discovery, Stage2 } kind;
  int phase;  // 1-based within its stage
  int sub;    // 1-based subround
};

RoundClass classify(int round, int t) {
  if (round <= 4 * t) {
    return {RoundClass::Stage1, (round - 1) / 4 + 1, (round - 1) % 4 + 1};
  }
  if (round <= 4 * t + 2) {
    return {RoundClass::Discovery, 1, round - 4 * t};
  }
  int off = round - 4 * t - 3;
  return {RoundClass::Stage2, off / 3 + 1, off % 3 + 1};
}

}  // namespace

int stage1_phase_count(long long n, const Stage1Params& params) {
  if (params.t_override >= 0) return params.t_override;
  if (n <= 4) return 0;
  if (!(params.c > 0.0 && params.c < 1.0)) {
    throw std::invalid_argument("stage-1 ramp requires 0 < c < 1");
  }
  long long target = std::max<long long>(1, ceil_log2_ll(n));
  long double ratio = static_cast<long double>(n) / static_cast<long double>(target);
  if (ratio <= 1.0L) return 0;
  long double t = std::log(ratio) / std::log(1.0L / static_cast<long double>(params.c));
  long long up = static_cast<long long>(std::ceil(t - 1e-12L));
  return static_cast<int>(std::max<long long>(0, up));
}

long long prompt_target_count(int phase, const Stage1Params& params) {
  if (phase < 1) throw std::invalid_argument("phase index is 1-based");
  long double k = std::pow(1.0L / static_cast<long double>(params.c),
                           static_cast<long double>(phase - 1));
  if (k > 4e18L) return static_cast<long long>(4e18);
  return std::max<long long>(1, static_cast<long long>(k));
}

long long Kt0RandomStats::unmatched_after_phase(int phase) const {
  long long matched = 0;
  for (int p = 1; p <= phase && p < static_cast<int>(matched_per_phase.size()); ++p) {
    matched += matched_per_phase[p];
  }
  return n - matched;
}

Kt0RandomMatching::Kt0RandomMatching(Stage1Params params) : params_(params) {}

void Kt0RandomMatching::reset(const Network& net) {
  n_ = net.n();
  t_ = stage1_phase_count(n_, params_);
  left_.assign(n_, {});
  right_.assign(n_, {});
  stats_ = {};
  stats_.n = n_;
  stats_.t = t_;
  stats_.matched_per_phase.assign(t_ + 2, 0);
}

void Kt0RandomMatching::note_match(int phase) {
  if (static_cast<int>(stats_.matched_per_phase.size()) <= phase) {
    stats_.matched_per_phase.resize(phase + 1, 0);
  }
  ++stats_.matched_per_phase[phase];
}

void Kt0RandomMatching::erase_sorted(std::vector<int>& v, int port) {
  auto it = std::lower_bound(v.begin(), v.end(), port);
  if (it != v.end() && *it == port) v.erase(it);
}

void Kt0RandomMatching::erase_all_sorted(std::vector<int>& v,
                                         std::span<const int> ports) {
  if (ports.empty() || v.empty()) return;
  std::vector<int> kept;
  kept.reserve(v.size());
  std::set_difference(v.begin(), v.end(), ports.begin(), ports.end(),
                      std::back_inserter(kept));
  v.swap(kept);
}

long long Kt0RandomMatching::phases_at(int round) const {
  if (round <= 4 * t_) return (round + 3) / 4;
  if (round <= 4 * t_ + 2) return t_ + 1;
  return t_ + 1 + (round - 4 * t_ - 2 + 2) / 3;
}

void Kt0RandomMatching::step(Side side, int node, int round,
                             std::span<const int> inbox, RngStream& rng,
                             NodeActions& act) {
  const RoundClass rc = classify(round, t_);
  if (side == Side::Left) {
    LeftState& st = left_[node];
    switch (rc.kind) {
      case RoundClass::Stage1:
        if (rc.sub == 1) {
          if (!inbox.empty()) {
            // accept from the previous phase
            if (inbox.size() != 1 || inbox[0] != st.invited) {
              throw std::logic_error("stray pulse outside the invited port");
            }
            act.output(st.invited);
            return;
          }
          long long k = prompt_target_count(rc.phase, params_);
          long long draws = std::min<long long>(k, 4LL * n_);
          std::vector<int> ports;
          ports.reserve(draws);
          for (long long d = 0; d < draws; ++d) {
            ports.push_back(static_cast<int>(rng.below(n_)) + 1);
          }
          std::sort(ports.begin(), ports.end());
          ports.erase(std::unique(ports.begin(), ports.end()), ports.end());
          for (int p : ports) act.pulse(p);
        } else if (rc.sub == 3) {
          st.invited = -1;
          if (!inbox.empty()) {
            st.invited = inbox[rng.below(inbox.size())];
            act.pulse(st.invited);
          }
        }
        return;
      case RoundClass::Discovery:
        if (rc.sub == 1) {
          if (!inbox.empty()) {
            if (inbox.size() != 1 || inbox[0] != st.invited) {
              throw std::logic_error("stray pulse outside the invited port");
            }
            act.output(st.invited);
            return;
          }
          for (int p = 1; p <= n_; ++p) act.pulse(p);
        }
        return;
      case RoundClass::Stage2:
        if (rc.sub == 1) {
          if (rc.phase == 1) {
            st.live.assign(inbox.begin(), inbox.end());
            st.live_ready = true;
          } else {
            erase_all_sorted(st.live, inbox);
          }
          if (!st.live_ready || st.live.empty()) {
            throw std::logic_error("live port set empty for an unmatched node");
          }
          st.invited = st.live[rng.below(st.live.size())];
          act.pulse(st.invited);
        } else if (rc.sub == 3) {
          if (!inbox.empty()) {
            if (inbox.size() != 1 || inbox[0] != st.invited) {
              throw std::logic_error("stray pulse outside the invited port");
            }
            erase_sorted(st.live, st.invited);
            for (int p : st.live) act.pulse(p);
            act.output(st.invited);
          }
        }
        return;
    }
    return;
  }

  RightState& st = right_[node];
  switch (rc.kind) {
    case RoundClass::Stage1:
      if (rc.sub == 2) {
        for (int p : inbox) act.pulse(p);  // acknowledge every prompt
      } else if (rc.sub == 4) {
        if (!inbox.empty()) {
          int partner = inbox[rng.below(inbox.size())];
          act.pulse(partner);
          note_match(rc.phase);
          act.output(partner);
        }
      }
      return;
    case RoundClass::Discovery:
      if (rc.sub == 2) {
        st.live.assign(inbox.begin(), inbox.end());
        st.live_ready = true;
        for (int p : inbox) act.pulse(p);
      }
      return;
    case RoundClass::Stage2:
      if (rc.sub == 1) {
        erase_all_sorted(st.live, inbox);
      } else if (rc.sub == 2) {
        if (!inbox.empty()) {
          st.partner = inbox[rng.below(inbox.size())];
          act.pulse(st.partner);
          note_match(t_ + 1 + rc.phase);
        }
      } else if (rc.sub == 3) {
        if (st.partner >= 0) {
          erase_sorted(st.live, st.partner);
          for (int p : st.live) act.pulse(p);
          act.output(st.partner);
        }
      }
      return;
  }
}

RunResult run_randomized_matching(const NetworkSpec& spec, Stage1Params params,
                                  const RunOptions& options) {
  Network net = build_network(spec);
  Kt0RandomMatching algo(params);
  return run(net, algo, options);
}

}  // namespace pulsematch

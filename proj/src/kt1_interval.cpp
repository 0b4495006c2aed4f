#include "pulsematch/kt1_interval.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pulsematch {

int ceil_log2(long long n) {
  if (n < 1) throw std::invalid_argument("ceil_log2 requires n >= 1");
  int b = 0;
  while ((1LL << b) < n) ++b;
  return b;
}

namespace {

// Widths used by a span of size m inside an interval segment.
struct IcWidths {
  int s;  // helpers recruited, interval stride
  int w;  // helper code width in bits
};

IcWidths ic_widths(int m) {
  int s = ceil_log2(m);
  int w = s >= 1 ? ceil_log2(s) : 0;
  return {s, w};
}

}  // namespace

Kt1Segment make_interval_segment(long long bound, int first_round, bool pim) {
  if (bound <= 4) throw std::invalid_argument("interval segment needs bound > 4");
  Kt1Segment seg;
  seg.kind = Kt1Segment::Kind::Interval;
  seg.bound = bound;
  seg.first_round = first_round;
  seg.s = ceil_log2(bound);
  seg.w = ceil_log2(seg.s);
  seg.pim = pim;
  seg.rounds = pim ? seg.s + seg.w + 4 : seg.w + 5;
  return seg;
}

Kt1Segment make_terminal_segment(long long bound, int first_round) {
  if (bound < 1 || bound > 4) {
    throw std::invalid_argument("terminal segment needs 1 <= bound <= 4");
  }
  Kt1Segment seg;
  seg.kind = Kt1Segment::Kind::Terminal;
  seg.bound = bound;
  seg.first_round = first_round;
  seg.s = ceil_log2(bound);
  seg.w = ceil_log2(bound);  // every member's rank is coded directly
  seg.pim = false;
  seg.rounds = bound == 1 ? 2 : 3 + seg.w;
  return seg;
}

Kt1Schedule::Kt1Schedule(std::vector<Kt1Segment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) throw std::invalid_argument("empty schedule");
}

long long Kt1Schedule::root_bound() const { return segments_.front().bound; }

int Kt1Schedule::total_rounds() const {
  const Kt1Segment& last = segments_.back();
  return last.first_round + last.rounds - 1;
}

Kt1Slot Kt1Schedule::slot_at(int round) const {
  using K = Kt1Slot::Kind;
  if (round < 1) return {0, K::None, 0};
  for (int i = 0; i < static_cast<int>(segments_.size()); ++i) {
    const Kt1Segment& seg = segments_[i];
    if (round >= seg.first_round + seg.rounds) continue;
    int local = round - seg.first_round + 1;
    if (seg.kind == Kt1Segment::Kind::Interval) {
      if (local == 1) return {i, K::Coord, 0};
      if (local == 2) return {i, K::Recruit, 0};
      if (local <= 2 + seg.w) return {i, K::Bit, local - 3};
      if (local == 3 + seg.w) return {i, K::PartA, 0};
      if (local == 4 + seg.w) return {i, K::PartB, 0};
      if (local == 5 + seg.w) return {i, K::Inform, 0};
      return {i, K::Pim, local - 5 - seg.w};
    }
    if (seg.bound == 1) {
      return local == 1 ? Kt1Slot{i, K::Coord, 0} : Kt1Slot{i, K::Observe, 0};
    }
    if (local == 1) return {i, K::Coord, 0};
    if (local <= 1 + seg.w) return {i, K::TermBit, local - 2};
    if (local == 2 + seg.w) return {i, K::Respond, 0};
    return {i, K::Observe, 0};
  }
  int last = static_cast<int>(segments_.size()) - 1;
  return {last, K::Tail, round - total_rounds()};
}

Kt1Schedule flat_schedule(long long n) {
  if (n < 1) throw std::invalid_argument("schedule requires n >= 1");
  std::vector<Kt1Segment> segs;
  if (n > 4) {
    segs.push_back(make_interval_segment(n, 1, true));
  } else {
    segs.push_back(make_terminal_segment(n, 1));
  }
  return Kt1Schedule(std::move(segs));
}

IntervalMachine::IntervalMachine(Kt1Schedule schedule)
    : schedule_(std::move(schedule)) {}

void IntervalMachine::bad(const char* what) {
  throw std::logic_error(std::string("interval machine: ") + what);
}

void IntervalMachine::reset(const Network& net) {
  n_ = net.n();
  if (n_ != schedule_.root_bound()) {
    throw std::invalid_argument("schedule was built for a different n");
  }
  NodeSt init;
  init.lo = 0;
  init.hi = n_;
  left_.assign(n_, init);
  right_.assign(n_, init);
}

long long IntervalMachine::phases_at(int round) const {
  return schedule_.slot_at(round).segment + 1;
}

void IntervalMachine::step(Side side, int node, int round,
                           std::span<const int> inbox, RngStream&,
                           NodeActions& act) {
  const Kt1Slot cur = schedule_.slot_at(round);
  const Kt1Slot prev = schedule_.slot_at(round - 1);
  process_prev(side, node, prev, inbox, cur, act);
  if (act.emit_output) return;
  NodeSt& st = (side == Side::Left ? left_ : right_)[node];
  if (st.seg != cur.segment) {
    st.coordinator = false;
    st.recruited = false;
    st.is_leader = false;
    st.code = 0;
    st.rank = -1;
    st.seg = cur.segment;
  }
  act_cur(side, node, cur, act);
}

void IntervalMachine::process_prev(Side side, int node, const Kt1Slot& prev,
                                   std::span<const int> inbox,
                                   const Kt1Slot& cur, NodeActions& act) {
  using K = Kt1Slot::Kind;
  NodeSt& st = (side == Side::Left ? left_ : right_)[node];
  const int m = st.hi - st.lo;

  if (side == Side::Left) {
    switch (prev.kind) {
      case K::Recruit:
        st.recruited = !inbox.empty();
        if (st.recruited && (inbox.size() != 1 || inbox[0] != st.lo)) {
          bad("recruit pulse not from the coordinator");
        }
        st.code = 0;
        return;
      case K::Bit:
        if (st.recruited && prev.k < ic_widths(m).w) {
          st.code = st.code * 2 + (inbox.empty() ? 0 : 1);
        }
        return;
      case K::TermBit:
        if (prev.k < ceil_log2(m)) {
          st.code = st.code * 2 + (inbox.empty() ? 0 : 1);
        }
        return;
      case K::PartB:
        if (!inbox.empty()) {
          if (inbox.size() != 1) bad("several leader announcements");
          if (inbox[0] != node) bad("leader announcement crossed ranks");
          st.rank = node - st.lo;
          st.is_leader = true;
        }
        return;
      case K::Inform: {
        if (cur.segment == prev.segment) {
          // per-interval matching follows in this same segment; the
          // inform only names the interval leader, nothing to update
          if (inbox.size() != 1) bad("expected exactly one inform");
          return;
        }
        if (inbox.size() != 1) bad("expected exactly one inform");
        int g = inbox[0];
        IcWidths wd = ic_widths(m);
        if (g < st.lo || (g - st.lo) % wd.s != 0) bad("inform not from a leader");
        int j = (g - st.lo) / wd.s;
        int nhi = st.lo + static_cast<int>(std::min<long long>(
                              static_cast<long long>(j + 1) * wd.s, m));
        int nlo = g + 1;
        if (node < nlo || node >= nhi) bad("inform names a foreign interval");
        st.lo = nlo;
        st.hi = nhi;
        return;
      }
      case K::Pim: {
        if (inbox.empty()) return;
        if (inbox.size() != 1) bad("several sequential-match pulses");
        int g = inbox[0];
        int rank = (g - st.lo) + prev.k;
        if (rank < 0 || rank >= m) bad("sequential match out of span");
        if (node != st.lo + rank) bad("sequential match crossed ranks");
        st.rank = rank;
        act.pulse(st.lo + rank);
        act.output(st.lo + rank);
        return;
      }
      default:
        return;
    }
  }

  switch (prev.kind) {
    case K::Coord:
      if (!inbox.empty()) {
        if (node != st.lo) bad("coordinator must hold the lowest rank");
        if (static_cast<int>(inbox.size()) != m) bad("span size mismatch");
        if (m == 1) {
          act.output(st.lo);
          return;
        }
        st.coordinator = true;
      }
      return;
    case K::PartA: {
      if (inbox.empty() || st.coordinator) return;
      IcWidths wd = ic_widths(m);
      long long rho = 0;
      for (int g : inbox) {
        if (g - st.lo < 0 || g - st.lo >= wd.s) bad("rank digit out of range");
        rho += 1LL << (g - st.lo);
      }
      if (rho % wd.s != 0 || rho <= 0 || rho >= m) bad("announced rank invalid");
      if (node != st.lo + rho) bad("leader rank crossed indices");
      st.rank = static_cast<int>(rho);
      st.is_leader = true;
      act.pulse(node);
      return;
    }
    case K::Inform:
      if (cur.segment == prev.segment) {
        if (st.is_leader) return;  // counterpart's inform, already known
        if (inbox.size() != 1) bad("expected exactly one inform");
        return;
      } else {
        if (inbox.size() != 1) bad("expected exactly one inform");
        int g = inbox[0];
        IcWidths wd = ic_widths(m);
        if (g < st.lo || (g - st.lo) % wd.s != 0) bad("inform not from a leader");
        int j = (g - st.lo) / wd.s;
        int nhi = st.lo + static_cast<int>(std::min<long long>(
                              static_cast<long long>(j + 1) * wd.s, m));
        int nlo = g + 1;
        if (node < nlo || node >= nhi) bad("inform names a foreign interval");
        st.lo = nlo;
        st.hi = nhi;
      }
      return;
    case K::Pim:
    case K::Tail:
      if (!inbox.empty()) {
        if (st.is_leader) bad("leader pulsed during sequential matching");
        if (inbox.size() != 1) bad("several sequential-match responses");
        if (inbox[0] != node) bad("response crossed ranks");
        act.output(node);
      }
      return;
    case K::Respond:
      if (!inbox.empty()) {
        if (inbox.size() != 1) bad("several terminal responses");
        if (inbox[0] != node) bad("terminal response crossed ranks");
        act.output(node);
      }
      return;
    default:
      return;
  }
}

void IntervalMachine::act_cur(Side side, int node, const Kt1Slot& cur,
                              NodeActions& act) {
  using K = Kt1Slot::Kind;
  NodeSt& st = (side == Side::Left ? left_ : right_)[node];
  const int m = st.hi - st.lo;
  const Kt1Segment& seg = schedule_.segments()[cur.segment];

  if (side == Side::Left) {
    switch (cur.kind) {
      case K::Coord:
        if (m < 1 || node < st.lo || node >= st.hi) bad("span lost its node");
        act.pulse(st.lo);
        if (m == 1) act.output(st.lo);
        return;
      case K::PartA: {
        if (!st.recruited) return;
        IcWidths wd = ic_widths(m);
        if (st.code >= wd.s) bad("helper code out of range");
        for (long long rho = wd.s; rho < m; rho += wd.s) {
          if ((rho >> st.code) & 1) act.pulse(st.lo + static_cast<int>(rho));
        }
        return;
      }
      case K::Inform: {
        if (!st.is_leader) return;
        IcWidths wd = ic_widths(m);
        int j = st.rank / wd.s;
        int end = st.lo + static_cast<int>(std::min<long long>(
                              static_cast<long long>(j + 1) * wd.s, m));
        for (int t = st.lo + j * wd.s; t < end; ++t) act.pulse(t);
        act.output(st.lo + st.rank);
        return;
      }
      case K::Respond:
        if (st.code >= m) bad("terminal code out of range");
        st.rank = st.code;
        if (node != st.lo + st.rank) bad("terminal code crossed ranks");
        act.pulse(st.lo + st.rank);
        act.output(st.lo + st.rank);
        return;
      default:
        return;
    }
  }

  switch (cur.kind) {
    case K::Recruit:
      if (st.coordinator) {
        int s = ic_widths(m).s;
        for (int j = 0; j < s; ++j) act.pulse(st.lo + j);
      }
      return;
    case K::Bit:
      if (st.coordinator) {
        IcWidths wd = ic_widths(m);
        if (cur.k < wd.w) {
          for (int j = 0; j < wd.s; ++j) {
            if ((j >> (wd.w - 1 - cur.k)) & 1) act.pulse(st.lo + j);
          }
        }
      }
      return;
    case K::PartB:
      if (st.coordinator) {
        st.rank = 0;
        st.is_leader = true;
        act.pulse(st.lo);
      }
      return;
    case K::Inform: {
      if (!st.is_leader) return;
      IcWidths wd = ic_widths(m);
      int j = st.rank / wd.s;
      int begin = st.lo + j * wd.s;
      int end = st.lo + static_cast<int>(std::min<long long>(
                            static_cast<long long>(j + 1) * wd.s, m));
      for (int t = begin; t < end; ++t) act.pulse(t);
      if (!seg.pim || end - begin == 1) act.output(st.lo + st.rank);
      return;
    }
    case K::Pim:
      if (st.is_leader) {
        IcWidths wd = ic_widths(m);
        int len = static_cast<int>(std::min<long long>(
                      static_cast<long long>(st.rank) + wd.s, m)) -
                  st.rank;
        if (cur.k < len) act.pulse(st.lo + st.rank + cur.k);
        if (cur.k == len - 1) act.output(st.lo + st.rank);
      }
      return;
    case K::TermBit:
      if (st.coordinator) {
        int wm = ceil_log2(m);
        if (cur.k < wm) {
          for (int j = 0; j < m; ++j) {
            if ((j >> (wm - 1 - cur.k)) & 1) act.pulse(st.lo + j);
          }
        }
      }
      return;
    default:
      return;
  }
}

RunResult fast_interval_matching(const NetworkSpec& spec,
                                 const RunOptions& options) {
  Network net = build_network(spec);
  IntervalMachine algo(flat_schedule(net.n()));
  return run(net, algo, options);
}

}  // namespace pulsematch

#include "pulsematch/kt1_recursive.hpp"

#include <stdexcept>

namespace pulsematch {

std::vector<long long> recursion_size_bounds(long long n) {
  if (n < 1) throw std::invalid_argument("recursion requires n >= 1");
  std::vector<long long> bounds{n};
  while (bounds.back() > 4) {
    bounds.push_back(ceil_log2(bounds.back()));
  }
  return bounds;
}

Kt1Schedule recursive_schedule(long long n) {
  std::vector<long long> bounds = recursion_size_bounds(n);
  std::vector<Kt1Segment> segs;
  int next_round = 1;
  for (size_t d = 0; d + 1 < bounds.size(); ++d) {
    segs.push_back(make_interval_segment(bounds[d], next_round, false));
    next_round += segs.back().rounds;
  }
  segs.push_back(make_terminal_segment(bounds.back(), next_round));
  return Kt1Schedule(std::move(segs));
}

RunResult recursive_interval_matching(const NetworkSpec& spec,
                                      const RunOptions& options) {
  Network net = build_network(spec);
  IntervalMachine algo(recursive_schedule(net.n()));
  return run(net, algo, options);
}

}  // namespace pulsematch

#pragma once

#include <vector>

#include "pulsematch/kt1_interval.hpp"

namespace pulsematch {

// Span-size bounds per recursion depth: N_0 = n, N_{d+1} = ceil_log2(N_d),
// ending at the first bound <= 4.
std::vector<long long> recursion_size_bounds(long long n);

// One interval segment per recursion depth (no per-interval matching),
// then a terminal segment for the final bound. After each interval
// segment every surviving span has size at most ceil_log2 of the previous
// bound, so the next segment's slot budget fits the whole network.
Kt1Schedule recursive_schedule(long long n);

// Runs the recursive schedule on a fresh network.
RunResult recursive_interval_matching(const NetworkSpec& spec,
                                      const RunOptions& options = {});

}  // namespace pulsematch

#pragma once

#include <vector>

#include "fogsched/types.hpp"

namespace fogsched {

struct MatchResult {
    std::vector<int> wd_to_fog; // -1 when unmatched
    double value = 0.0;         // sum of selected weights
};

// Exact max-weight capacitated bipartite matching: every WD degree <= 1,
// every fog degree <= fog_cap, maximize the sum of selected weights. Edges
// with non-positive weight are never selected; matching nothing is allowed.
// Solved as min-cost flow by successive shortest augmenting paths with
// Johnson potentials; deterministic for fixed input.
MatchResult solve_b_matching(const Mat& weights, int fog_cap);

} // namespace fogsched

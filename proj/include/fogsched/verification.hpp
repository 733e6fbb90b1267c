#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fogsched/config.hpp"
#include "fogsched/rng.hpp"
#include "fogsched/types.hpp"

namespace fogsched {

// Cross-checks of the closed-form solutions against the brute-force oracles.
// Shared by the CLI `verify` command and the acceptance suite.

struct CheckResult {
    bool pass = true;
    double worst = 0.0; // worst relative violation seen
    std::string detail;
};

// Random but reproducible slot state with queues in the interesting range.
SlotState make_random_state(const NetworkConfig& cfg, Rng& rng);

// sp1/sp3 and the per-link power closed forms never lose to grid search by
// more than rel_tol of the respective objective.
CheckResult verify_closed_forms(const NetworkConfig& cfg, std::uint64_t seed, int num_states,
                                int grid_points, double rel_tol);

// matching value equals exhaustive enumeration on random small instances
CheckResult verify_matching(std::uint64_t seed, int num_instances);

// LP relaxation of the assignment attains the binary optimum (integrality)
CheckResult verify_integrality(std::uint64_t seed, int num_instances);

// schedule_slot's objective <= brute force + rel_tol on tiny instances
CheckResult verify_whole_slot(std::uint64_t seed, int num_instances, double rel_tol);

} // namespace fogsched

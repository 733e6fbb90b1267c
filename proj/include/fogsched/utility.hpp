#pragma once

#include "fogsched/config.hpp"

namespace fogsched {

// Concave, increasing throughput utility U(x) for x in bits.
double utility(UtilityKind kind, double alpha, double x);
double utility_prime(UtilityKind kind, double alpha, double x);

// (U')^{-1}(y), clamped below at 0; returns +inf at y = 0. Throws
// std::invalid_argument for NaN or infinite y.
double utility_prime_inverse(UtilityKind kind, double alpha, double y);

inline double utility(const NetworkConfig& cfg, double x) {
    return utility(cfg.utility_kind, cfg.alpha_fair, x);
}
inline double utility_prime_inverse(const NetworkConfig& cfg, double y) {
    return utility_prime_inverse(cfg.utility_kind, cfg.alpha_fair, y);
}

} // namespace fogsched

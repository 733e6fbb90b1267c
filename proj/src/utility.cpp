#include "fogsched/utility.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fogsched {

double utility(UtilityKind kind, double alpha, double x) {
    if (kind == UtilityKind::Log1p) return std::log1p(x);
    return std::pow(x, 1.0 - alpha) / (1.0 - alpha);
}

double utility_prime(UtilityKind kind, double alpha, double x) {
    if (kind == UtilityKind::Log1p) return 1.0 / (1.0 + x);
    return std::pow(x, -alpha);
}

double utility_prime_inverse(UtilityKind kind, double alpha, double y) {
    if (std::isnan(y) || std::isinf(y))
        throw std::invalid_argument("utility_prime_inverse: y must be finite");
    if (y < 0.0) throw std::invalid_argument("utility_prime_inverse: y must be >= 0");
    if (y == 0.0) return std::numeric_limits<double>::infinity();
    double x;
    if (kind == UtilityKind::Log1p) {
        x = 1.0 / y - 1.0;
    } else {
        x = std::pow(y, -1.0 / alpha);
    }
    return x > 0.0 ? x : 0.0;
}

} // namespace fogsched

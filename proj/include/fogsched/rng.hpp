#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace fogsched {

// splitmix64; used to derive independent per-concern stream seeds from one
// experiment seed.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return mix_seed(base + 0x9e3779b97f4a7c15ull * (stream + 1));
}

// mt19937_64 with hand-rolled variate mappings so that output streams do not
// depend on the standard library's distribution implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // [0, 1)
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // unit-mean exponential, strictly positive
    double exp_mean1() {
        const double u = uniform01();        // [0,1)
        const double x = -std::log1p(-u);    // [0,inf)
        return x > 0.0 ? x : std::numeric_limits<double>::min();
    }

    std::uint64_t raw() { return gen_(); }

    // integer in [0, n)
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(uniform01() * static_cast<double>(n)) % n;
    }

  private:
    std::mt19937_64 gen_;
};

} // namespace fogsched

#pragma once

#include <cstdint>
#include <cmath>

namespace qkin {

/// Counter-based generator: the n-th draw for a given seed is a pure
/// function of (seed, n), so parallel blocks can reproduce any stream
/// slice without shared state. splitmix64 finalizer.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0)
        : seed_(seed), ctr_(counter) {}

    std::uint64_t next_u64() { return mix(seed_, ctr_++); }

    /// uniform in [0,1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    static std::uint64_t mix(std::uint64_t seed, std::uint64_t n) {
        std::uint64_t z = seed + (n + 1) * 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t seed_;
    std::uint64_t ctr_;
};

/// Uniform point on the unit sphere via inverse CDF: cos(theta) uniform
/// in [-1,1], azimuth uniform in [0,2pi).
struct UnitVec3 { double x, y, z; };

inline UnitVec3 sample_sphere(CounterRng& rng)
{
    const double c = 2.0 * rng.next_double() - 1.0;    // cos(theta)
    const double s = std::sqrt(std::fmax(0.0, 1.0 - c * c));
    const double a = 6.283185307179586476925286766559 * rng.next_double();
    return {s * std::cos(a), s * std::sin(a), c};
}

} // namespace qkin

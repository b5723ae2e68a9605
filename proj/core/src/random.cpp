#include "rfswarm/random.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <numbers>

namespace rfswarm {

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t run_seed, std::uint64_t robot,
                          StreamPurpose purpose) noexcept {
    std::uint64_t s = mix64(run_seed ^ 0x5ca1ab1e0ddba11ULL);
    s = mix64(s ^ (robot * 0xd1b54a32d192ed03ULL));
    s = mix64(s ^ (static_cast<std::uint64_t>(purpose) * 0x8cb92ba72f3d8dd7ULL));
    return s;
}

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_index(std::uint64_t n) {
    // Reject the top partial block to remove modulo bias.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
}

double Rng::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_normal_ = radius * std::sin(angle);
    has_cached_normal_ = true;
    return radius * std::cos(angle);
}

std::uint64_t Rng::poisson(double mean) {
    if (!(mean > 0.0)) return 0;
    std::uint64_t total = 0;
    double remaining = mean;
    while (remaining > 0.0) {
        const double chunk = std::min(remaining, 30.0);
        remaining -= chunk;
        const double floor_value = std::exp(-chunk);
        double product = uniform();
        std::uint64_t count = 0;
        while (product > floor_value) {
            ++count;
            product *= uniform();
        }
        total += count;
    }
    return total;
}

}  // namespace rfswarm

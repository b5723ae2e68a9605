#pragma once

#include <cstdint>
#include <random>

namespace rfswarm {

/// Purpose tags for substream derivation. Values are part of the
/// reproducibility contract; do not renumber.
enum class StreamPurpose : std::uint64_t {
    placement = 1,
    motion = 2,
    sensing = 3,
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Derives an independent substream seed from the run seed.
///
/// seed = mix64(mix64(mix64(run_seed ^ C1) ^ robot * C2) ^ purpose * C3).
/// Every random draw in a run comes from one of these substreams, so the
/// whole run is a function of the single 64-bit run seed.
std::uint64_t derive_seed(std::uint64_t run_seed, std::uint64_t robot,
                          StreamPurpose purpose) noexcept;

/// Seeded random source. Samplers are written out explicitly rather than
/// delegated to <random> distributions, whose output is implementation
/// defined, so logs are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t uniform_index(std::uint64_t n);

    /// Standard normal (Box-Muller, one draw per call pair cached).
    double normal();

    /// Poisson(mean) by the multiplicative method; large means are split
    /// into chunks of at most 30 and summed, which keeps the draw exact.
    std::uint64_t poisson(double mean);

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace rfswarm

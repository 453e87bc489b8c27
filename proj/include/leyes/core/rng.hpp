#pragma once

#include <cstdint>

namespace leyes::core {

/// Counter-seeded generator used everywhere randomness is needed.
///
/// The state update is splitmix64, which gives every 64-bit seed an
/// independent, full-period stream. All distribution transforms are
/// implemented here by inversion or Box-Muller so that draws are
/// bit-reproducible across platforms and standard library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();

    /// Uniform double in [0, 1).
    double uniform();
    double uniform(double lo, double hi);
    /// Uniform on a log scale; lo and hi must be positive.
    double log_uniform(double lo, double hi);
    double normal(double mean, double stddev);
    /// Exponential with the given scale, shifted by offset (draws >= offset).
    double exponential(double scale, double offset = 0.0);
    double weibull(double scale, double shape, double offset = 0.0);
    /// Inclusive integer range.
    int uniform_int(int lo, int hi);
    bool bernoulli(double p);

    /// Derives the per-sample seed for sample `index` under `master_seed`.
    /// Pure mixing function, so any sample can be reached in O(1).
    static std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

private:
    std::uint64_t state_;
};

} // namespace leyes::core

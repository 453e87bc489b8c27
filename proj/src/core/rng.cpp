#include "leyes/core/rng.hpp"

#include <cmath>
#include <numbers>

namespace leyes::core {

namespace {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

std::uint64_t Rng::next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
}

double Rng::uniform() {
    // 53 random bits -> [0, 1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double Rng::log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
}

double Rng::normal(double mean, double stddev) {
    // Box-Muller, one variate per pair of uniforms; no cached spare so the
    // draw count per call is fixed.
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    return mean + stddev * z;
}

double Rng::exponential(double scale, double offset) {
    double u = 1.0 - uniform();
    return offset - scale * std::log(u);
}

double Rng::weibull(double scale, double shape, double offset) {
    double u = 1.0 - uniform();
    return offset + scale * std::pow(-std::log(u), 1.0 / shape);
}

int Rng::uniform_int(int lo, int hi) {
    // Range is small in practice; modulo bias over 2^64 is negligible but we
    // use rejection anyway to keep draws exact.
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    std::uint64_t limit = ~0ULL - (~0ULL % span + 1) % span;
    std::uint64_t v;
    do {
        v = next_u64();
    } while (v > limit);
    return lo + static_cast<int>(v % span);
}

bool Rng::bernoulli(double p) {
    return uniform() < p;
}

std::uint64_t Rng::derive_seed(std::uint64_t master_seed, std::uint64_t index) {
    return mix64(master_seed + 0x9e3779b97f4a7c15ULL * (index + 1));
}

} // namespace leyes::core

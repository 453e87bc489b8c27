#pragma once

#include <string>

#include "leyes/core/rng.hpp"

namespace leyes::scenario {

/// Scalar parameter distribution used throughout the scenario presets.
/// Units (pixels vs 8-bit intensity) follow from context.
struct Distribution {
    enum class Kind { Constant, Uniform, LogUniform, Normal, Exponential, Weibull };

    Kind kind = Kind::Constant;
    // Parameter meaning by kind:
    //   Constant:    p0 = value
    //   Uniform:     p0 = lo, p1 = hi
    //   LogUniform:  p0 = lo, p1 = hi
    //   Normal:      p0 = mean, p1 = std
    //   Exponential: p0 = scale, p2 = offset
    //   Weibull:     p0 = scale, p1 = shape, p2 = offset
    double p0 = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;

    double sample(core::Rng& rng) const;
    /// Theoretical mean (used by test oracles for unbounded kinds).
    double mean() const;
    void validate() const;

    static Distribution constant(double v) { return {Kind::Constant, v, 0, 0}; }
    static Distribution uniform(double lo, double hi) { return {Kind::Uniform, lo, hi, 0}; }
    static Distribution log_uniform(double lo, double hi) { return {Kind::LogUniform, lo, hi, 0}; }
    static Distribution normal(double mean, double std) { return {Kind::Normal, mean, std, 0}; }
    static Distribution exponential(double scale, double offset) {
        return {Kind::Exponential, scale, 0, offset};
    }
    static Distribution weibull(double scale, double shape, double offset) {
        return {Kind::Weibull, scale, shape, offset};
    }
};

std::string to_string(Distribution::Kind kind);
Distribution::Kind kind_from_string(const std::string& s);

} // namespace leyes::scenario

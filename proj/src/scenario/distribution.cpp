#include "leyes/scenario/distribution.hpp"

#include <cmath>
#include <stdexcept>

namespace leyes::scenario {

double Distribution::sample(core::Rng& rng) const {
    switch (kind) {
        case Kind::Constant: return p0;
        case Kind::Uniform: return rng.uniform(p0, p1);
        case Kind::LogUniform: return rng.log_uniform(p0, p1);
        case Kind::Normal: return rng.normal(p0, p1);
        case Kind::Exponential: return rng.exponential(p0, p2);
        case Kind::Weibull: return rng.weibull(p0, p1, p2);
    }
    throw std::logic_error("Distribution: unknown kind");
}

double Distribution::mean() const {
    switch (kind) {
        case Kind::Constant: return p0;
        case Kind::Uniform:
        case Kind::LogUniform: return 0.5 * (p0 + p1);  // LogUniform: not exact, unused
        case Kind::Normal: return p0;
        case Kind::Exponential: return p0 + p2;
        case Kind::Weibull: return p2 + p0 * std::tgamma(1.0 + 1.0 / p1);
    }
    throw std::logic_error("Distribution: unknown kind");
}

void Distribution::validate() const {
    switch (kind) {
        case Kind::Constant: return;
        case Kind::Uniform:
        case Kind::LogUniform:
            if (p0 > p1) throw std::invalid_argument("Distribution: lo > hi");
            if (kind == Kind::LogUniform && p0 <= 0.0)
                throw std::invalid_argument("Distribution: log-uniform needs positive bounds");
            return;
        case Kind::Normal:
            if (p1 < 0.0) throw std::invalid_argument("Distribution: negative std");
            return;
        case Kind::Exponential:
        case Kind::Weibull:
            if (p0 <= 0.0) throw std::invalid_argument("Distribution: non-positive scale");
            if (kind == Kind::Weibull && p1 <= 0.0)
                throw std::invalid_argument("Distribution: non-positive shape");
            return;
    }
    throw std::logic_error("Distribution: unknown kind");
}

std::string to_string(Distribution::Kind kind) {
    switch (kind) {
        case Distribution::Kind::Constant: return "constant";
        case Distribution::Kind::Uniform: return "uniform";
        case Distribution::Kind::LogUniform: return "log_uniform";
        case Distribution::Kind::Normal: return "normal";
        case Distribution::Kind::Exponential: return "exponential";
        case Distribution::Kind::Weibull: return "weibull";
    }
    return "constant";
}

Distribution::Kind kind_from_string(const std::string& s) {
    if (s == "constant") return Distribution::Kind::Constant;
    if (s == "uniform") return Distribution::Kind::Uniform;
    if (s == "log_uniform") return Distribution::Kind::LogUniform;
    if (s == "normal") return Distribution::Kind::Normal;
    if (s == "exponential") return Distribution::Kind::Exponential;
    if (s == "weibull") return Distribution::Kind::Weibull;
    throw std::invalid_argument("unknown distribution kind: " + s);
}

} // namespace leyes::scenario

#pragma once

#include <cstdint>
#include <vector>

namespace leyes::gaze {

/// Uniformly typed sample sequence for pupil, CR, P-CR, or gaze positions.
struct Signal {
    std::vector<double> timestamps_ms;  ///< strictly increasing
    std::vector<double> x;
    std::vector<double> y;
    std::vector<std::uint8_t> valid;
    double rate_hz = 0.0;

    std::size_t size() const { return timestamps_ms.size(); }
    void validate() const;  ///< throws std::invalid_argument on inconsistency
};

/// Evenly spaced timestamps from a sample rate; all samples valid.
Signal make_signal(double rate_hz, const std::vector<double>& x, const std::vector<double>& y);

/// Pointwise pupil - cr. A sample is invalid if either input sample is.
/// Throws std::invalid_argument on misaligned timestamps.
Signal pcr_vector(const Signal& pupil, const Signal& cr);

/// Per-sample affine map (scale then offset), e.g. pixels to degrees.
Signal scale_signal(const Signal& sig, double scale, double offset_x = 0.0,
                    double offset_y = 0.0);

} // namespace leyes::gaze

#pragma once

#include <string>
#include <vector>

#include "leyes/gaze/signal.hpp"

namespace leyes::gaze {

/// Per-window values plus their median (the per-trial statistic).
struct WindowedMetric {
    std::vector<double> per_window;
    double median = 0.0;
};

/// RMS of sample-to-sample displacements in a sliding window (step one
/// sample). Window length in samples = round(window_ms * rate / 1000),
/// at least 2. Windows containing invalid samples are skipped. Throws
/// std::invalid_argument when the window exceeds the signal.
WindowedMetric rms_s2s(const Signal& sig, double window_ms = 200.0);

/// sqrt(var(x) + var(y)) per window with population variance; same window
/// and skipping rules as rms_s2s.
WindowedMetric std_precision(const Signal& sig, double window_ms = 200.0);

struct FixationTarget {
    double x = 0.0;  ///< same units as the gaze signal
    double y = 0.0;
    double t_on_ms = 0.0;
    double t_off_ms = 0.0;
};

struct AccuracyReport {
    std::vector<double> per_target;  ///< Euclidean offsets
    double mean = 0.0;
};

/// Distance between the mean gaze over each fixation's analysis interval and
/// the target; the first skip_ms of every fixation are excluded to let the
/// landing settle. Throws std::invalid_argument when an interval has no
/// valid samples.
AccuracyReport accuracy(const Signal& gaze, const std::vector<FixationTarget>& targets,
                        double skip_ms = 300.0);

/// Session description: fixation targets plus the linear pixels-to-degrees
/// factor of the setup.
struct Session {
    std::vector<FixationTarget> targets;
    double deg_per_px = 1.0;
    double rate_hz = 0.0;  ///< 0 means take the rate from the signal
};

Session load_session(const std::string& path);

double median_of(std::vector<double> values);

} // namespace leyes::gaze

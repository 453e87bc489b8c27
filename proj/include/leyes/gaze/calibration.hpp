#pragma once

#include <array>
#include <string>
#include <vector>

#include "leyes/gaze/signal.hpp"

namespace leyes::gaze {

/// Second-order polynomial map with first-order interaction:
/// basis [1, u, v, u^2, v^2, u*v], one coefficient set per output axis.
struct CalibrationModel {
    std::array<double, 6> coeff_x{};
    std::array<double, 6> coeff_y{};
};

std::array<double, 6> calibration_basis(double u, double v);

/// Least-squares fit of the 6-term basis per output coordinate. Throws
/// std::invalid_argument when fewer than 6 points are given or the design
/// matrix is rank deficient.
CalibrationModel fit_calibration(const std::vector<std::pair<double, double>>& pcr,
                                 const std::vector<std::pair<double, double>>& targets);

std::pair<double, double> apply_calibration(const CalibrationModel& model, double u, double v);

/// Per-sample polynomial evaluation; validity flags carry over.
Signal apply_calibration(const CalibrationModel& model, const Signal& pcr);

void write_model(const CalibrationModel& model, const std::string& path);
CalibrationModel read_model(const std::string& path);

} // namespace leyes::gaze

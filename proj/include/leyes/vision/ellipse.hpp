#pragma once

#include <utility>
#include <vector>

namespace leyes::vision {

struct EllipseParams {
    double center_x = 0.0;
    double center_y = 0.0;
    double semi_major = 0.0;  ///< >= semi_minor > 0
    double semi_minor = 0.0;
    double theta = 0.0;  ///< major-axis angle, radians, normalized to [0, pi)
};

/// Sample count points on the ellipse boundary at uniform parameter angles
/// (starting at the major axis). Screen convention: positive theta rotates
/// toward +y (down).
std::vector<std::pair<double, double>> sample_ellipse(const EllipseParams& params, int count);

/// Direct least-squares conic fit constrained to ellipses (algebraic, one
/// eigenproblem, no iteration); exact on noise-free ellipse samples. Throws
/// std::invalid_argument for fewer than 6 points or degenerate (e.g.
/// collinear) input.
EllipseParams fit_ellipse(const std::vector<std::pair<double, double>>& points);

} // namespace leyes::vision

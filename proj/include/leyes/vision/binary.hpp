#pragma once

#include <optional>
#include <vector>

#include "leyes/core/image.hpp"

namespace leyes::vision {

enum class BinarizeMode { DarkBelow, BrightAbove };

struct Rect {
    int x = 0, y = 0, width = 0, height = 0;
};

struct BlobStats {
    double area = 0.0;       ///< pixels
    double centroid_x = 0.0;
    double centroid_y = 0.0;
    double perimeter = 0.0;  ///< traced contour length, diagonal steps sqrt(2)
    double circularity = 0.0;  ///< 4*pi*area / perimeter^2
    Rect bbox;
    std::vector<std::pair<int, int>> pixels;    ///< (row, col)
    std::vector<std::pair<int, int>> boundary;  ///< traced outer contour (row, col)
};

struct SelectionCriteria {
    double min_area = 0.0;
    double max_area = 1e18;
    double min_circularity = 0.0;
};

/// DarkBelow marks pixels strictly below the threshold (pupil), BrightAbove
/// marks pixels at or above it (CR). Threshold in [0, 1].
core::BinaryImage binarize(const core::GrayImage& img, double threshold, BinarizeMode mode);

/// Fill interior holes (4-connected background not reaching the border) and
/// remove speckle with one 3x3-cross opening.
core::BinaryImage morph_cleanup(const core::BinaryImage& binary);

/// Only hole filling, no opening; the outer boundary is untouched.
core::BinaryImage fill_holes(const core::BinaryImage& binary);

/// 8-connected foreground components with stats.
std::vector<BlobStats> connected_components(const core::BinaryImage& binary);

/// Largest component satisfying the size and circularity criteria, or
/// nullopt.
std::optional<BlobStats> select_feature_blob(const core::BinaryImage& binary,
                                             const SelectionCriteria& criteria);

/// Intensity-weighted centroid of the whole image (column, row); equations
/// reduce to the binary centroid for 0/1 input. Throws on zero total mass.
std::pair<double, double> center_of_mass(const core::FloatImage& img);
std::pair<double, double> center_of_mass(const core::BinaryImage& mask);

} // namespace leyes::vision

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leyes/core/image.hpp"
#include "leyes/stream/stream.hpp"

namespace leyes::pcr {

/// External pupil detector output driving the adaptive crop.
struct DetectorReport {
    double x = 0.0;
    double y = 0.0;
    double confidence = 0.0;  ///< in [0, 1]
};

/// Per-feature logit maps: pupil first, then CRs in illuminator order.
struct FeatureMapSet {
    core::FloatImage pupil_map;
    std::vector<core::FloatImage> cr_maps;
    int crop_x = 0;  ///< origin of the crop the maps were computed on
    int crop_y = 0;
};

struct SelectedCr {
    int index = -1;  ///< illuminator index (position in cr_maps)
    double x = 0.0;  ///< full-image coordinates
    double y = 0.0;
    double peak = 0.0;
};

struct PcrResult {
    bool valid = false;
    double pupil_x = 0.0;
    double pupil_y = 0.0;
    SelectedCr first;   ///< highest peak
    SelectedCr second;  ///< second highest
};

struct Peak {
    double value = 0.0;
    int x = 0;
    int y = 0;
};

/// Crop origin for a crop_size square: centered on the detector estimate when
/// confidence >= threshold, on the image center otherwise; always clamped
/// inside the image. Throws std::invalid_argument when the crop exceeds the
/// image.
std::pair<int, int> decide_crop(const DetectorReport& report, double confidence_threshold,
                                int image_width, int image_height, int crop_size = 128);

/// Maximum logit and its pixel position; ties go to the smallest row-major
/// index.
Peak peak_of_map(const core::FloatImage& map);

/// The two CR maps with the highest peaks; invalid unless at least two peaks
/// reach 1. Equal peaks are broken by lower CR index. Centers are translated
/// by the crop origin.
PcrResult select_best_two_crs(const FeatureMapSet& maps);

/// Test oracle standing in for a trained model: present features get a
/// Gaussian bump of height peak_scale at their labeled centers, absent ones
/// a zero map.
FeatureMapSet synthesize_oracle_maps(const stream::LabelSet& labels, int width, int height,
                                     double peak_scale, double sigma = 2.0);

/// LEYESMAPS container: text header "LEYESMAPS 1 <w> <h> <k+1>\n" followed by
/// k+1 row-major float32 little-endian maps (pupil first).
void write_maps(const FeatureMapSet& maps, const std::string& path);
FeatureMapSet read_maps(const std::string& path);

} // namespace leyes::pcr

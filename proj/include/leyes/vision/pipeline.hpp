#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leyes/core/image.hpp"
#include "leyes/vision/binary.hpp"
#include "leyes/vision/ellipse.hpp"

namespace leyes::vision {

/// Manually set fixed thresholds and shape/size gates for the classical
/// analysis. Size bounds of 0 fall back to fractions of the image area
/// (pupil: [16 px, 60%], CR: [4 px, 5%]).
struct ThresholdConfig {
    double pupil_threshold = 0.25;  ///< dark-below, in [0, 1]
    double cr_threshold = 0.85;     ///< bright-above, in [0, 1]
    Rect roi;                       ///< zero-sized means the full image
    double min_area = 0.0;
    double max_area = 0.0;
    double circularity_min = 0.6;

    void validate() const;  ///< throws std::invalid_argument on bad values
};

struct FeatureEstimate {
    double x = 0.0;  ///< full-image coordinates
    double y = 0.0;
    double confidence = 0.0;  ///< blob circularity clamped to [0, 1]
};

/// Classical pupil detection: dark binarize -> morphological cleanup ->
/// blob selection -> center of mass. nullopt when no blob qualifies.
std::optional<FeatureEstimate> detect_pupil(const core::GrayImage& img,
                                            const ThresholdConfig& cfg);

/// Same chain with the bright threshold and CR-sized bounds.
std::optional<FeatureEstimate> detect_cr(const core::GrayImage& img, const ThresholdConfig& cfg);

struct PupilPostResult {
    double x = 0.0;  ///< full-image coordinates (crop origin added)
    double y = 0.0;
    EllipseParams ellipse;  ///< fit to the blob boundary, full-image coords
    bool redo = false;      ///< recrop recommended, centered on (x, y)
};

/// Segmentation-mask postprocessing: binarize the probability map at 0.99,
/// clean up, select the feature blob, take its center of mass and fit an
/// ellipse to its boundary. redo is set when the center of mass lies closer
/// to a crop edge than the fitted semi-major axis. Throws std::runtime_error
/// when no blob survives.
PupilPostResult postprocess_unet_mask(const core::FloatImage& prob_map, int crop_x, int crop_y);

struct FrameAnalysis {
    std::uint64_t frame_index = 0;
    std::string file;
    bool pupil_valid = false;
    double pupil_x = 0.0, pupil_y = 0.0;
    bool cr_valid = false;
    double cr_x = 0.0, cr_y = 0.0;
};

/// Analyze every PNG in a directory (sorted by file name). Unreadable or
/// corrupt frames come back with both features invalid; the run continues.
std::vector<FrameAnalysis> analyze_frames(const std::string& frames_dir,
                                          const ThresholdConfig& cfg);

/// CSV with header frame_index,pupil_x,pupil_y,cr_x,cr_y,valid_flags where
/// valid_flags is a bitmask (1 = pupil, 2 = CR).
void write_analysis_csv(const std::vector<FrameAnalysis>& frames, const std::string& path);
std::vector<FrameAnalysis> read_analysis_csv(const std::string& path);

} // namespace leyes::vision

#pragma once

#include <variant>
#include <vector>

#include "leyes/core/image.hpp"
#include "leyes/core/rng.hpp"
#include "leyes/render/gaussian.hpp"

namespace leyes::scenario {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Line through `point` with unit normal `normal`; the positive half-plane is
/// where dot(p - point, normal) >= 0.
struct Line {
    Point point;
    Point normal;
};

struct UniformBackground {
    double luminance = 0.0;
};

/// Dark region on the positive side of the line, grey on the other.
struct SplitBackground {
    Line line;
    double dark_luminance = 0.0;
    double grey_luminance = 0.0;
};

/// Luminance interpolated linearly between lum_a and lum_b along the
/// projection of the pixel position onto the unit axis.
struct GradientBackground {
    double lum_a = 0.0;
    double lum_b = 0.0;
    Point axis;
};

struct IrisSpec {
    Point center;
    double alpha = 1.0;  ///< minor semi-axis, pixels
    double beta = 1.0;   ///< major semi-axis, pixels
    double theta = 0.0;
    double luminance = 0.0;
    double edge_width = 0.0;  ///< raised-cosine transition span, pixels
};

struct CollaretteSpec {
    int n_vertices = 13;
    Point center;
    double mean_radius = 1.0;
    double jitter_fraction = 0.0;  ///< per-vertex radial jitter, fraction of mean_radius
    double luminance = 0.0;
    double edge_width = 0.0;
    std::vector<Point> polygon;  ///< closed loop, 5x the vertex count after spline upsampling
};

struct LayeredEyeBackground {
    double sclera_luminance = 0.0;
    IrisSpec iris;
    CollaretteSpec collarette;
};

using Background =
    std::variant<UniformBackground, SplitBackground, GradientBackground, LayeredEyeBackground>;

enum class BrightRole { Cr, Spurious };

struct BrightFeature {
    render::GaussianFeature feature;
    BrightRole role = BrightRole::Cr;
    int index = -1;       ///< illuminator index for CRs, -1 for spurious
    bool present = true;  ///< false for dropped CRs (not rendered)
};

struct CrTruth {
    int index = 0;
    double x = 0.0;
    double y = 0.0;
    bool present = true;
};

struct GroundTruth {
    bool has_pupil = false;
    double pupil_x = 0.0, pupil_y = 0.0;
    double pupil_alpha = 0.0, pupil_beta = 0.0, pupil_theta = 0.0;
    std::vector<CrTruth> crs;
};

/// Full description from which an image renders deterministically.
struct Scene {
    int width = 0;
    int height = 0;
    Background background;
    std::vector<render::GaussianFeature> dark_features;
    std::vector<BrightFeature> bright_features;  ///< order: CRs by index, then spurious
    double noise_sigma = 0.0;
    GroundTruth truth;
};

core::FloatImage render_background(const Scene& scene);

/// Background + dark + bright compositing, before noise and quantization.
core::FloatImage render_scene_pre_noise(const Scene& scene);

core::GrayImage render_scene(const Scene& scene, core::Rng& rng);

/// Pupil plateau mask: pixels whose unclamped pupil Gaussian is >= 1, which
/// is the amplitude-independent ellipse set. Empty mask when no pupil.
core::BinaryImage pupil_plateau_mask(const Scene& scene);

} // namespace leyes::scenario

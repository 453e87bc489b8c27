#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "leyes/scenario/config.hpp"
#include "leyes/scenario/scene.hpp"

namespace leyes::scenario {

struct PlacementExhausted : std::runtime_error {
    PlacementExhausted() : std::runtime_error("CR placement exhausted resampling budget") {}
};

/// Illuminator polygon for the rig presets.
struct PolygonLayout {
    LayoutShape shape = LayoutShape::None;
    double rotation_deg = 0.0;
    Point anchor;
    double crop_side = 128.0;
    /// House: topmost vertex first, then clockwise (5 vertices).
    /// Ring: bottom-right vertex first, then clockwise (8 vertices).
    std::vector<Point> vertices;
};

/// Deterministic constructions (the sampled layouts are built on these).
std::vector<Point> make_house_vertices(double base_width, double rect_height, double roof_height,
                                       double rotation_deg, Point anchor);
std::vector<Point> make_ring_vertices(double radius, int n, double rotation_deg, Point anchor);

PolygonLayout sample_house_layout(const ScenarioConfig& cfg, Point anchor, core::Rng& rng);
PolygonLayout sample_ring_layout(const ScenarioConfig& cfg, Point anchor, core::Rng& rng);

/// Enforce the pairwise center-distance rule
///   dist(i, j) >= factor * (beta_i + beta_j)
/// by resampling violators at new positions. Throws PlacementExhausted after
/// `max_attempts` resamples.
void place_nonoverlapping(std::vector<render::GaussianFeature>& features, double factor,
                          const std::function<Point(core::Rng&)>& sample_position, core::Rng& rng,
                          int max_attempts = 1000);

/// Rejection sampler: positions uniform over the canvas, accepted with
/// probability 1 - clamp(G_pupil, 0, 1), so spurious reflections never land
/// on the pupil plateau.
std::vector<Point> sample_spurious_positions(const render::GaussianFeature& pupil, int count,
                                             int width, int height, core::Rng& rng);

/// Collarette polygon: jittered radii on a uniform angle grid, closed by a
/// periodic cubic spline in polar form and resampled at 5x the vertex count.
CollaretteSpec build_collarette(const IrisSpec& iris, const ScenarioConfig& cfg, core::Rng& rng);

/// Periodic cubic spline through `values` on a uniform cyclic grid, evaluated
/// at `upsample` points per interval.
std::vector<double> periodic_spline_resample(const std::vector<double>& values, int upsample);

Scene sample_cr_scene(const ScenarioConfig& cfg, core::Rng& rng);
Scene sample_pupil_scene(const ScenarioConfig& cfg, core::Rng& rng);
Scene sample_full_eye_scene(const ScenarioConfig& cfg, core::Rng& rng);
Scene sample_polygon_scene(const ScenarioConfig& cfg, core::Rng& rng);

/// Dispatch on the preset's scene family.
Scene sample_scene(const ScenarioConfig& cfg, core::Rng& rng);

} // namespace leyes::scenario

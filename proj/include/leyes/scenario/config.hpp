#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leyes/scenario/distribution.hpp"

namespace leyes::scenario {

/// Which scene construction a preset uses.
enum class SceneFamily {
    CrOnLine,        ///< single circular CR on a split-line background
    PupilOnUniform,  ///< pupil + 1..n CRs on a uniform grey field
    FullEye,         ///< sclera, iris, collarette, pupil, CRs
    PolygonRig,      ///< pupil + CRs on an illuminator polygon, gradient background
};

enum class LayoutShape { None, House, Ring };

/// Parameter ranges for one Gaussian feature family.
struct FeatureRanges {
    Distribution alpha;       ///< minor-axis plateau radius, pixels
    Distribution beta_ratio;  ///< beta = ratio * alpha
    Distribution amplitude;
    Distribution luminance;   ///< plateau intensity, 8-bit units
};

/// Stage-2 curriculum overrides; unset fields leave stage-1 values in place.
struct StageOverride {
    std::optional<double> center_span;       ///< pixels, feature center around image center
    std::optional<int> cr_count;             ///< forced CR count
    std::optional<double> cr_dropout;
    std::optional<int> spurious_max;
    std::optional<double> rotation_max_deg;
};

struct ScenarioConfig {
    std::string id;
    SceneFamily family = SceneFamily::CrOnLine;
    int stage = 1;
    int width = 128;
    int height = 128;
    Distribution noise_sigma;

    FeatureRanges pupil;  ///< for CrOnLine presets this describes the CR itself
    FeatureRanges cr;
    int cr_count_min = 0;
    int cr_count_max = 0;
    double cr_separation_factor = 1.25;  ///< min center distance = factor * (beta_i + beta_j)

    // CrOnLine
    Distribution line_grey_luminance;
    Distribution line_dark_luminance;
    Distribution line_distance_factor;  ///< perpendicular distance in CR plateau radii

    // PupilOnUniform
    Distribution background_luminance;

    // PolygonRig
    Distribution gradient_luminance;  ///< two independent draws define the gradient
    LayoutShape layout_shape = LayoutShape::None;
    double crop_side = 128.0;  ///< d; layout ranges are expressed against it
    Distribution house_width;
    Distribution house_height_ratio;  ///< fraction of base width
    Distribution house_roof_ratio;
    Distribution ring_radius;
    double rotation_max_deg = 0.0;  ///< rotation drawn from +-[0, max]
    double anchor_jitter = 0.0;     ///< layout anchor offset from pupil center, pixels per axis
    double cr_dropout = 0.0;
    int spurious_min = 0;
    int spurious_max = 0;
    Distribution spurious_alpha;
    Distribution spurious_beta_ratio;
    Distribution spurious_amplitude;

    // FullEye
    Distribution sclera_luminance;
    Distribution iris_alpha;
    Distribution iris_beta_ratio;
    Distribution iris_luminance;
    Distribution iris_edge_width;
    int collarette_vertices_min = 13;
    int collarette_vertices_max = 24;
    Distribution collarette_radius_ratio;     ///< of iris beta
    Distribution collarette_jitter_ratio;     ///< of collarette mean radius
    Distribution collarette_luminance_ratio;  ///< of iris luminance
    Distribution collarette_edge_width;

    StageOverride stage2;
};

/// Known preset ids: cr_500, cr_1000, pupil_500, pupil_1000, eds2019, chugh, eds2020.
const std::vector<std::string>& scenario_ids();
bool is_known_scenario(const std::string& id);

/// Built-in stage-1 preset. Throws std::invalid_argument for unknown ids.
ScenarioConfig preset(const std::string& id);

/// Returns the preset with the stage's overrides applied. Stage 1 is the
/// identity; throws std::invalid_argument for stages outside {1, 2}.
ScenarioConfig apply_stage(ScenarioConfig cfg, int stage);

std::string config_to_json(const ScenarioConfig& cfg);
ScenarioConfig config_from_json(const std::string& text);

} // namespace leyes::scenario

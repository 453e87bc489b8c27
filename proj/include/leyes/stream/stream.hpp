#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leyes/core/image.hpp"
#include "leyes/scenario/config.hpp"
#include "leyes/scenario/scene.hpp"

namespace leyes::stream {

/// Exact labels attached to a generated image.
struct LabelSet {
    bool has_pupil = false;
    double pupil_x = 0.0, pupil_y = 0.0;
    double pupil_alpha = 0.0, pupil_beta = 0.0, pupil_theta = 0.0;
    std::vector<scenario::CrTruth> crs;
    core::BinaryImage pupil_mask;  ///< plateau set of the pupil Gaussian
    /// Optional training targets: pupil first, then CRs in illuminator
    /// order; absent features get all-zero maps.
    std::vector<core::FloatImage> heatmaps;
};

struct Sample {
    core::GrayImage image;
    LabelSet labels;
    std::uint64_t scene_seed = 0;
    std::string scenario_id;
    int stage = 1;
};

/// Unit-peak Gaussian bump per feature channel at the subpixel center;
/// dropped features yield all-zero maps.
std::vector<core::FloatImage> render_target_heatmaps(const scenario::Scene& scene,
                                                     double map_sigma);

/// Render one fully labeled sample from its scene seed.
Sample generate_sample(const scenario::ScenarioConfig& cfg, std::uint64_t scene_seed,
                       bool with_heatmaps = false, double heatmap_sigma = 1.0);

/// Unbounded deterministic sample source. Sample i derives its scene seed
/// from (master_seed, i) by a counter-mix rule, so the stream can be skipped
/// to any index in O(1) and partitioned across workers by index ranges.
class SampleStream {
public:
    SampleStream(std::string scenario_id, int stage, std::uint64_t master_seed,
                 bool with_heatmaps = false, double heatmap_sigma = 1.0);
    SampleStream(scenario::ScenarioConfig cfg, std::uint64_t master_seed,
                 bool with_heatmaps = false, double heatmap_sigma = 1.0);

    Sample at(std::uint64_t index) const;
    Sample next();
    std::vector<Sample> next_batch(std::size_t n);
    void skip_to(std::uint64_t index) { next_index_ = index; }

    std::uint64_t next_index() const { return next_index_; }
    std::uint64_t master_seed() const { return master_seed_; }
    const scenario::ScenarioConfig& config() const { return cfg_; }

private:
    scenario::ScenarioConfig cfg_;
    std::uint64_t master_seed_ = 0;
    std::uint64_t next_index_ = 0;
    bool with_heatmaps_ = false;
    double heatmap_sigma_ = 1.0;
};

} // namespace leyes::stream

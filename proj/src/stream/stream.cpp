#include "leyes/stream/stream.hpp"

#include <cmath>
#include <stdexcept>

#include "leyes/scenario/sample.hpp"

namespace leyes::stream {

std::vector<core::FloatImage> render_target_heatmaps(const scenario::Scene& scene,
                                                     double map_sigma) {
    if (map_sigma <= 0.0) throw std::invalid_argument("render_target_heatmaps: sigma <= 0");
    std::vector<core::FloatImage> maps;

    auto bump = [&](double cx, double cy) {
        core::FloatImage m(scene.width, scene.height, 0.0);
        double inv = 1.0 / (2.0 * map_sigma * map_sigma);
        for (int i = 0; i < scene.height; ++i) {
            double dy = i - cy;
            for (int j = 0; j < scene.width; ++j) {
                double dx = j - cx;
                m.at(i, j) = std::exp(-(dx * dx + dy * dy) * inv);
            }
        }
        return m;
    };

    if (scene.truth.has_pupil)
        maps.push_back(bump(scene.truth.pupil_x, scene.truth.pupil_y));
    else
        maps.emplace_back(scene.width, scene.height, 0.0);
    for (const auto& cr : scene.truth.crs) {
        if (cr.present)
            maps.push_back(bump(cr.x, cr.y));
        else
            maps.emplace_back(scene.width, scene.height, 0.0);
    }
    return maps;
}

Sample generate_sample(const scenario::ScenarioConfig& cfg, std::uint64_t scene_seed,
                       bool with_heatmaps, double heatmap_sigma) {
    core::Rng rng(scene_seed);
    scenario::Scene scene = scenario::sample_scene(cfg, rng);

    Sample s;
    s.image = scenario::render_scene(scene, rng);
    s.scene_seed = scene_seed;
    s.scenario_id = cfg.id;
    s.stage = cfg.stage;

    const scenario::GroundTruth& t = scene.truth;
    s.labels.has_pupil = t.has_pupil;
    s.labels.pupil_x = t.pupil_x;
    s.labels.pupil_y = t.pupil_y;
    s.labels.pupil_alpha = t.pupil_alpha;
    s.labels.pupil_beta = t.pupil_beta;
    s.labels.pupil_theta = t.pupil_theta;
    s.labels.crs = t.crs;
    s.labels.pupil_mask = scenario::pupil_plateau_mask(scene);
    if (with_heatmaps) s.labels.heatmaps = render_target_heatmaps(scene, heatmap_sigma);
    return s;
}

SampleStream::SampleStream(std::string scenario_id, int stage, std::uint64_t master_seed,
                           bool with_heatmaps, double heatmap_sigma)
    : SampleStream(scenario::apply_stage(scenario::preset(scenario_id), stage), master_seed,
                   with_heatmaps, heatmap_sigma) {}

SampleStream::SampleStream(scenario::ScenarioConfig cfg, std::uint64_t master_seed,
                           bool with_heatmaps, double heatmap_sigma)
    : cfg_(std::move(cfg)),
      master_seed_(master_seed),
      with_heatmaps_(with_heatmaps),
      heatmap_sigma_(heatmap_sigma) {}

Sample SampleStream::at(std::uint64_t index) const {
    return generate_sample(cfg_, core::Rng::derive_seed(master_seed_, index), with_heatmaps_,
                           heatmap_sigma_);
}

Sample SampleStream::next() { return at(next_index_++); }

std::vector<Sample> SampleStream::next_batch(std::size_t n) {
    if (n < 1) throw std::invalid_argument("next_batch: n must be >= 1");
    std::vector<Sample> batch;
    batch.reserve(n);
    for (std::size_t i = 0; i < n; ++i) batch.push_back(next());
    return batch;
}

} // namespace leyes::stream

#include "leyes/scenario/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>

namespace leyes::scenario {

using nlohmann::json;

const std::vector<std::string>& scenario_ids() {
    static const std::vector<std::string> ids = {
        "cr_500", "cr_1000", "pupil_500", "pupil_1000", "eds2019", "chugh", "eds2020"};
    return ids;
}

bool is_known_scenario(const std::string& id) {
    const auto& ids = scenario_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

namespace {

// Model input size for the CR/pupil CNN presets; the remaining presets render
// d=128 crops directly.
constexpr int kCnnCanvas = 180;

ScenarioConfig cr_preset(bool at_1000hz) {
    ScenarioConfig cfg;
    cfg.id = at_1000hz ? "cr_1000" : "cr_500";
    cfg.family = SceneFamily::CrOnLine;
    cfg.width = cfg.height = kCnnCanvas;
    cfg.noise_sigma = Distribution::uniform(0, 30);
    cfg.pupil.alpha = Distribution::uniform(1, 30);  // circular CR plateau radius
    cfg.pupil.beta_ratio = Distribution::constant(1);
    cfg.pupil.amplitude = Distribution::log_uniform(2, 20000);
    cfg.pupil.luminance = Distribution::constant(255);
    cfg.line_grey_luminance =
        at_1000hz ? Distribution::uniform(32, 153) : Distribution::constant(128);
    cfg.line_dark_luminance = Distribution::exponential(10, 1);
    cfg.line_distance_factor = Distribution::uniform(0.5, 1.5);
    cfg.stage2.center_span = 1.5;
    return cfg;
}

ScenarioConfig pupil_preset(bool at_1000hz) {
    ScenarioConfig cfg;
    cfg.id = at_1000hz ? "pupil_1000" : "pupil_500";
    cfg.family = SceneFamily::PupilOnUniform;
    cfg.width = cfg.height = kCnnCanvas;
    cfg.noise_sigma = Distribution::uniform(0, 30);
    cfg.pupil.alpha = Distribution::uniform(20, 60);
    cfg.pupil.beta_ratio = Distribution::uniform(1, 1.3);
    cfg.pupil.amplitude = Distribution::log_uniform(2, 20000);
    cfg.pupil.luminance = Distribution::exponential(10, 1);
    cfg.cr.alpha = Distribution::uniform(4, 12);
    cfg.cr.beta_ratio = Distribution::uniform(1, 1.1);
    cfg.cr.amplitude = Distribution::log_uniform(2, 20000);
    cfg.cr.luminance = Distribution::constant(255);
    cfg.cr_count_min = 1;
    cfg.cr_count_max = 4;
    cfg.background_luminance =
        at_1000hz ? Distribution::uniform(32, 153) : Distribution::uniform(64, 179);
    cfg.stage2.center_span = 1.5;
    cfg.stage2.cr_count = 1;
    return cfg;
}

ScenarioConfig eds2019_preset() {
    ScenarioConfig cfg;
    cfg.id = "eds2019";
    cfg.family = SceneFamily::FullEye;
    cfg.width = cfg.height = 128;
    cfg.noise_sigma = Distribution::uniform(0, 15);
    cfg.sclera_luminance = Distribution::normal(217, 26);
    cfg.iris_alpha = Distribution::uniform(30, 42.5);
    cfg.iris_beta_ratio = Distribution::uniform(1, 1.3);
    cfg.iris_luminance = Distribution::normal(77, 16);
    cfg.iris_edge_width = Distribution::uniform(8, 20);
    cfg.collarette_vertices_min = 13;
    cfg.collarette_vertices_max = 24;
    cfg.collarette_radius_ratio = Distribution::uniform(0.3, 0.6);
    cfg.collarette_jitter_ratio = Distribution::uniform(0.05, 0.2);
    cfg.collarette_luminance_ratio = Distribution::uniform(1.25, 1.6);
    cfg.collarette_edge_width = Distribution::uniform(1, 4);
    cfg.pupil.alpha = Distribution::uniform(10, 30);
    cfg.pupil.beta_ratio = Distribution::uniform(1, 1.3);
    cfg.pupil.amplitude = Distribution::log_uniform(2, 2000);
    cfg.pupil.luminance = Distribution::normal(34, 15);
    cfg.cr.alpha = Distribution::uniform(0.8, 4);
    cfg.cr.beta_ratio = Distribution::uniform(1, 1.4);
    cfg.cr.amplitude = Distribution::log_uniform(2, 20000);
    cfg.cr.luminance = Distribution::constant(255);
    cfg.cr_count_min = 1;
    cfg.cr_count_max = 8;
    return cfg;
}

ScenarioConfig polygon_preset(bool eds2020) {
    ScenarioConfig cfg;
    cfg.id = eds2020 ? "eds2020" : "chugh";
    cfg.family = SceneFamily::PolygonRig;
    cfg.width = cfg.height = 128;
    cfg.crop_side = 128.0;
    cfg.noise_sigma = Distribution::uniform(0, 30);
    cfg.pupil.alpha = Distribution::uniform(6, 22.5);
    cfg.pupil.beta_ratio = Distribution::uniform(1, 1.3);
    cfg.pupil.amplitude = Distribution::log_uniform(200, 100000);
    cfg.pupil.luminance =
        eds2020 ? Distribution::weibull(25, 2, 18) : Distribution::exponential(10, 1);
    cfg.cr.alpha = Distribution::uniform(1, 2.5);
    cfg.cr.beta_ratio = Distribution::uniform(1, 1.1);
    cfg.cr.amplitude = Distribution::log_uniform(200, 100000);
    cfg.cr.luminance = Distribution::constant(255);
    cfg.gradient_luminance = Distribution::uniform(63, 178);
    cfg.anchor_jitter = 0.1 * cfg.crop_side;
    cfg.spurious_min = 1;
    cfg.spurious_max = 5;
    cfg.spurious_alpha = Distribution::uniform(1, 2.5);
    cfg.spurious_beta_ratio = Distribution::uniform(1, 2.5);
    cfg.spurious_amplitude = Distribution::log_uniform(200, 100000);
    if (eds2020) {
        cfg.layout_shape = LayoutShape::Ring;
        cfg.ring_radius = Distribution::uniform(0.15 * cfg.crop_side, 0.4 * cfg.crop_side);
        cfg.rotation_max_deg = 0.57;
        cfg.cr_dropout = 0.20;
        cfg.cr_count_min = cfg.cr_count_max = 8;
    } else {
        cfg.layout_shape = LayoutShape::House;
        cfg.house_width = Distribution::uniform(0.1 * cfg.crop_side, 0.45 * cfg.crop_side);
        cfg.house_height_ratio = Distribution::uniform(0.5, 0.6);
        cfg.house_roof_ratio = Distribution::uniform(0.2, 0.5);
        cfg.rotation_max_deg = 45.0;
        cfg.cr_dropout = 0.16;
        cfg.cr_count_min = cfg.cr_count_max = 5;
        cfg.stage2.cr_dropout = 0.10;
        cfg.stage2.spurious_max = 3;
        cfg.stage2.rotation_max_deg = 35.0;
    }
    return cfg;
}

} // namespace

ScenarioConfig preset(const std::string& id) {
    if (id == "cr_500") return cr_preset(false);
    if (id == "cr_1000") return cr_preset(true);
    if (id == "pupil_500") return pupil_preset(false);
    if (id == "pupil_1000") return pupil_preset(true);
    if (id == "eds2019") return eds2019_preset();
    if (id == "chugh") return polygon_preset(false);
    if (id == "eds2020") return polygon_preset(true);
    throw std::invalid_argument("unknown scenario: " + id);
}

ScenarioConfig apply_stage(ScenarioConfig cfg, int stage) {
    if (stage == 1) {
        cfg.stage = 1;
        return cfg;
    }
    if (stage != 2) throw std::invalid_argument("unknown stage");
    cfg.stage = 2;
    if (cfg.stage2.cr_count) cfg.cr_count_min = cfg.cr_count_max = *cfg.stage2.cr_count;
    if (cfg.stage2.cr_dropout) cfg.cr_dropout = *cfg.stage2.cr_dropout;
    if (cfg.stage2.spurious_max) cfg.spurious_max = std::min(cfg.spurious_max, *cfg.stage2.spurious_max);
    if (cfg.stage2.rotation_max_deg)
        cfg.rotation_max_deg = std::min(cfg.rotation_max_deg, *cfg.stage2.rotation_max_deg);
    return cfg;
}

namespace {

json dist_to_json(const Distribution& d) {
    json j;
    j["kind"] = to_string(d.kind);
    switch (d.kind) {
        case Distribution::Kind::Constant: j["value"] = d.p0; break;
        case Distribution::Kind::Uniform:
        case Distribution::Kind::LogUniform:
            j["lo"] = d.p0;
            j["hi"] = d.p1;
            break;
        case Distribution::Kind::Normal:
            j["mean"] = d.p0;
            j["std"] = d.p1;
            break;
        case Distribution::Kind::Exponential:
            j["scale"] = d.p0;
            j["offset"] = d.p2;
            break;
        case Distribution::Kind::Weibull:
            j["scale"] = d.p0;
            j["shape"] = d.p1;
            j["offset"] = d.p2;
            break;
    }
    return j;
}

Distribution dist_from_json(const json& j) {
    Distribution d;
    d.kind = kind_from_string(j.at("kind").get<std::string>());
    switch (d.kind) {
        case Distribution::Kind::Constant: d.p0 = j.at("value"); break;
        case Distribution::Kind::Uniform:
        case Distribution::Kind::LogUniform:
            d.p0 = j.at("lo");
            d.p1 = j.at("hi");
            break;
        case Distribution::Kind::Normal:
            d.p0 = j.at("mean");
            d.p1 = j.at("std");
            break;
        case Distribution::Kind::Exponential:
            d.p0 = j.at("scale");
            d.p2 = j.value("offset", 0.0);
            break;
        case Distribution::Kind::Weibull:
            d.p0 = j.at("scale");
            d.p1 = j.at("shape");
            d.p2 = j.value("offset", 0.0);
            break;
    }
    d.validate();
    return d;
}

json feature_to_json(const FeatureRanges& f) {
    return {{"alpha", dist_to_json(f.alpha)},
            {"beta_ratio", dist_to_json(f.beta_ratio)},
            {"amplitude", dist_to_json(f.amplitude)},
            {"luminance", dist_to_json(f.luminance)}};
}

FeatureRanges feature_from_json(const json& j) {
    FeatureRanges f;
    f.alpha = dist_from_json(j.at("alpha"));
    f.beta_ratio = dist_from_json(j.at("beta_ratio"));
    f.amplitude = dist_from_json(j.at("amplitude"));
    f.luminance = dist_from_json(j.at("luminance"));
    return f;
}

std::string family_name(SceneFamily f) {
    switch (f) {
        case SceneFamily::CrOnLine: return "cr_on_line";
        case SceneFamily::PupilOnUniform: return "pupil_on_uniform";
        case SceneFamily::FullEye: return "full_eye";
        case SceneFamily::PolygonRig: return "polygon_rig";
    }
    return "cr_on_line";
}

SceneFamily family_from_name(const std::string& s) {
    if (s == "cr_on_line") return SceneFamily::CrOnLine;
    if (s == "pupil_on_uniform") return SceneFamily::PupilOnUniform;
    if (s == "full_eye") return SceneFamily::FullEye;
    if (s == "polygon_rig") return SceneFamily::PolygonRig;
    throw std::invalid_argument("unknown scene family: " + s);
}

std::string shape_name(LayoutShape s) {
    switch (s) {
        case LayoutShape::None: return "none";
        case LayoutShape::House: return "house";
        case LayoutShape::Ring: return "ring";
    }
    return "none";
}

LayoutShape shape_from_name(const std::string& s) {
    if (s == "none") return LayoutShape::None;
    if (s == "house") return LayoutShape::House;
    if (s == "ring") return LayoutShape::Ring;
    throw std::invalid_argument("unknown layout shape: " + s);
}

} // namespace

std::string config_to_json(const ScenarioConfig& cfg) {
    json j;
    j["format_version"] = 1;
    j["id"] = cfg.id;
    j["family"] = family_name(cfg.family);
    j["stage"] = cfg.stage;
    j["width"] = cfg.width;
    j["height"] = cfg.height;
    j["noise_sigma"] = dist_to_json(cfg.noise_sigma);
    j["pupil"] = feature_to_json(cfg.pupil);
    j["cr"] = feature_to_json(cfg.cr);
    j["cr_count_min"] = cfg.cr_count_min;
    j["cr_count_max"] = cfg.cr_count_max;
    j["cr_separation_factor"] = cfg.cr_separation_factor;
    j["line_grey_luminance"] = dist_to_json(cfg.line_grey_luminance);
    j["line_dark_luminance"] = dist_to_json(cfg.line_dark_luminance);
    j["line_distance_factor"] = dist_to_json(cfg.line_distance_factor);
    j["background_luminance"] = dist_to_json(cfg.background_luminance);
    j["gradient_luminance"] = dist_to_json(cfg.gradient_luminance);
    j["layout_shape"] = shape_name(cfg.layout_shape);
    j["crop_side"] = cfg.crop_side;
    j["house_width"] = dist_to_json(cfg.house_width);
    j["house_height_ratio"] = dist_to_json(cfg.house_height_ratio);
    j["house_roof_ratio"] = dist_to_json(cfg.house_roof_ratio);
    j["ring_radius"] = dist_to_json(cfg.ring_radius);
    j["rotation_max_deg"] = cfg.rotation_max_deg;
    j["anchor_jitter"] = cfg.anchor_jitter;
    j["cr_dropout"] = cfg.cr_dropout;
    j["spurious_min"] = cfg.spurious_min;
    j["spurious_max"] = cfg.spurious_max;
    j["spurious_alpha"] = dist_to_json(cfg.spurious_alpha);
    j["spurious_beta_ratio"] = dist_to_json(cfg.spurious_beta_ratio);
    j["spurious_amplitude"] = dist_to_json(cfg.spurious_amplitude);
    j["sclera_luminance"] = dist_to_json(cfg.sclera_luminance);
    j["iris_alpha"] = dist_to_json(cfg.iris_alpha);
    j["iris_beta_ratio"] = dist_to_json(cfg.iris_beta_ratio);
    j["iris_luminance"] = dist_to_json(cfg.iris_luminance);
    j["iris_edge_width"] = dist_to_json(cfg.iris_edge_width);
    j["collarette_vertices_min"] = cfg.collarette_vertices_min;
    j["collarette_vertices_max"] = cfg.collarette_vertices_max;
    j["collarette_radius_ratio"] = dist_to_json(cfg.collarette_radius_ratio);
    j["collarette_jitter_ratio"] = dist_to_json(cfg.collarette_jitter_ratio);
    j["collarette_luminance_ratio"] = dist_to_json(cfg.collarette_luminance_ratio);
    j["collarette_edge_width"] = dist_to_json(cfg.collarette_edge_width);

    json s2 = json::object();
    if (cfg.stage2.center_span) s2["center_span"] = *cfg.stage2.center_span;
    if (cfg.stage2.cr_count) s2["cr_count"] = *cfg.stage2.cr_count;
    if (cfg.stage2.cr_dropout) s2["cr_dropout"] = *cfg.stage2.cr_dropout;
    if (cfg.stage2.spurious_max) s2["spurious_max"] = *cfg.stage2.spurious_max;
    if (cfg.stage2.rotation_max_deg) s2["rotation_max_deg"] = *cfg.stage2.rotation_max_deg;
    j["stage2"] = s2;
    return j.dump(2);
}

ScenarioConfig config_from_json(const std::string& text) {
    json j = json::parse(text);
    ScenarioConfig cfg;
    cfg.id = j.at("id");
    cfg.family = family_from_name(j.at("family"));
    cfg.stage = j.value("stage", 1);
    cfg.width = j.at("width");
    cfg.height = j.at("height");
    cfg.noise_sigma = dist_from_json(j.at("noise_sigma"));
    cfg.pupil = feature_from_json(j.at("pupil"));
    cfg.cr = feature_from_json(j.at("cr"));
    cfg.cr_count_min = j.at("cr_count_min");
    cfg.cr_count_max = j.at("cr_count_max");
    cfg.cr_separation_factor = j.at("cr_separation_factor");
    cfg.line_grey_luminance = dist_from_json(j.at("line_grey_luminance"));
    cfg.line_dark_luminance = dist_from_json(j.at("line_dark_luminance"));
    cfg.line_distance_factor = dist_from_json(j.at("line_distance_factor"));
    cfg.background_luminance = dist_from_json(j.at("background_luminance"));
    cfg.gradient_luminance = dist_from_json(j.at("gradient_luminance"));
    cfg.layout_shape = shape_from_name(j.at("layout_shape"));
    cfg.crop_side = j.at("crop_side");
    cfg.house_width = dist_from_json(j.at("house_width"));
    cfg.house_height_ratio = dist_from_json(j.at("house_height_ratio"));
    cfg.house_roof_ratio = dist_from_json(j.at("house_roof_ratio"));
    cfg.ring_radius = dist_from_json(j.at("ring_radius"));
    cfg.rotation_max_deg = j.at("rotation_max_deg");
    cfg.anchor_jitter = j.at("anchor_jitter");
    cfg.cr_dropout = j.at("cr_dropout");
    cfg.spurious_min = j.at("spurious_min");
    cfg.spurious_max = j.at("spurious_max");
    cfg.spurious_alpha = dist_from_json(j.at("spurious_alpha"));
    cfg.spurious_beta_ratio = dist_from_json(j.at("spurious_beta_ratio"));
    cfg.spurious_amplitude = dist_from_json(j.at("spurious_amplitude"));
    cfg.sclera_luminance = dist_from_json(j.at("sclera_luminance"));
    cfg.iris_alpha = dist_from_json(j.at("iris_alpha"));
    cfg.iris_beta_ratio = dist_from_json(j.at("iris_beta_ratio"));
    cfg.iris_luminance = dist_from_json(j.at("iris_luminance"));
    cfg.iris_edge_width = dist_from_json(j.at("iris_edge_width"));
    cfg.collarette_vertices_min = j.at("collarette_vertices_min");
    cfg.collarette_vertices_max = j.at("collarette_vertices_max");
    cfg.collarette_radius_ratio = dist_from_json(j.at("collarette_radius_ratio"));
    cfg.collarette_jitter_ratio = dist_from_json(j.at("collarette_jitter_ratio"));
    cfg.collarette_luminance_ratio = dist_from_json(j.at("collarette_luminance_ratio"));
    cfg.collarette_edge_width = dist_from_json(j.at("collarette_edge_width"));
    const json& s2 = j.at("stage2");
    if (s2.contains("center_span")) cfg.stage2.center_span = s2["center_span"].get<double>();
    if (s2.contains("cr_count")) cfg.stage2.cr_count = s2["cr_count"].get<int>();
    if (s2.contains("cr_dropout")) cfg.stage2.cr_dropout = s2["cr_dropout"].get<double>();
    if (s2.contains("spurious_max")) cfg.stage2.spurious_max = s2["spurious_max"].get<int>();
    if (s2.contains("rotation_max_deg"))
        cfg.stage2.rotation_max_deg = s2["rotation_max_deg"].get<double>();
    return cfg;
}

} // namespace leyes::scenario

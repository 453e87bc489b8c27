/// @file leyes_main.cpp
/// @brief Command-line front end: dataset generation, frame analysis, P-CR
/// selection, calibration, and signal-quality reports.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "leyes/core/png_io.hpp"
#include "leyes/gaze/calibration.hpp"
#include "leyes/gaze/metrics.hpp"
#include "leyes/gaze/signal.hpp"
#include "leyes/pcr/select.hpp"
#include "leyes/scenario/config.hpp"
#include "leyes/stream/export.hpp"
#include "leyes/vision/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) | rd();
}

void write_snapshot(const fs::path& path, const json& resolved) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write snapshot " + path.string());
    out << resolved.dump(2) << '\n';
}

// ---- generate -------------------------------------------------------------

struct GenerateArgs {
    std::string scenario;
    int stage = 1;
    std::uint64_t count = 0;
    std::optional<std::uint64_t> seed;
    std::string out;
    bool heatmaps = false;
    int threads = 1;
    std::string config_file;
};

int run_generate(const GenerateArgs& args) {
    leyes::scenario::ScenarioConfig cfg;
    if (!args.config_file.empty()) {
        std::ifstream in(args.config_file);
        if (!in) throw std::runtime_error("cannot open config " + args.config_file);
        std::stringstream buf;
        buf << in.rdbuf();
        cfg = leyes::scenario::config_from_json(buf.str());
        cfg = leyes::scenario::apply_stage(cfg, args.stage);
    } else {
        cfg = leyes::scenario::apply_stage(leyes::scenario::preset(args.scenario), args.stage);
    }

    std::uint64_t seed = resolve_seed(args.seed);
    leyes::stream::SampleStream stream(cfg, seed, args.heatmaps);
    auto manifest =
        leyes::stream::export_dataset(stream, args.count, args.out, args.heatmaps, args.threads);

    json snapshot;
    snapshot["command"] = "generate";
    snapshot["seed"] = seed;
    snapshot["count"] = args.count;
    snapshot["threads"] = args.threads;
    snapshot["heatmaps"] = args.heatmaps;
    snapshot["scenario"] = json::parse(leyes::scenario::config_to_json(cfg));
    write_snapshot(fs::path(args.out) / "run_config.json", snapshot);

    std::cerr << "generated " << manifest.entries.size() << " samples in " << args.out << "\n";
    return 0;
}

// ---- analyze --------------------------------------------------------------

struct AnalyzeArgs {
    std::string frames_dir;
    std::string out_csv;
    std::string config_file;
    double pupil_threshold = 0.25;
    double cr_threshold = 0.85;
    double circularity_min = 0.6;
};

int run_analyze(const AnalyzeArgs& args) {
    leyes::vision::ThresholdConfig cfg;
    cfg.pupil_threshold = args.pupil_threshold;
    cfg.cr_threshold = args.cr_threshold;
    cfg.circularity_min = args.circularity_min;
    if (!args.config_file.empty()) {
        std::ifstream in(args.config_file);
        if (!in) throw std::runtime_error("cannot open config " + args.config_file);
        json j = json::parse(in);
        if (j.contains("pupil_threshold")) cfg.pupil_threshold = j["pupil_threshold"];
        if (j.contains("cr_threshold")) cfg.cr_threshold = j["cr_threshold"];
        if (j.contains("circularity_min")) cfg.circularity_min = j["circularity_min"];
        if (j.contains("min_area")) cfg.min_area = j["min_area"];
        if (j.contains("max_area")) cfg.max_area = j["max_area"];
    }
    cfg.validate();

    auto frames = leyes::vision::analyze_frames(args.frames_dir, cfg);
    leyes::vision::write_analysis_csv(frames, args.out_csv);

    json snapshot;
    snapshot["command"] = "analyze";
    snapshot["frames_dir"] = args.frames_dir;
    snapshot["pupil_threshold"] = cfg.pupil_threshold;
    snapshot["cr_threshold"] = cfg.cr_threshold;
    snapshot["circularity_min"] = cfg.circularity_min;
    snapshot["min_area"] = cfg.min_area;
    snapshot["max_area"] = cfg.max_area;
    write_snapshot(args.out_csv + ".run.json", snapshot);
    return 0;
}

// ---- pcr ------------------------------------------------------------------

struct PcrArgs {
    std::string frames_dir;
    std::string maps_dir;
    double cth = 0.90;
    std::string out_csv;
};

int run_pcr(const PcrArgs& args) {
    std::map<std::string, fs::path> frames, maps;
    for (const auto& e : fs::directory_iterator(args.frames_dir))
        if (e.is_regular_file() && e.path().extension() == ".png")
            frames[e.path().stem().string()] = e.path();
    for (const auto& e : fs::directory_iterator(args.maps_dir))
        if (e.is_regular_file() && e.path().extension() == ".maps")
            maps[e.path().stem().string()] = e.path();

    std::ofstream out(args.out_csv, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + args.out_csv);
    out << "frame,status,pupil_x,pupil_y,cr_a_index,cr_a_x,cr_a_y,cr_a_logit,"
           "cr_b_index,cr_b_x,cr_b_y,cr_b_logit\n";
    out.precision(17);

    leyes::vision::ThresholdConfig threshold_cfg;
    std::uint64_t index = 0;
    for (const auto& [stem, frame_path] : frames) {
        auto it = maps.find(stem);
        if (it == maps.end()) {
            std::cerr << "no maps for frame " << stem << ", skipped\n";
            continue;
        }
        auto map_set = leyes::pcr::read_maps(it->second.string());
        try {
            leyes::core::GrayImage img = leyes::core::read_png_gray8(frame_path.string());
            if (map_set.pupil_map.width < img.width || map_set.pupil_map.height < img.height) {
                leyes::pcr::DetectorReport report;
                if (auto pupil = leyes::vision::detect_pupil(img, threshold_cfg))
                    report = {pupil->x, pupil->y, pupil->confidence};
                auto [ox, oy] = leyes::pcr::decide_crop(report, args.cth, img.width, img.height,
                                                        map_set.pupil_map.width);
                map_set.crop_x = ox;
                map_set.crop_y = oy;
                std::cerr << stem << ": crop at (" << ox << ", " << oy << "), "
                          << (report.confidence >= args.cth ? "detector" : "center")
                          << " branch\n";
            }
        } catch (const std::exception& e) {
            std::cerr << stem << ": unreadable frame (" << e.what() << "), full-image maps\n";
        }

        auto result = leyes::pcr::select_best_two_crs(map_set);
        out << index << ',' << (result.valid ? "valid" : "invalid") << ',' << result.pupil_x
            << ',' << result.pupil_y << ',' << result.first.index << ',' << result.first.x << ','
            << result.first.y << ',' << result.first.peak << ',' << result.second.index << ','
            << result.second.x << ',' << result.second.y << ',' << result.second.peak << '\n';
        ++index;
    }
    if (!out) throw std::runtime_error("write failed: " + args.out_csv);

    json snapshot;
    snapshot["command"] = "pcr";
    snapshot["frames_dir"] = args.frames_dir;
    snapshot["maps_dir"] = args.maps_dir;
    snapshot["cth"] = args.cth;
    write_snapshot(args.out_csv + ".run.json", snapshot);
    return 0;
}

// ---- calibrate / metrics --------------------------------------------------

struct PcrRow {
    bool valid = false;
    double u = 0.0;  ///< pupil minus mean of the two selected CRs
    double v = 0.0;
};

std::vector<PcrRow> read_pcr_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path);
    std::vector<PcrRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::vector<std::string> fields;
        std::string f;
        while (std::getline(row, f, ',')) fields.push_back(f);
        if (fields.size() < 12) throw std::runtime_error("malformed CSV row: " + line);
        PcrRow r;
        r.valid = fields[1] == "valid";
        if (r.valid) {
            double px = std::stod(fields[2]), py = std::stod(fields[3]);
            double ax = std::stod(fields[5]), ay = std::stod(fields[6]);
            double bx = std::stod(fields[9]), by = std::stod(fields[10]);
            r.u = px - 0.5 * (ax + bx);
            r.v = py - 0.5 * (ay + by);
        }
        rows.push_back(r);
    }
    return rows;
}

leyes::gaze::Signal pcr_rows_to_signal(const std::vector<PcrRow>& rows, double rate_hz) {
    leyes::gaze::Signal sig;
    sig.rate_hz = rate_hz;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        sig.timestamps_ms.push_back(1000.0 * static_cast<double>(i) / rate_hz);
        sig.x.push_back(rows[i].u);
        sig.y.push_back(rows[i].v);
        sig.valid.push_back(rows[i].valid ? 1 : 0);
    }
    return sig;
}

struct CalibrateArgs {
    std::string pcr_csv;
    std::string session_json;
    std::string out_model;
};

int run_calibrate(const CalibrateArgs& args) {
    auto session = leyes::gaze::load_session(args.session_json);
    if (session.rate_hz <= 0.0)
        throw std::runtime_error("calibrate: session must specify rate_hz");
    auto rows = read_pcr_csv(args.pcr_csv);
    auto sig = pcr_rows_to_signal(rows, session.rate_hz);

    std::vector<std::pair<double, double>> uv, targets;
    for (const auto& target : session.targets) {
        double t_lo = target.t_on_ms + 300.0;
        double mu = 0.0, mv = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < sig.size(); ++i) {
            if (!sig.valid[i] || sig.timestamps_ms[i] < t_lo ||
                sig.timestamps_ms[i] > target.t_off_ms)
                continue;
            mu += sig.x[i];
            mv += sig.y[i];
            ++count;
        }
        if (count == 0)
            throw std::runtime_error("calibrate: no valid samples in a target interval");
        uv.push_back({mu / count, mv / count});
        targets.push_back({target.x, target.y});
    }
    auto model = leyes::gaze::fit_calibration(uv, targets);
    leyes::gaze::write_model(model, args.out_model);

    json snapshot;
    snapshot["command"] = "calibrate";
    snapshot["pcr_csv"] = args.pcr_csv;
    snapshot["session"] = args.session_json;
    snapshot["targets_used"] = targets.size();
    write_snapshot(args.out_model + ".run.json", snapshot);
    return 0;
}

struct MetricsArgs {
    std::string gaze_csv;
    std::string session_json;
    std::string out_report;
    std::string model_file;  ///< optional: treat gaze_csv as a P-CR CSV
    std::string aggregate = "mean";
};

leyes::gaze::Signal read_gaze_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path);
    leyes::gaze::Signal sig;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string f;
        std::getline(row, f, ',');
        sig.timestamps_ms.push_back(std::stod(f));
        std::getline(row, f, ',');
        sig.x.push_back(std::stod(f));
        std::getline(row, f, ',');
        sig.y.push_back(std::stod(f));
        if (!std::getline(row, f, ',')) throw std::runtime_error("malformed CSV row: " + line);
        sig.valid.push_back(std::stoi(f) ? 1 : 0);
    }
    return sig;
}

leyes::gaze::Signal slice_signal(const leyes::gaze::Signal& sig, double t_lo, double t_hi) {
    leyes::gaze::Signal out;
    out.rate_hz = sig.rate_hz;
    for (std::size_t i = 0; i < sig.size(); ++i) {
        double t = sig.timestamps_ms[i];
        if (t < t_lo || t > t_hi) continue;
        out.timestamps_ms.push_back(t);
        out.x.push_back(sig.x[i]);
        out.y.push_back(sig.y[i]);
        out.valid.push_back(sig.valid[i]);
    }
    return out;
}

int run_metrics(const MetricsArgs& args) {
    auto session = leyes::gaze::load_session(args.session_json);
    leyes::gaze::Signal gaze;
    if (!args.model_file.empty()) {
        if (session.rate_hz <= 0.0)
            throw std::runtime_error("metrics: session must specify rate_hz for P-CR input");
        auto model = leyes::gaze::read_model(args.model_file);
        gaze = apply_calibration(model, pcr_rows_to_signal(read_pcr_csv(args.gaze_csv),
                                                           session.rate_hz));
    } else {
        gaze = read_gaze_csv(args.gaze_csv);
        if (session.rate_hz > 0.0) gaze.rate_hz = session.rate_hz;
    }
    gaze.validate();

    json trials = json::array();
    std::vector<double> rms_medians, std_medians;
    for (std::size_t k = 0; k < session.targets.size(); ++k) {
        const auto& target = session.targets[k];
        auto trial = slice_signal(gaze, target.t_on_ms + 300.0, target.t_off_ms);
        json t;
        t["target_index"] = k;
        try {
            auto rms = leyes::gaze::rms_s2s(trial);
            auto stdp = leyes::gaze::std_precision(trial);
            t["rms_s2s"] = rms.median;
            t["std"] = stdp.median;
            t["windows"] = rms.per_window.size();
            rms_medians.push_back(rms.median);
            std_medians.push_back(stdp.median);
        } catch (const std::exception& e) {
            t["error"] = e.what();
        }
        trials.push_back(t);
    }
    auto aggregate = [&](const std::vector<double>& values) -> json {
        if (values.empty()) return nullptr;
        if (args.aggregate == "median") return leyes::gaze::median_of(values);
        double sum = 0.0;
        for (double v : values) sum += v;
        return sum / static_cast<double>(values.size());
    };

    auto acc = leyes::gaze::accuracy(gaze, session.targets);

    json report;
    report["window_ms"] = 200.0;
    report["aggregate"] = args.aggregate;
    report["trials"] = trials;
    report["rms_s2s"] = aggregate(rms_medians);
    report["std"] = aggregate(std_medians);
    report["accuracy"] = {{"per_target", acc.per_target}, {"mean", acc.mean}};
    std::ofstream out(args.out_report, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + args.out_report);
    out << report.dump(2) << '\n';

    json snapshot;
    snapshot["command"] = "metrics";
    snapshot["gaze_csv"] = args.gaze_csv;
    snapshot["session"] = args.session_json;
    snapshot["aggregate"] = args.aggregate;
    snapshot["model"] = args.model_file;
    write_snapshot(args.out_report + ".run.json", snapshot);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Synthetic eye-image generation and P-CR analysis toolkit"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Export a labeled synthetic dataset");
    generate->add_option("--scenario", gen.scenario, "Scenario preset id")
        ->required()
        ->check(CLI::IsMember(leyes::scenario::scenario_ids()));
    generate->add_option("--stage", gen.stage, "Curriculum stage")->check(CLI::Range(1, 2));
    generate->add_option("--count", gen.count, "Number of samples")->required();
    generate->add_option("--seed", gen.seed, "Master seed (default: drawn from the OS)");
    generate->add_option("--out", gen.out, "Output directory")->required();
    generate->add_flag("--heatmaps", gen.heatmaps, "Also write per-sample heatmap files");
    generate->add_option("--threads", gen.threads, "Worker count")->check(CLI::PositiveNumber);
    generate->add_option("--config", gen.config_file, "Scenario config JSON overriding the preset");

    AnalyzeArgs ana;
    auto* analyze = app.add_subcommand("analyze", "Classical per-frame pupil/CR analysis");
    analyze->add_option("--frames", ana.frames_dir, "Directory of PNG frames")->required();
    analyze->add_option("--out", ana.out_csv, "Output CSV path")->required();
    analyze->add_option("--config", ana.config_file, "Threshold config JSON");
    analyze->add_option("--pupil-threshold", ana.pupil_threshold)->check(CLI::Range(0.0, 1.0));
    analyze->add_option("--cr-threshold", ana.cr_threshold)->check(CLI::Range(0.0, 1.0));
    analyze->add_option("--circularity-min", ana.circularity_min)->check(CLI::Range(0.0, 1.0));

    PcrArgs pcr;
    auto* pcr_cmd = app.add_subcommand("pcr", "Select the best two CRs from feature maps");
    pcr_cmd->add_option("--frames", pcr.frames_dir, "Directory of PNG frames")->required();
    pcr_cmd->add_option("--maps", pcr.maps_dir, "Directory of LEYESMAPS files")->required();
    pcr_cmd->add_option("--cth", pcr.cth, "Detector confidence threshold")
        ->check(CLI::Range(0.0, 1.0));
    pcr_cmd->add_option("--out", pcr.out_csv, "Output CSV path")->required();

    CalibrateArgs cal;
    auto* calibrate = app.add_subcommand("calibrate", "Fit the polynomial gaze calibration");
    calibrate->add_option("--pcr", cal.pcr_csv, "P-CR CSV (pcr subcommand output)")->required();
    calibrate->add_option("--session", cal.session_json, "Session description JSON")->required();
    calibrate->add_option("--out", cal.out_model, "Output model JSON")->required();

    MetricsArgs met;
    auto* metrics = app.add_subcommand("metrics", "Signal-quality report");
    metrics->add_option("--gaze", met.gaze_csv, "Gaze CSV (t_ms,x,y,valid) or P-CR CSV with --model")
        ->required();
    metrics->add_option("--session", met.session_json, "Session description JSON")->required();
    metrics->add_option("--out", met.out_report, "Output report JSON")->required();
    metrics->add_option("--model", met.model_file, "Calibration model for P-CR CSV input");
    metrics->add_option("--aggregate", met.aggregate, "Across-trial aggregation")
        ->check(CLI::IsMember({"mean", "median"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (generate->parsed()) return run_generate(gen);
        if (analyze->parsed()) return run_analyze(ana);
        if (pcr_cmd->parsed()) return run_pcr(pcr);
        if (calibrate->parsed()) return run_calibrate(cal);
        if (metrics->parsed()) return run_metrics(met);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

#include "leyes/stream/export.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <thread>

#include "leyes/core/png_io.hpp"
#include "leyes/pcr/select.hpp"

namespace leyes::stream {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t fnv1a64(const void* data, std::size_t size, std::uint64_t seed) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string label_record_json(const Sample& sample, const std::string& file_name) {
    json j;
    j["file"] = file_name;
    j["seed"] = sample.scene_seed;
    if (sample.labels.has_pupil) {
        j["pupil"] = {{"x", sample.labels.pupil_x},
                      {"y", sample.labels.pupil_y},
                      {"alpha", sample.labels.pupil_alpha},
                      {"beta", sample.labels.pupil_beta},
                      {"theta", sample.labels.pupil_theta}};
    } else {
        j["pupil"] = nullptr;
    }
    json crs = json::array();
    for (const auto& cr : sample.labels.crs)
        crs.push_back({{"index", cr.index}, {"x", cr.x}, {"y", cr.y}, {"present", cr.present}});
    j["crs"] = crs;
    return j.dump();
}

namespace {

std::string sample_file_name(std::uint64_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "sample_%06llu.png", static_cast<unsigned long long>(index));
    return buf;
}

std::string maps_file_name(std::uint64_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "sample_%06llu.maps", static_cast<unsigned long long>(index));
    return buf;
}

struct Rendered {
    std::vector<std::uint8_t> png;
    std::string label_line;
    std::uint64_t scene_seed = 0;
    std::vector<core::FloatImage> heatmaps;
};

} // namespace

DatasetManifest read_manifest(const std::string& directory) {
    std::ifstream in(fs::path(directory) / "manifest.json");
    if (!in) throw std::runtime_error("cannot open manifest in " + directory);
    json j = json::parse(in);
    DatasetManifest m;
    m.format_version = j.at("format_version");
    m.scenario_id = j.at("scenario_id");
    m.stage = j.at("stage");
    m.master_seed = j.at("master_seed");
    m.count = j.at("count");
    m.complete = j.at("complete");
    m.label_hash = j.at("label_hash");
    for (const auto& e : j.at("samples"))
        m.entries.push_back({e.at("file"), e.at("seed"), e.at("image_hash")});
    return m;
}

void write_manifest(const DatasetManifest& manifest, const std::string& directory) {
    json j;
    j["format_version"] = manifest.format_version;
    j["scenario_id"] = manifest.scenario_id;
    j["stage"] = manifest.stage;
    j["master_seed"] = manifest.master_seed;
    j["count"] = manifest.count;
    j["complete"] = manifest.complete;
    j["label_hash"] = manifest.label_hash;
    json samples = json::array();
    for (const auto& e : manifest.entries)
        samples.push_back({{"file", e.file}, {"seed", e.scene_seed}, {"image_hash", e.image_hash}});
    j["samples"] = samples;
    std::ofstream out(fs::path(directory) / "manifest.json", std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write manifest in " + directory);
    out << j.dump(2) << '\n';
}

DatasetManifest export_dataset(SampleStream& stream, std::uint64_t n, const std::string& directory,
                               bool include_heatmaps, int threads) {
    fs::create_directories(directory);
    DatasetManifest manifest;
    manifest.scenario_id = stream.config().id;
    manifest.stage = stream.config().stage;
    manifest.master_seed = stream.master_seed();
    manifest.count = n;

    std::uint64_t first = stream.next_index();
    std::vector<Rendered> rendered(n);

    // Workers own disjoint index sets; every per-sample artifact is a pure
    // function of (config, master seed, index), so the fan-out cannot change
    // the output.
    int worker_count = std::max(1, threads);
    auto work = [&](int worker) {
        for (std::uint64_t i = worker; i < n; i += worker_count) {
            Sample s = stream.at(first + i);
            Rendered& r = rendered[i];
            r.png = core::encode_png_gray8(s.image);
            r.label_line = label_record_json(s, sample_file_name(first + i));
            r.scene_seed = s.scene_seed;
            if (include_heatmaps) r.heatmaps = std::move(s.labels.heatmaps);
        }
    };
    if (worker_count == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(worker_count);
        for (int w = 0; w < worker_count; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }

    try {
        std::ofstream labels(fs::path(directory) / "labels.jsonl", std::ios::trunc);
        if (!labels) throw std::runtime_error("cannot write labels.jsonl in " + directory);
        std::uint64_t label_hash = 0xcbf29ce484222325ULL;
        for (std::uint64_t i = 0; i < n; ++i) {
            const Rendered& r = rendered[i];
            std::string file = sample_file_name(first + i);
            std::ofstream img(fs::path(directory) / file, std::ios::binary | std::ios::trunc);
            if (!img) throw std::runtime_error("cannot write " + file);
            img.write(reinterpret_cast<const char*>(r.png.data()),
                      static_cast<std::streamsize>(r.png.size()));
            if (!img) throw std::runtime_error("write failed: " + file);

            std::string line = r.label_line + "\n";
            labels << line;
            label_hash = fnv1a64(line.data(), line.size(), label_hash);
            manifest.entries.push_back({file, r.scene_seed, fnv1a64(r.png.data(), r.png.size())});

            if (include_heatmaps && !r.heatmaps.empty()) {
                pcr::FeatureMapSet maps;
                maps.pupil_map = r.heatmaps.front();
                maps.cr_maps.assign(r.heatmaps.begin() + 1, r.heatmaps.end());
                pcr::write_maps(maps, (fs::path(directory) / maps_file_name(first + i)).string());
            }
        }
        if (!labels) throw std::runtime_error("label write failed in " + directory);
        manifest.label_hash = label_hash;
        manifest.complete = true;
    } catch (...) {
        manifest.complete = false;
        try {
            write_manifest(manifest, directory);
        } catch (...) {
        }
        throw;
    }
    write_manifest(manifest, directory);
    stream.skip_to(first + n);
    return manifest;
}

} // namespace leyes::stream

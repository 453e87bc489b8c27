#include "leyes/pcr/select.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace leyes::pcr {

std::pair<int, int> decide_crop(const DetectorReport& report, double confidence_threshold,
                                int image_width, int image_height, int crop_size) {
    if (crop_size > image_width || crop_size > image_height)
        throw std::invalid_argument("decide_crop: crop larger than image");
    double cx, cy;
    if (report.confidence >= confidence_threshold) {
        cx = report.x;
        cy = report.y;
    } else {
        cx = (image_width - 1) / 2.0;
        cy = (image_height - 1) / 2.0;
    }
    int ox = static_cast<int>(std::lround(cx)) - crop_size / 2;
    int oy = static_cast<int>(std::lround(cy)) - crop_size / 2;
    ox = std::clamp(ox, 0, image_width - crop_size);
    oy = std::clamp(oy, 0, image_height - crop_size);
    return {ox, oy};
}

Peak peak_of_map(const core::FloatImage& map) {
    if (map.size() == 0) throw std::invalid_argument("peak_of_map: empty map");
    std::size_t best = 0;
    for (std::size_t i = 1; i < map.size(); ++i)
        if (map.values[i] > map.values[best]) best = i;
    return {map.values[best], static_cast<int>(best % map.width),
            static_cast<int>(best / map.width)};
}

PcrResult select_best_two_crs(const FeatureMapSet& maps) {
    if (maps.cr_maps.size() < 2)
        throw std::invalid_argument("select_best_two_crs: need at least two CR maps");

    PcrResult result;
    Peak pupil = peak_of_map(maps.pupil_map);
    result.pupil_x = pupil.x + maps.crop_x;
    result.pupil_y = pupil.y + maps.crop_y;

    std::vector<Peak> peaks(maps.cr_maps.size());
    int above_one = 0;
    for (std::size_t k = 0; k < maps.cr_maps.size(); ++k) {
        peaks[k] = peak_of_map(maps.cr_maps[k]);
        if (peaks[k].value >= 1.0) ++above_one;
    }
    if (above_one < 2) return result;  // invalid

    // Top two by peak value; equal peaks break toward the lower CR index,
    // which the stable index scan gives for free.
    int a = -1, b = -1;
    for (int k = 0; k < static_cast<int>(peaks.size()); ++k) {
        if (a < 0 || peaks[k].value > peaks[a].value) {
            b = a;
            a = k;
        } else if (b < 0 || peaks[k].value > peaks[b].value) {
            b = k;
        }
    }
    result.valid = true;
    result.first = {a, static_cast<double>(peaks[a].x + maps.crop_x),
                    static_cast<double>(peaks[a].y + maps.crop_y), peaks[a].value};
    result.second = {b, static_cast<double>(peaks[b].x + maps.crop_x),
                     static_cast<double>(peaks[b].y + maps.crop_y), peaks[b].value};
    return result;
}

FeatureMapSet synthesize_oracle_maps(const stream::LabelSet& labels, int width, int height,
                                     double peak_scale, double sigma) {
    if (peak_scale <= 0.0) throw std::invalid_argument("synthesize_oracle_maps: peak_scale <= 0");
    auto bump = [&](double cx, double cy) {
        core::FloatImage m(width, height, 0.0);
        double inv = 1.0 / (2.0 * sigma * sigma);
        for (int i = 0; i < height; ++i) {
            double dy = i - cy;
            for (int j = 0; j < width; ++j) {
                double dx = j - cx;
                m.at(i, j) = peak_scale * std::exp(-(dx * dx + dy * dy) * inv);
            }
        }
        return m;
    };

    FeatureMapSet maps;
    maps.pupil_map = labels.has_pupil ? bump(labels.pupil_x, labels.pupil_y)
                                      : core::FloatImage(width, height, 0.0);
    for (const auto& cr : labels.crs)
        maps.cr_maps.push_back(cr.present ? bump(cr.x, cr.y)
                                          : core::FloatImage(width, height, 0.0));
    return maps;
}

namespace {

void write_map_f32(std::ostream& out, const core::FloatImage& map) {
    for (double v : map.values) {
        float f = static_cast<float>(v);
        // Little-endian float32; the build targets LE platforms.
        out.write(reinterpret_cast<const char*>(&f), sizeof(float));
    }
}

core::FloatImage read_map_f32(std::istream& in, int width, int height) {
    core::FloatImage map(width, height);
    std::vector<float> buf(map.size());
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size() * sizeof(float)));
    if (!in) throw std::runtime_error("LEYESMAPS: short file");
    for (std::size_t i = 0; i < buf.size(); ++i) map.values[i] = buf[i];
    return map;
}

} // namespace

void write_maps(const FeatureMapSet& maps, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "LEYESMAPS 1 " << maps.pupil_map.width << ' ' << maps.pupil_map.height << ' '
        << maps.cr_maps.size() + 1 << '\n';
    write_map_f32(out, maps.pupil_map);
    for (const auto& m : maps.cr_maps) {
        if (m.width != maps.pupil_map.width || m.height != maps.pupil_map.height)
            throw std::invalid_argument("write_maps: dimension mismatch");
        write_map_f32(out, m);
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

FeatureMapSet read_maps(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string header;
    std::getline(in, header);
    std::istringstream hs(header);
    std::string magic;
    int version = 0, width = 0, height = 0, channels = 0;
    hs >> magic >> version >> width >> height >> channels;
    if (!hs || magic != "LEYESMAPS" || version != 1 || width <= 0 || height <= 0 || channels < 1)
        throw std::runtime_error("LEYESMAPS: malformed header in " + path);

    FeatureMapSet maps;
    maps.pupil_map = read_map_f32(in, width, height);
    for (int k = 1; k < channels; ++k) maps.cr_maps.push_back(read_map_f32(in, width, height));
    return maps;
}

} // namespace leyes::pcr

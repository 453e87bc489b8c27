#include "leyes/vision/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "leyes/core/png_io.hpp"

namespace leyes::vision {

namespace fs = std::filesystem;

void ThresholdConfig::validate() const {
    if (pupil_threshold < 0.0 || pupil_threshold > 1.0 || cr_threshold < 0.0 ||
        cr_threshold > 1.0)
        throw std::invalid_argument("ThresholdConfig: thresholds must be in [0, 1]");
    if (circularity_min < 0.0 || circularity_min > 1.0)
        throw std::invalid_argument("ThresholdConfig: circularity_min must be in [0, 1]");
    if (min_area > 0.0 && max_area > 0.0 && min_area >= max_area)
        throw std::invalid_argument("ThresholdConfig: min_area must be below max_area");
}

namespace {

core::GrayImage apply_roi(const core::GrayImage& img, const Rect& roi, int& off_x, int& off_y) {
    off_x = 0;
    off_y = 0;
    if (roi.width <= 0 || roi.height <= 0) return img;
    if (roi.x < 0 || roi.y < 0 || roi.x + roi.width > img.width ||
        roi.y + roi.height > img.height)
        throw std::invalid_argument("ThresholdConfig: roi outside image");
    core::GrayImage sub(roi.width, roi.height);
    for (int r = 0; r < roi.height; ++r)
        for (int c = 0; c < roi.width; ++c) sub.at(r, c) = img.at(roi.y + r, roi.x + c);
    off_x = roi.x;
    off_y = roi.y;
    return sub;
}

std::optional<FeatureEstimate> detect_feature(const core::GrayImage& img,
                                              const ThresholdConfig& cfg, double threshold,
                                              BinarizeMode mode, double default_min_area,
                                              double default_max_frac) {
    cfg.validate();
    int off_x = 0, off_y = 0;
    core::GrayImage region = apply_roi(img, cfg.roi, off_x, off_y);
    core::BinaryImage mask = morph_cleanup(binarize(region, threshold, mode));

    SelectionCriteria criteria;
    criteria.min_area = cfg.min_area > 0.0 ? cfg.min_area : default_min_area;
    criteria.max_area = cfg.max_area > 0.0
                            ? cfg.max_area
                            : default_max_frac * region.width * region.height;
    criteria.min_circularity = cfg.circularity_min;
    auto blob = select_feature_blob(mask, criteria);
    if (!blob) return std::nullopt;

    core::BinaryImage blob_mask(mask.width, mask.height, 0);
    for (auto [r, c] : blob->pixels) blob_mask.at(r, c) = 1;
    auto [x, y] = center_of_mass(blob_mask);
    return FeatureEstimate{x + off_x, y + off_y, std::clamp(blob->circularity, 0.0, 1.0)};
}

} // namespace

std::optional<FeatureEstimate> detect_pupil(const core::GrayImage& img,
                                            const ThresholdConfig& cfg) {
    return detect_feature(img, cfg, cfg.pupil_threshold, BinarizeMode::DarkBelow, 16.0, 0.6);
}

std::optional<FeatureEstimate> detect_cr(const core::GrayImage& img, const ThresholdConfig& cfg) {
    return detect_feature(img, cfg, cfg.cr_threshold, BinarizeMode::BrightAbove, 4.0, 0.05);
}

PupilPostResult postprocess_unet_mask(const core::FloatImage& prob_map, int crop_x, int crop_y) {
    core::BinaryImage mask(prob_map.width, prob_map.height, 0);
    for (std::size_t i = 0; i < prob_map.size(); ++i)
        mask.values[i] = prob_map.values[i] >= 0.99 ? 1 : 0;
    mask = morph_cleanup(mask);

    SelectionCriteria criteria;  // any surviving blob qualifies
    auto blob = select_feature_blob(mask, criteria);
    if (!blob) throw std::runtime_error("postprocess_unet_mask: no blob found");

    core::BinaryImage blob_mask(mask.width, mask.height, 0);
    for (auto [r, c] : blob->pixels) blob_mask.at(r, c) = 1;
    auto [cx, cy] = center_of_mass(blob_mask);

    std::vector<std::pair<double, double>> boundary;
    boundary.reserve(blob->boundary.size());
    for (auto [r, c] : blob->boundary) boundary.push_back({static_cast<double>(c), static_cast<double>(r)});

    PupilPostResult out;
    out.x = cx + crop_x;
    out.y = cy + crop_y;
    out.ellipse = fit_ellipse(boundary);
    out.ellipse.center_x += crop_x;
    out.ellipse.center_y += crop_y;
    double edge_dist = std::min({cx, cy, prob_map.width - 1 - cx, prob_map.height - 1 - cy});
    out.redo = edge_dist < out.ellipse.semi_major;
    return out;
}

std::vector<FrameAnalysis> analyze_frames(const std::string& frames_dir,
                                          const ThresholdConfig& cfg) {
    cfg.validate();
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(frames_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".png")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());

    std::vector<FrameAnalysis> out(files.size());
    for (std::size_t i = 0; i < files.size(); ++i) {
        FrameAnalysis& f = out[i];
        f.frame_index = i;
        f.file = files[i];
        try {
            core::GrayImage img = core::read_png_gray8(files[i]);
            if (auto pupil = detect_pupil(img, cfg)) {
                f.pupil_valid = true;
                f.pupil_x = pupil->x;
                f.pupil_y = pupil->y;
            }
            if (auto cr = detect_cr(img, cfg)) {
                f.cr_valid = true;
                f.cr_x = cr->x;
                f.cr_y = cr->y;
            }
        } catch (const std::exception&) {
            // Unreadable frame: leave both features invalid and keep going.
        }
    }
    return out;
}

void write_analysis_csv(const std::vector<FrameAnalysis>& frames, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "frame_index,pupil_x,pupil_y,cr_x,cr_y,valid_flags\n";
    out.precision(17);
    for (const auto& f : frames) {
        int flags = (f.pupil_valid ? 1 : 0) | (f.cr_valid ? 2 : 0);
        out << f.frame_index << ',' << f.pupil_x << ',' << f.pupil_y << ',' << f.cr_x << ','
            << f.cr_y << ',' << flags << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<FrameAnalysis> read_analysis_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path);
    std::vector<FrameAnalysis> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        FrameAnalysis f;
        std::getline(row, field, ',');
        f.frame_index = std::stoull(field);
        std::getline(row, field, ',');
        f.pupil_x = std::stod(field);
        std::getline(row, field, ',');
        f.pupil_y = std::stod(field);
        std::getline(row, field, ',');
        f.cr_x = std::stod(field);
        std::getline(row, field, ',');
        f.cr_y = std::stod(field);
        if (!std::getline(row, field, ',')) throw std::runtime_error("malformed CSV row: " + line);
        int flags = std::stoi(field);
        f.pupil_valid = flags & 1;
        f.cr_valid = flags & 2;
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace leyes::vision

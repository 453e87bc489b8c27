#include "leyes/vision/binary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace leyes::vision {

core::BinaryImage binarize(const core::GrayImage& img, double threshold, BinarizeMode mode) {
    if (threshold < 0.0 || threshold > 1.0)
        throw std::invalid_argument("binarize: threshold outside [0, 1]");
    core::BinaryImage out(img.width, img.height, 0);
    for (std::size_t i = 0; i < img.size(); ++i) {
        bool mark = mode == BinarizeMode::DarkBelow ? img.values[i] < threshold
                                                    : img.values[i] >= threshold;
        out.values[i] = mark ? 1 : 0;
    }
    return out;
}

core::BinaryImage fill_holes(const core::BinaryImage& binary) {
    // Flood the 4-connected background from the border; anything not reached
    // is an interior hole.
    core::BinaryImage reached(binary.width, binary.height, 0);
    std::queue<std::pair<int, int>> q;
    auto push = [&](int r, int c) {
        if (binary.in_bounds(r, c) && !binary.at(r, c) && !reached.at(r, c)) {
            reached.at(r, c) = 1;
            q.push({r, c});
        }
    };
    for (int c = 0; c < binary.width; ++c) {
        push(0, c);
        push(binary.height - 1, c);
    }
    for (int r = 0; r < binary.height; ++r) {
        push(r, 0);
        push(r, binary.width - 1);
    }
    while (!q.empty()) {
        auto [r, c] = q.front();
        q.pop();
        push(r - 1, c);
        push(r + 1, c);
        push(r, c - 1);
        push(r, c + 1);
    }
    core::BinaryImage out(binary.width, binary.height, 0);
    for (std::size_t i = 0; i < binary.values.size(); ++i)
        out.values[i] = (binary.values[i] || !reached.values[i]) ? 1 : 0;
    return out;
}

namespace {

core::BinaryImage erode_cross(const core::BinaryImage& img) {
    core::BinaryImage out(img.width, img.height, 0);
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c) {
            bool keep = img.at(r, c) && img.in_bounds(r - 1, c) && img.at(r - 1, c) &&
                        img.in_bounds(r + 1, c) && img.at(r + 1, c) && img.in_bounds(r, c - 1) &&
                        img.at(r, c - 1) && img.in_bounds(r, c + 1) && img.at(r, c + 1);
            out.at(r, c) = keep ? 1 : 0;
        }
    return out;
}

/// Label 8-connected foreground components; returns the label map (0 =
/// background) and the component count.
std::pair<std::vector<int>, int> label_components(const core::BinaryImage& binary) {
    std::vector<int> labels(binary.values.size(), 0);
    int next = 0;
    std::queue<std::pair<int, int>> q;
    for (int r0 = 0; r0 < binary.height; ++r0) {
        for (int c0 = 0; c0 < binary.width; ++c0) {
            std::size_t idx0 = static_cast<std::size_t>(r0) * binary.width + c0;
            if (!binary.values[idx0] || labels[idx0]) continue;
            labels[idx0] = ++next;
            q.push({r0, c0});
            while (!q.empty()) {
                auto [r, c] = q.front();
                q.pop();
                for (int dr = -1; dr <= 1; ++dr)
                    for (int dc = -1; dc <= 1; ++dc) {
                        int nr = r + dr, nc = c + dc;
                        if (!binary.in_bounds(nr, nc)) continue;
                        std::size_t idx = static_cast<std::size_t>(nr) * binary.width + nc;
                        if (binary.values[idx] && !labels[idx]) {
                            labels[idx] = next;
                            q.push({nr, nc});
                        }
                    }
            }
        }
    }
    return {std::move(labels), next};
}

// Moore neighborhood in clockwise screen order starting west.
constexpr int kDr[8] = {0, -1, -1, -1, 0, 1, 1, 1};
constexpr int kDc[8] = {-1, -1, 0, 1, 1, 1, 0, -1};

/// Trace the outer contour of the component containing (start_r, start_c),
/// which must be its first pixel in row-major order (west and north neighbors
/// are then background). Moore-neighbor tracing with backtracking and Jacob's
/// stopping criterion; returns the contour length with sqrt(2)-weighted
/// diagonal steps.
double trace_boundary(const std::vector<int>& labels, int width, int height, int label,
                      int start_r, int start_c, std::vector<std::pair<int, int>>& contour) {
    auto is_fg = [&](int r, int c) {
        return r >= 0 && r < height && c >= 0 && c < width &&
               labels[static_cast<std::size_t>(r) * width + c] == label;
    };
    auto dir_between = [](int from_r, int from_c, int to_r, int to_c) {
        for (int d = 0; d < 8; ++d)
            if (from_r + kDr[d] == to_r && from_c + kDc[d] == to_c) return d;
        return -1;
    };
    contour.clear();
    contour.push_back({start_r, start_c});

    int cur_r = start_r, cur_c = start_c;
    // Background pixel the contour was entered from; consecutive Moore
    // neighbors are Chebyshev-adjacent, so it stays in the neighborhood of
    // the next contour pixel.
    int back_r = start_r, back_c = start_c - 1;
    double length = 0.0;
    int first_dir = -1;
    const std::size_t guard = static_cast<std::size_t>(width) * height * 4 + 16;
    for (std::size_t step = 0; step < guard; ++step) {
        int ds = dir_between(cur_r, cur_c, back_r, back_c);
        int found = -1;
        for (int k = 1; k <= 8; ++k) {
            int d = (ds + k) % 8;
            if (is_fg(cur_r + kDr[d], cur_c + kDc[d])) {
                found = d;
                break;
            }
        }
        if (found < 0) return 0.0;  // isolated pixel
        if (cur_r == start_r && cur_c == start_c) {
            if (first_dir < 0)
                first_dir = found;
            else if (found == first_dir)
                break;  // about to leave the start the same way: loop closed
        }
        int prev = (found + 7) % 8;  // last examined neighbor, background
        back_r = cur_r + kDr[prev];
        back_c = cur_c + kDc[prev];
        cur_r += kDr[found];
        cur_c += kDc[found];
        length += (kDr[found] != 0 && kDc[found] != 0) ? std::numbers::sqrt2 : 1.0;
        contour.push_back({cur_r, cur_c});
    }
    if (contour.size() > 1 && contour.back() == std::make_pair(start_r, start_c)) contour.pop_back();
    return length;
}

} // namespace

core::BinaryImage morph_cleanup(const core::BinaryImage& binary) {
    core::BinaryImage filled = fill_holes(binary);
    // Opening by reconstruction: components erased entirely by a 3x3-cross
    // erosion are speckle and get dropped; surviving components keep their
    // exact outer boundary.
    core::BinaryImage eroded = erode_cross(filled);
    auto [labels, count] = label_components(filled);
    std::vector<std::uint8_t> survives(static_cast<std::size_t>(count) + 1, 0);
    for (std::size_t i = 0; i < eroded.values.size(); ++i)
        if (eroded.values[i]) survives[labels[i]] = 1;
    core::BinaryImage out(binary.width, binary.height, 0);
    for (std::size_t i = 0; i < filled.values.size(); ++i)
        out.values[i] = (filled.values[i] && survives[labels[i]]) ? 1 : 0;
    return out;
}

std::vector<BlobStats> connected_components(const core::BinaryImage& binary) {
    auto [labels, count] = label_components(binary);
    std::vector<BlobStats> blobs(count);
    std::vector<int> first_r(count, -1), first_c(count, -1);
    std::vector<int> min_r(count, binary.height), max_r(count, -1);
    std::vector<int> min_c(count, binary.width), max_c(count, -1);
    std::vector<double> sum_r(count, 0.0), sum_c(count, 0.0);

    for (int r = 0; r < binary.height; ++r)
        for (int c = 0; c < binary.width; ++c) {
            int label = labels[static_cast<std::size_t>(r) * binary.width + c];
            if (!label) continue;
            int k = label - 1;
            if (first_r[k] < 0) {
                first_r[k] = r;
                first_c[k] = c;
            }
            blobs[k].area += 1.0;
            blobs[k].pixels.push_back({r, c});
            sum_r[k] += r;
            sum_c[k] += c;
            min_r[k] = std::min(min_r[k], r);
            max_r[k] = std::max(max_r[k], r);
            min_c[k] = std::min(min_c[k], c);
            max_c[k] = std::max(max_c[k], c);
        }

    for (int k = 0; k < count; ++k) {
        BlobStats& b = blobs[k];
        b.centroid_x = sum_c[k] / b.area;
        b.centroid_y = sum_r[k] / b.area;
        b.bbox = {min_c[k], min_r[k], max_c[k] - min_c[k] + 1, max_r[k] - min_r[k] + 1};
        b.perimeter = trace_boundary(labels, binary.width, binary.height, k + 1, first_r[k],
                                     first_c[k], b.boundary);
        b.circularity = b.perimeter > 0.0
                            ? 4.0 * std::numbers::pi * b.area / (b.perimeter * b.perimeter)
                            : 1.0;  // degenerate tiny blob
    }
    return blobs;
}

std::optional<BlobStats> select_feature_blob(const core::BinaryImage& binary,
                                             const SelectionCriteria& criteria) {
    std::optional<BlobStats> best;
    for (auto& blob : connected_components(binary)) {
        if (blob.area < criteria.min_area || blob.area > criteria.max_area) continue;
        if (blob.circularity < criteria.min_circularity) continue;
        if (!best || blob.area > best->area) best = std::move(blob);
    }
    return best;
}

std::pair<double, double> center_of_mass(const core::FloatImage& img) {
    double total = 0.0, sx = 0.0, sy = 0.0;
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c) {
            double v = img.at(r, c);
            total += v;
            sx += c * v;
            sy += r * v;
        }
    if (total <= 0.0) throw std::domain_error("center_of_mass: zero total mass");
    return {sx / total, sy / total};
}

std::pair<double, double> center_of_mass(const core::BinaryImage& mask) {
    double total = 0.0, sx = 0.0, sy = 0.0;
    for (int r = 0; r < mask.height; ++r)
        for (int c = 0; c < mask.width; ++c)
            if (mask.at(r, c)) {
                total += 1.0;
                sx += c;
                sy += r;
            }
    if (total <= 0.0) throw std::domain_error("center_of_mass: zero total mass");
    return {sx / total, sy / total};
}

} // namespace leyes::vision

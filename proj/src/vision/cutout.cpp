#include "leyes/vision/cutout.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leyes::vision {

core::GrayImage crop_with_replication(const core::GrayImage& img, double center_x,
                                      double center_y, int size) {
    int cx = static_cast<int>(std::lround(center_x));
    int cy = static_cast<int>(std::lround(center_y));
    if (cx < 0 || cx >= img.width || cy < 0 || cy >= img.height)
        throw std::invalid_argument("crop_with_replication: center outside image");
    int ox = cx - size / 2, oy = cy - size / 2;
    core::GrayImage out(size, size);
    for (int r = 0; r < size; ++r) {
        int sr = std::clamp(oy + r, 0, img.height - 1);
        for (int c = 0; c < size; ++c) {
            int sc = std::clamp(ox + c, 0, img.width - 1);
            out.at(r, c) = img.at(sr, sc);
        }
    }
    return out;
}

core::GrayImage make_cr_cutout(const core::GrayImage& img, double center_x, double center_y) {
    core::GrayImage out = crop_with_replication(img, center_x, center_y);
    const double mid = kCutoutSize / 2;  // the rounded center lands here
    const double r2 = kCrMaskRadius * kCrMaskRadius;
    for (int r = 0; r < out.height; ++r)
        for (int c = 0; c < out.width; ++c) {
            double dy = r - mid, dx = c - mid;
            if (dx * dx + dy * dy > r2) out.at(r, c) = 0.0;
        }
    return out;
}

core::GrayImage make_pupil_cutout(const core::GrayImage& img, double center_x, double center_y,
                                  const EllipseParams& ellipse) {
    core::GrayImage out = crop_with_replication(img, center_x, center_y);
    int cx = static_cast<int>(std::lround(center_x));
    int cy = static_cast<int>(std::lround(center_y));
    int ox = cx - kCutoutSize / 2, oy = cy - kCutoutSize / 2;

    double ct = std::cos(ellipse.theta), st = std::sin(ellipse.theta);
    double sa = kPupilMaskScale * ellipse.semi_major;
    double sb = kPupilMaskScale * ellipse.semi_minor;
    const double gray = 128.0 / 255.0;
    for (int r = 0; r < out.height; ++r)
        for (int c = 0; c < out.width; ++c) {
            double dx = (ox + c) - ellipse.center_x;
            double dy = (oy + r) - ellipse.center_y;
            double u = (dx * ct + dy * st) / sa;
            double v = (-dx * st + dy * ct) / sb;
            if (u * u + v * v > 1.0) out.at(r, c) = gray;
        }
    return out;
}

} // namespace leyes::vision

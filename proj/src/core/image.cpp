#include "leyes/core/image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace leyes::core {

GrayImage finalize_image(const FloatImage& img) {
    GrayImage out;
    out.width = img.width;
    out.height = img.height;
    out.values.resize(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) {
        double v = std::clamp(img.values[i], 0.0, 255.0);
        // std::round is round-half-away-from-zero, which is the convention
        // fixed for this project.
        out.values[i] = std::round(v) / 255.0;
    }
    return out;
}

FloatImage to_float(const GrayImage& img) {
    FloatImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.size(); ++i) out.values[i] = img.values[i] * 255.0;
    return out;
}

std::vector<std::uint8_t> GrayImage::to_bytes() const {
    std::vector<std::uint8_t> bytes(size());
    for (std::size_t i = 0; i < size(); ++i)
        bytes[i] = static_cast<std::uint8_t>(values[i] * 255.0 + 0.5);
    return bytes;
}

GrayImage GrayImage::from_bytes(int width, int height, const std::vector<std::uint8_t>& bytes) {
    GrayImage out;
    out.width = width;
    out.height = height;
    out.values.resize(bytes.size());
    for (std::size_t i = 0; i < bytes.size(); ++i) out.values[i] = bytes[i] / 255.0;
    return out;
}

std::size_t BinaryImage::count() const {
    return std::accumulate(values.begin(), values.end(), std::size_t{0});
}

} // namespace leyes::core

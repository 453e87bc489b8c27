#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace leyes::core {

/// Working image: real-valued intensities in 8-bit units, row-major.
struct FloatImage {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    FloatImage() = default;
    FloatImage(int w, int h, double fill = 0.0)
        : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {
        if (w <= 0 || h <= 0) throw std::invalid_argument("FloatImage: non-positive dimensions");
    }

    double& at(int row, int col) { return values[static_cast<std::size_t>(row) * width + col]; }
    double at(int row, int col) const { return values[static_cast<std::size_t>(row) * width + col]; }
    std::size_t size() const { return values.size(); }
    bool in_bounds(int row, int col) const {
        return row >= 0 && row < height && col >= 0 && col < width;
    }
};

/// Finalized image: each value is an exact multiple of 1/255 in [0, 1].
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0)
        : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {
        if (w <= 0 || h <= 0) throw std::invalid_argument("GrayImage: non-positive dimensions");
    }

    double& at(int row, int col) { return values[static_cast<std::size_t>(row) * width + col]; }
    double at(int row, int col) const { return values[static_cast<std::size_t>(row) * width + col]; }
    std::uint8_t byte_at(int row, int col) const {
        return static_cast<std::uint8_t>(at(row, col) * 255.0 + 0.5);
    }
    std::size_t size() const { return values.size(); }

    std::vector<std::uint8_t> to_bytes() const;
    static GrayImage from_bytes(int width, int height, const std::vector<std::uint8_t>& bytes);
};

/// Clamp to [0, 255], round half away from zero, rescale to [0, 1].
GrayImage finalize_image(const FloatImage& img);

/// Inverse of the finalize scaling (values back in 8-bit units).
FloatImage to_float(const GrayImage& img);

/// Binary mask, row-major, 0/1 bytes.
struct BinaryImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> values;

    BinaryImage() = default;
    BinaryImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {}

    std::uint8_t& at(int row, int col) { return values[static_cast<std::size_t>(row) * width + col]; }
    std::uint8_t at(int row, int col) const { return values[static_cast<std::size_t>(row) * width + col]; }
    bool in_bounds(int row, int col) const {
        return row >= 0 && row < height && col >= 0 && col < width;
    }
    std::size_t count() const;
};

} // namespace leyes::core

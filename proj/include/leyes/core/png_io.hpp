#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leyes/core/image.hpp"

namespace leyes::core {

/// Encode an 8-bit grayscale PNG (no interlacing) into memory.
std::vector<std::uint8_t> encode_png_gray8(const GrayImage& img);

void write_png_gray8(const GrayImage& img, const std::string& path);

/// Decode a PNG to 8-bit grayscale. Throws std::runtime_error on malformed
/// input; non-grayscale inputs are converted.
GrayImage read_png_gray8(const std::string& path);

} // namespace leyes::core

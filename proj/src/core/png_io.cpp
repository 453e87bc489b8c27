#include "leyes/core/png_io.hpp"

#include <png.h>

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace leyes::core {

namespace {

void append_bytes(png_structp png, png_bytep data, png_size_t length) {
    auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
    out->insert(out->end(), data, data + length);
}

struct MemReader {
    const std::uint8_t* data;
    std::size_t size;
    std::size_t pos = 0;
};

void read_bytes(png_structp png, png_bytep data, png_size_t length) {
    auto* r = static_cast<MemReader*>(png_get_io_ptr(png));
    if (r->pos + length > r->size) {
        png_error(png, "short read");
        return;
    }
    std::memcpy(data, r->data + r->pos, length);
    r->pos += length;
}

void on_warning(png_structp, png_const_charp) {}

} // namespace

std::vector<std::uint8_t> encode_png_gray8(const GrayImage& img) {
    std::vector<std::uint8_t> out;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, on_warning);
    if (!png) throw std::runtime_error("png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw std::runtime_error("png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error("png encode failed");
    }
    png_set_write_fn(png, &out, append_bytes, nullptr);
    png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<std::uint8_t> row_bytes = img.to_bytes();
    for (int r = 0; r < img.height; ++r)
        png_write_row(png, row_bytes.data() + static_cast<std::size_t>(r) * img.width);
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
    return out;
}

void write_png_gray8(const GrayImage& img, const std::string& path) {
    std::vector<std::uint8_t> bytes = encode_png_gray8(img);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

GrayImage read_png_gray8(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());

    if (data.size() < 8 || png_sig_cmp(data.data(), 0, 8) != 0)
        throw std::runtime_error("not a PNG: " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, on_warning);
    if (!png) throw std::runtime_error("png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw std::runtime_error("png_create_info_struct failed");
    }
    MemReader reader{data.data(), data.size()};
    std::vector<std::uint8_t> pixels;
    int width = 0, height = 0;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("png decode failed: " + path);
    }
    png_set_read_fn(png, &reader, read_bytes);
    png_read_info(png, info);
    width = static_cast<int>(png_get_image_width(png, info));
    height = static_cast<int>(png_get_image_height(png, info));
    int color = png_get_color_type(png, info);
    int depth = png_get_bit_depth(png, info);
    if (depth == 16) png_set_strip_16(png);
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    if (color == PNG_COLOR_TYPE_RGB || color == PNG_COLOR_TYPE_RGB_ALPHA ||
        color == PNG_COLOR_TYPE_PALETTE)
        png_set_rgb_to_gray_fixed(png, 1, -1, -1);
    png_read_update_info(png, info);
    pixels.resize(static_cast<std::size_t>(width) * height);
    for (int r = 0; r < height; ++r)
        png_read_row(png, pixels.data() + static_cast<std::size_t>(r) * width, nullptr);
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return GrayImage::from_bytes(width, height, pixels);
}

} // namespace leyes::core

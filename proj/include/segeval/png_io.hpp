#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <png.h>

#include "segeval/label_image.hpp"

namespace segeval {

namespace detail {

// Quiet replacements for libpng's default handlers: the error text lands in
// the heap buffer passed as error_ptr (safe to read after the longjmp) and
// becomes part of the thrown exception instead of going to stderr.
inline void capture_png_error(png_structp png, png_const_charp message) {
    auto* capture = static_cast<std::string*>(png_get_error_ptr(png));
    if (capture && message) *capture = message;
    png_longjmp(png, 1);
}

inline void ignore_png_warning(png_structp, png_const_charp) {}

struct PngReadHandle {
    std::FILE* fp = nullptr;
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngReadHandle() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        if (fp) std::fclose(fp);
    }
};

struct PngWriteHandle {
    std::FILE* fp = nullptr;
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngWriteHandle() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        if (fp) std::fclose(fp);
    }
};

}  // namespace detail

/// Decode an 8-bit PNG (RGB, RGBA, grayscale, or paletted) into a label grid.
/// Colour pixels pack to 2^16*R + 2^8*G + B with alpha ignored; palettes are
/// resolved to their colours first; grayscale values are used directly.
/// `background` overrides the background label (default: packed black, 0).
inline LabelImage load_label_image(const std::filesystem::path& path,
                                   std::optional<Label> background = std::nullopt) {
    const auto error_text = std::make_unique<std::string>();
    detail::PngReadHandle h;
    h.fp = std::fopen(path.string().c_str(), "rb");
    if (!h.fp) throw std::runtime_error("cannot open image file: " + path.string());
    h.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, error_text.get(),
                                   detail::capture_png_error, detail::ignore_png_warning);
    if (h.png) h.info = png_create_info_struct(h.png);
    if (!h.png || !h.info) throw std::runtime_error("libpng initialisation failed");

    if (setjmp(png_jmpbuf(h.png)))
        throw std::runtime_error("failed to decode PNG: " + path.string() + " (" + *error_text +
                                 ")");

    png_init_io(h.png, h.fp);
    png_read_info(h.png, h.info);

    const png_uint_32 width = png_get_image_width(h.png, h.info);
    const png_uint_32 height = png_get_image_height(h.png, h.info);
    const int bit_depth = png_get_bit_depth(h.png, h.info);
    const int color_type = png_get_color_type(h.png, h.info);

    if (width == 0 || height == 0)
        throw std::runtime_error("PNG has zero dimension: " + path.string());
    if (bit_depth > 8)
        throw std::runtime_error("unsupported PNG bit depth " + std::to_string(bit_depth) +
                                 " (only 8-bit images are supported): " + path.string());

    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(h.png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
        png_set_expand_gray_1_2_4_to_8(h.png);
    png_set_strip_alpha(h.png);
    png_read_update_info(h.png, h.info);

    const int channels = png_get_channels(h.png, h.info);
    if (channels != 1 && channels != 3)
        throw std::runtime_error("unsupported PNG pixel layout (" + std::to_string(channels) +
                                 " channels after expansion): " + path.string());

    const std::size_t rowbytes = png_get_rowbytes(h.png, h.info);
    std::vector<unsigned char> data(rowbytes * height);
    std::vector<png_bytep> rows(height);
    for (png_uint_32 y = 0; y < height; ++y) rows[y] = data.data() + std::size_t(y) * rowbytes;

    // Re-arm the jump target now that the buffers exist; png_read_image only
    // writes into their bytes, so they stay destructible after a longjmp.
    if (setjmp(png_jmpbuf(h.png)))
        throw std::runtime_error("failed to decode PNG: " + path.string() + " (" + *error_text +
                                 ")");
    png_read_image(h.png, rows.data());
    png_read_end(h.png, nullptr);

    std::vector<Label> labels(std::size_t(width) * height);
    if (channels == 1) {
        for (std::size_t y = 0; y < height; ++y) {
            const unsigned char* src = data.data() + y * rowbytes;
            Label* dst = labels.data() + y * width;
            for (std::size_t x = 0; x < width; ++x) dst[x] = src[x];
        }
    } else {
        for (std::size_t y = 0; y < height; ++y) {
            const unsigned char* src = data.data() + y * rowbytes;
            Label* dst = labels.data() + y * width;
            for (std::size_t x = 0; x < width; ++x)
                dst[x] = pack_rgb(src[3 * x], src[3 * x + 1], src[3 * x + 2]);
        }
    }

    return LabelImage(int(width), int(height), std::move(labels), background.value_or(0));
}

/// Encode a label grid as a PNG whose decode reproduces the same label values:
/// 8-bit grayscale when every label fits a byte, otherwise 8-bit RGB with the
/// inverse of the packing formula. Labels above 0xFFFFFF are not encodable.
inline void save_label_image(const LabelImage& image, const std::filesystem::path& path) {
    const Label max_label =
        image.labels.empty() ? 0 : *std::max_element(image.labels.begin(), image.labels.end());
    if (max_label > 0xFFFFFF)
        throw std::invalid_argument("label " + std::to_string(max_label) +
                                    " exceeds the 24-bit RGB packing range");
    const bool gray = max_label <= 0xFF;
    const std::size_t channels = gray ? 1 : 3;

    std::vector<unsigned char> data(image.pixel_count() * channels);
    if (gray) {
        for (std::size_t i = 0; i < image.pixel_count(); ++i)
            data[i] = static_cast<unsigned char>(image.labels[i]);
    } else {
        for (std::size_t i = 0; i < image.pixel_count(); ++i) {
            const Label v = image.labels[i];
            data[3 * i] = static_cast<unsigned char>(v >> 16);
            data[3 * i + 1] = static_cast<unsigned char>(v >> 8);
            data[3 * i + 2] = static_cast<unsigned char>(v);
        }
    }
    std::vector<png_bytep> rows(image.height);
    for (int y = 0; y < image.height; ++y)
        rows[y] = data.data() + std::size_t(y) * image.width * channels;

    const auto error_text = std::make_unique<std::string>();
    detail::PngWriteHandle h;
    h.fp = std::fopen(path.string().c_str(), "wb");
    if (!h.fp) throw std::runtime_error("cannot open output file: " + path.string());
    h.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, error_text.get(),
                                    detail::capture_png_error, detail::ignore_png_warning);
    if (h.png) h.info = png_create_info_struct(h.png);
    if (!h.png || !h.info) throw std::runtime_error("libpng initialisation failed");

    if (setjmp(png_jmpbuf(h.png)))
        throw std::runtime_error("failed to encode PNG: " + path.string() + " (" + *error_text +
                                 ")");

    png_init_io(h.png, h.fp);
    png_set_IHDR(h.png, h.info, png_uint_32(image.width), png_uint_32(image.height), 8,
                 gray ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(h.png, h.info);
    png_write_image(h.png, rows.data());
    png_write_end(h.png, nullptr);
}

}  // namespace segeval

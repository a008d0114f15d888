#pragma once

// Synthetic inputs for tests: seeded random label images, perturbations that
// produce interesting score distributions, raw libpng writers (the reference
// encoder used to probe the loader), and scratch directories.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <unistd.h>

#include <png.h>

#include "segeval/label_image.hpp"

namespace synthetic {

using segeval::Label;
using segeval::LabelImage;

// --- random label images ----------------------------------------------------

inline LabelImage random_label_image(std::mt19937& rng, int max_width, int max_height,
                                     int max_regions, Label background = 0) {
    std::uniform_int_distribution<int> width_dist(1, max_width), height_dist(1, max_height);
    const int w = width_dist(rng);
    const int h = height_dist(rng);
    std::vector<Label> labels(std::size_t(w) * h, background);

    std::uniform_int_distribution<int> region_dist(0, max_regions);
    const int regions = region_dist(rng);
    for (int k = 0; k < regions; ++k) {
        const Label value = background + 1 + Label(k);
        std::uniform_int_distribution<int> x_dist(0, w - 1), y_dist(0, h - 1);
        const int cx = x_dist(rng), cy = y_dist(rng);
        std::uniform_int_distribution<int> extent(0, std::max(1, std::min(w, h) / 3));
        const int rx = extent(rng), ry = extent(rng);
        for (int y = std::max(0, cy - ry); y <= std::min(h - 1, cy + ry); ++y)
            for (int x = std::max(0, cx - rx); x <= std::min(w - 1, cx + rx); ++x)
                labels[std::size_t(y) * w + x] = value;
    }
    return LabelImage(w, h, std::move(labels), background);
}

/// Derive a test image from a truth image: relabel injectively, then knock
/// pixels to background, reassign some to another region, and sometimes split
/// one region along a vertical cut. Keeps pairs off the all-or-nothing ends.
inline LabelImage perturbed_copy(std::mt19937& rng, const LabelImage& source) {
    std::vector<Label> labels = source.labels;
    const Label bg = source.background;

    std::vector<Label> present;
    for (Label v : labels)
        if (v != bg && (present.empty() || std::find(present.begin(), present.end(), v) ==
                                               present.end()))
            present.push_back(v);

    std::uniform_int_distribution<Label> offset_dist(0, 500);
    const Label offset = offset_dist(rng);  // injective shift away from bg
    for (Label& v : labels)
        if (v != bg) v = v + 1000 + offset;

    std::uniform_int_distribution<int> percent(0, 99);
    const int drop_percent = percent(rng) / 4;      // up to 25% to background
    const int reassign_percent = percent(rng) / 5;  // up to 20% to a sibling region
    for (Label& v : labels) {
        if (v == bg) continue;
        const int roll = percent(rng);
        if (roll < drop_percent) {
            v = bg;
        } else if (roll < drop_percent + reassign_percent && present.size() > 1) {
            std::uniform_int_distribution<std::size_t> pick(0, present.size() - 1);
            v = present[pick(rng)] + 1000 + offset;
        }
    }

    if (!present.empty() && percent(rng) < 40) {
        const Label victim = present[std::uniform_int_distribution<std::size_t>(
            0, present.size() - 1)(rng)] + 1000 + offset;
        const int cut = std::uniform_int_distribution<int>(0, source.width - 1)(rng);
        const Label split_value = victim + 7919;  // stays clear of the shifted labels
        for (int y = 0; y < source.height; ++y)
            for (int x = cut; x < source.width; ++x) {
                Label& v = labels[std::size_t(y) * source.width + x];
                if (v == victim) v = split_value;
            }
    }
    return LabelImage(source.width, source.height, std::move(labels), bg);
}

/// Apply an injective relabeling that fixes the background.
inline LabelImage relabeled(const LabelImage& source, Label multiplier, Label shift) {
    std::vector<Label> labels = source.labels;
    for (Label& v : labels)
        if (v != source.background) v = v * multiplier + shift;
    return LabelImage(source.width, source.height, std::move(labels), source.background);
}

/// 2x nearest-neighbour upscale: every pixel becomes a 2x2 block.
inline LabelImage upscaled2x(const LabelImage& source) {
    std::vector<Label> labels(source.pixel_count() * 4);
    const int w2 = source.width * 2;
    for (int y = 0; y < source.height; ++y)
        for (int x = 0; x < source.width; ++x) {
            const Label v = source.at(x, y);
            labels[std::size_t(2 * y) * w2 + 2 * x] = v;
            labels[std::size_t(2 * y) * w2 + 2 * x + 1] = v;
            labels[std::size_t(2 * y + 1) * w2 + 2 * x] = v;
            labels[std::size_t(2 * y + 1) * w2 + 2 * x + 1] = v;
        }
    return LabelImage(w2, source.height * 2, std::move(labels), source.background);
}

/// A tray of across*down plants on a background grid. Plant (r,c) fills its
/// cell's interior (inset one pixel from the cell bounds used by crop_grid)
/// with vertical stripes cycling through `regions_per_cell[idx]` distinct
/// labels; label sets never repeat across cells.
inline LabelImage tray_label_image(int width, int height, int across, int down,
                                   const std::vector<int>& regions_per_cell,
                                   Label label_base = 1000) {
    if (regions_per_cell.size() != std::size_t(across) * down)
        throw std::invalid_argument("regions_per_cell must have one entry per plant");
    std::vector<Label> labels(std::size_t(width) * height, 0);
    for (int r = 0; r < down; ++r) {
        const int y0 = int(std::int64_t(r) * height / down);
        const int y1 = int(std::int64_t(r + 1) * height / down);
        for (int c = 0; c < across; ++c) {
            const int x0 = int(std::int64_t(c) * width / across);
            const int x1 = int(std::int64_t(c + 1) * width / across);
            const std::size_t idx = std::size_t(r) * across + c;
            const int regions = regions_per_cell[idx];
            if (regions <= 0) continue;
            if (x1 - x0 - 2 < regions)
                throw std::invalid_argument("cell too narrow for the requested region count");
            for (int y = y0 + 1; y < y1 - 1; ++y)
                for (int x = x0 + 1; x < x1 - 1; ++x)
                    labels[std::size_t(y) * width + x] =
                        label_base * Label(idx + 1) + Label((x - x0 - 1) % regions) + 1;
        }
    }
    return LabelImage(width, height, std::move(labels), 0);
}

// --- instrumentation ---------------------------------------------------------

/// Grid adapter that tallies every label read.
struct CountingGrid {
    const LabelImage* base = nullptr;
    std::size_t* reads = nullptr;
    int width = 0;
    int height = 0;
    Label background = 0;
    Label label_at(std::size_t i) const {
        ++*reads;
        return base->labels[i];
    }
};

inline CountingGrid counting(const LabelImage& image, std::size_t* counter) {
    return CountingGrid{&image, counter, image.width, image.height, image.background};
}

// --- raw PNG writers (reference encoder for loader tests) --------------------

namespace detail {

struct RawPngWriter {
    std::FILE* fp = nullptr;
    png_structp png = nullptr;
    png_infop info = nullptr;

    explicit RawPngWriter(const std::filesystem::path& path) {
        fp = std::fopen(path.string().c_str(), "wb");
        if (fp) png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        if (png) info = png_create_info_struct(png);
        if (!fp || !png || !info) throw std::runtime_error("test PNG writer setup failed");
    }
    ~RawPngWriter() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        if (fp) std::fclose(fp);
    }

    void write(png_uint_32 w, png_uint_32 h, int bit_depth, int color_type,
               const std::vector<unsigned char>& data, std::size_t rowbytes,
               const std::vector<std::array<unsigned char, 3>>* palette = nullptr,
               bool interlaced = false) {
        std::vector<png_bytep> rows(h);
        for (png_uint_32 y = 0; y < h; ++y)
            rows[y] = const_cast<png_bytep>(data.data() + y * rowbytes);
        if (setjmp(png_jmpbuf(png))) throw std::runtime_error("test PNG writer failed");
        png_init_io(png, fp);
        png_set_IHDR(png, info, w, h, bit_depth, color_type,
                     interlaced ? PNG_INTERLACE_ADAM7 : PNG_INTERLACE_NONE,
                     PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
        std::vector<png_color> colors;
        if (palette) {
            for (const auto& entry : *palette)
                colors.push_back(png_color{entry[0], entry[1], entry[2]});
            png_set_PLTE(png, info, colors.data(), int(colors.size()));
        }
        png_set_rows(png, info, rows.data());
        png_write_png(png, info, PNG_TRANSFORM_IDENTITY, nullptr);
    }
};

}  // namespace detail

inline void write_png_rgb(const std::filesystem::path& path, int w, int h,
                          const std::vector<unsigned char>& rgb, bool interlaced = false) {
    detail::RawPngWriter(path).write(w, h, 8, PNG_COLOR_TYPE_RGB, rgb, std::size_t(w) * 3,
                                     nullptr, interlaced);
}

inline void write_png_rgba(const std::filesystem::path& path, int w, int h,
                           const std::vector<unsigned char>& rgba) {
    detail::RawPngWriter(path).write(w, h, 8, PNG_COLOR_TYPE_RGB_ALPHA, rgba, std::size_t(w) * 4);
}

inline void write_png_gray(const std::filesystem::path& path, int w, int h,
                           const std::vector<unsigned char>& gray) {
    detail::RawPngWriter(path).write(w, h, 8, PNG_COLOR_TYPE_GRAY, gray, std::size_t(w));
}

inline void write_png_gray16(const std::filesystem::path& path, int w, int h,
                             const std::vector<unsigned char>& gray16_be) {
    detail::RawPngWriter(path).write(w, h, 16, PNG_COLOR_TYPE_GRAY, gray16_be,
                                     std::size_t(w) * 2);
}

inline void write_png_palette(const std::filesystem::path& path, int w, int h,
                              const std::vector<unsigned char>& indices,
                              const std::vector<std::array<unsigned char, 3>>& palette) {
    detail::RawPngWriter(path).write(w, h, 8, PNG_COLOR_TYPE_PALETTE, indices, std::size_t(w),
                                     &palette);
}

// --- scratch directories ------------------------------------------------------

struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag) {
        static std::atomic<unsigned> counter{0};
        path = std::filesystem::temp_directory_path() /
               ("segeval_" + tag + "_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::filesystem::path file(const std::string& name) const { return path / name; }
};

}  // namespace synthetic

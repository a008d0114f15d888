#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace segeval {

/// A region label. Colour images pack to 2^16*R + 2^8*G + B; grayscale and
/// palette-index images keep their raw 8-bit values.
using Label = std::uint32_t;

inline constexpr Label pack_rgb(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    return (Label(r) << 16) | (Label(g) << 8) | Label(b);
}

/// Decoded label map: one label per pixel, row-major, plus the label value
/// treated as background. Immutable after construction.
class LabelImage {
public:
    int width = 0;
    int height = 0;
    std::vector<Label> labels;  // width*height entries, row-major
    Label background = 0;

    LabelImage() = default;

    LabelImage(int w, int h, std::vector<Label> data, Label bg)
        : width(w), height(h), labels(std::move(data)), background(bg) {
        if (width < 1 || height < 1)
            throw std::invalid_argument("label image dimensions must be at least 1x1, got " +
                                        std::to_string(width) + "x" + std::to_string(height));
        if (labels.size() != pixel_count())
            throw std::invalid_argument("label grid has " + std::to_string(labels.size()) +
                                        " entries, expected " + std::to_string(pixel_count()));
    }

    std::size_t pixel_count() const { return std::size_t(width) * std::size_t(height); }

    Label label_at(std::size_t i) const { return labels[i]; }

    Label at(int x, int y) const { return labels[std::size_t(y) * width + x]; }
};

/// Anything that exposes a label grid. Lets callers substitute instrumented
/// or lazily-generated grids for a concrete LabelImage.
template <typename G>
concept LabelGridLike = requires(const G& g, std::size_t i) {
    { g.width } -> std::convertible_to<int>;
    { g.height } -> std::convertible_to<int>;
    { g.background } -> std::convertible_to<Label>;
    { g.label_at(i) } -> std::convertible_to<Label>;
};

/// Grid of evenly spaced cells laid over a tray image: `across` cells per row,
/// `down` cells per column.
struct GridSpec {
    int across = 1;
    int down = 1;
};

/// Split an image into across*down cells, row-major. Cell (r,c) spans columns
/// [c*W/across, (c+1)*W/across) and rows [r*H/down, (r+1)*H/down); boundaries
/// round down, so the cells tile the image exactly.
inline std::vector<LabelImage> crop_grid(const LabelImage& image, GridSpec grid) {
    if (grid.across < 1 || grid.down < 1)
        throw std::invalid_argument("grid must have at least one cell in each direction");
    if (grid.across > image.width || grid.down > image.height)
        throw std::invalid_argument("grid " + std::to_string(grid.across) + "x" +
                                    std::to_string(grid.down) + " exceeds image " +
                                    std::to_string(image.width) + "x" + std::to_string(image.height));

    std::vector<LabelImage> cells;
    cells.reserve(std::size_t(grid.across) * grid.down);
    for (int r = 0; r < grid.down; ++r) {
        const int y0 = int(std::int64_t(r) * image.height / grid.down);
        const int y1 = int(std::int64_t(r + 1) * image.height / grid.down);
        for (int c = 0; c < grid.across; ++c) {
            const int x0 = int(std::int64_t(c) * image.width / grid.across);
            const int x1 = int(std::int64_t(c + 1) * image.width / grid.across);
            std::vector<Label> cell;
            cell.reserve(std::size_t(x1 - x0) * (y1 - y0));
            for (int y = y0; y < y1; ++y) {
                const Label* row = image.labels.data() + std::size_t(y) * image.width;
                cell.insert(cell.end(), row + x0, row + x1);
            }
            cells.emplace_back(x1 - x0, y1 - y0, std::move(cell), image.background);
        }
    }
    return cells;
}

}  // namespace segeval

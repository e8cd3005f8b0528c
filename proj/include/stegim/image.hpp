#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "stegim/errors.hpp"

namespace stegim {

// 8-bit raster image, row-major, channels interleaved (1 = gray, 3 = RGB).
struct RasterImage {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<std::uint8_t> samples;

    RasterImage() = default;
    RasterImage(int w, int h, int ch, std::uint8_t fill = 0);

    bool is_gray() const { return channels == 1; }
    bool is_rgb() const { return channels == 3; }
    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width) * height;
    }
    std::size_t sample_count() const { return pixel_count() * channels; }

    std::uint8_t& at(int x, int y, int ch = 0) {
        return samples[(static_cast<std::size_t>(y) * width + x) * channels + ch];
    }
    std::uint8_t at(int x, int y, int ch = 0) const {
        return samples[(static_cast<std::size_t>(y) * width + x) * channels + ch];
    }

    bool operator==(const RasterImage& o) const = default;
};

// Rectangular pixel region, w/h >= 1.
struct Region {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    bool contains(int px, int py) const {
        return px >= x && px < x + w && py >= y && py < y + h;
    }
    bool overlaps(const Region& o) const {
        return x < o.x + o.w && o.x < x + w && y < o.y + o.h && o.y < y + h;
    }
    bool within(const RasterImage& img) const {
        return x >= 0 && y >= 0 && w >= 1 && h >= 1 &&
               x + w <= img.width && y + h <= img.height;
    }
    std::size_t pixel_count() const {
        return static_cast<std::size_t>(w) * h;
    }
    bool operator==(const Region& o) const = default;
};

// Boolean tamper grid. cell=1 is a per-pixel map; cell=8 a per-block map.
// grid_w/grid_h count cells; img_w/img_h remember the source image so block
// maps can be rendered back at image scale.
struct TamperMap {
    int img_w = 0;
    int img_h = 0;
    int cell = 1;
    int grid_w = 0;
    int grid_h = 0;
    std::vector<std::uint8_t> flags; // 0/1 per cell, row-major

    static TamperMap pixel_map(int w, int h);
    static TamperMap block_map(int w, int h, int cell);

    bool get(int cx, int cy) const {
        return flags[static_cast<std::size_t>(cy) * grid_w + cx] != 0;
    }
    void set(int cx, int cy, bool v = true) {
        flags[static_cast<std::size_t>(cy) * grid_w + cx] = v ? 1 : 0;
    }
    std::size_t count() const;
    bool any() const { return count() > 0; }

    // Any-overlap coarsening of a pixel map onto a block grid.
    TamperMap coarsen(int block) const;
    // White = flagged, rendered at image scale.
    RasterImage to_image() const;
};

// HSV with v kept as the integer max channel so value-plane arithmetic is
// exact. h in [0,360), s in [0,1].
struct HsvPixel {
    double h = 0.0;
    double s = 0.0;
    int v = 0;
};

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    bool operator==(const Rgb&) const = default;
};

HsvPixel rgb_to_hsv(Rgb px);
Rgb hsv_to_rgb(const HsvPixel& px);

// Binary PGM (P5) / PPM (P6), maxval 255 only. Header comments accepted.
RasterImage load_image(const std::string& path);
void save_image(const RasterImage& img, const std::string& path);

// Same formats through memory, used by load/save and the tests.
RasterImage decode_netpbm(const std::vector<std::uint8_t>& data);
std::vector<std::uint8_t> encode_netpbm(const RasterImage& img);

} // namespace stegim

#pragma once

#include <cstdint>
#include <utility>

#include "stegim/image.hpp"
#include "stegim/keystream.hpp"

namespace stegim {

enum class TamperKind { region_fill, salt_pepper, bit_flips, paste };

// target with w or h == 0 means the whole image.
struct TamperSpec {
    TamperKind kind = TamperKind::region_fill;
    Region target{};
    int fill_value = 0;          // region_fill
    double density = 0.01;       // salt_pepper, in [0,1]
    StegoKey seed{};             // salt_pepper, bit_flips
    std::uint64_t flip_count = 1; // bit_flips
    Region src{};                // paste source
    int dst_x = 0;               // paste destination offset
    int dst_y = 0;
};

// Deterministic given the seed. The ground-truth map flags exactly the pixels
// whose samples changed, so re-diffing input/output reproduces it.
std::pair<RasterImage, TamperMap> apply_tamper(const RasterImage& img, const TamperSpec& spec);

// Standard precision/recall over flags. Pixel maps are coarsened by
// any-overlap when the other side is a block map; empty sets score 1.0.
std::pair<double, double> score_detector(const TamperMap& predicted, const TamperMap& truth);

} // namespace stegim

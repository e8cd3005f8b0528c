#pragma once

#include <cstdint>
#include <vector>

#include "stegim/image.hpp"
#include "stegim/keystream.hpp"

namespace stegim {

struct RoiWatermarkSpec {
    Region roi;
    std::vector<Region> roni; // embedding slots, traversed in list order
    StegoKey key{};
};

// In-bounds, roni pairwise disjoint and disjoint from roi.
void roiwm_validate(const RasterImage& img, const RoiWatermarkSpec& spec);

// Top 10% rows plus left/right 10% columns, built disjoint.
std::vector<Region> default_roni(const RasterImage& img);

std::uint64_t roiwm_capacity(const RasterImage& img, const RoiWatermarkSpec& spec);

// ROI samples -> LZW -> keystream XOR -> frame -> RONI LSBs, 1 bit/sample.
// ROI samples are never modified.
RasterImage roiwm_embed(const RasterImage& img, const RoiWatermarkSpec& spec);

struct RoiVerifyResult {
    TamperMap map;            // image-sized pixel map, flags confined to roi
    RasterImage recovered_roi; // reference copy carried by the watermark
};

RoiVerifyResult roiwm_verify(const RasterImage& img, const RoiWatermarkSpec& spec);

// Whole-image integrity tag: digest of the image with the 160 keyed tag
// slots' LSBs zeroed, keystream-masked, framed into those slots.
enum class SelfhashVerdict { authentic, tampered, no_tag };

const char* verdict_name(SelfhashVerdict v);

RasterImage selfhash_tag(const RasterImage& img, const StegoKey& key);
SelfhashVerdict selfhash_check(const RasterImage& img, const StegoKey& key);

} // namespace stegim

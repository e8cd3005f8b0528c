#pragma once

#include <cstdint>
#include <vector>

#include "stegim/container.hpp"
#include "stegim/image.hpp"
#include "stegim/keystream.hpp"

namespace stegim {

// Channel selection flags. Gray images use kChanGray alone; RGB images use any
// nonempty combination of R, G, B.
constexpr unsigned kChanR = 1u;
constexpr unsigned kChanG = 2u;
constexpr unsigned kChanB = 4u;
constexpr unsigned kChanGray = 8u;

enum class SlotOrder { sequential, permuted };

struct LsbConfig {
    int bits_per_sample = 1; // 1..4
    unsigned channel_mask = kChanGray;
    SlotOrder order = SlotOrder::sequential;
    StegoKey key{};
};

// Throws std::invalid_argument when cfg cannot apply to img.
void lsb_validate(const RasterImage& img, const LsbConfig& cfg);

std::uint64_t lsb_capacity(const RasterImage& img, const LsbConfig& cfg);

// Raw bit mode, no frame; exposed for tests. The CLI always frames.
RasterImage lsb_embed_bits(const RasterImage& img, const BitSeq& bits, const LsbConfig& cfg);
BitSeq lsb_extract_bits(const RasterImage& img, const LsbConfig& cfg, std::uint64_t nbits);

RasterImage lsb_embed(const RasterImage& img, const std::vector<std::uint8_t>& payload,
                      const LsbConfig& cfg);
std::vector<std::uint8_t> lsb_extract(const RasterImage& img, const LsbConfig& cfg);

} // namespace stegim

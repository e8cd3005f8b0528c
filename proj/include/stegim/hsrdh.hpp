#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "stegim/container.hpp"
#include "stegim/image.hpp"

namespace stegim {

struct IntensityHistogram {
    std::array<std::uint64_t, 256> counts{};
    int pp1 = 0; // two largest bins, ties broken toward the lower value
    int pp2 = 0; // pp1 < pp2
};

// Grayscale intensities, or V = max(R,G,B) for color input.
IntensityHistogram build_histogram(const RasterImage& img);

enum class ChannelMode { gray, hsv_value };

// Everything needed to undo the embedding. The overflow bitmaps (one per
// round, pixel-count bits each, round-major) mark pixels frozen instead of
// shifted; they are stored packed to bytes.
struct RecoveryRecord {
    int pp1 = 0;
    int pp2 = 0;
    int rounds = 0;
    ChannelMode mode = ChannelMode::gray;
    std::vector<std::uint8_t> overflow_packed;

    BitSeq round_overflow(std::uint64_t pixel_count, int round) const; // round is 0-based
};

// Sidecar file: one text header line "HSRDH1 pp1 pp2 rounds MODE\n"
// followed by the LZW-compressed overflow bitmap.
void save_record(const RecoveryRecord& rec, const std::string& path);
RecoveryRecord load_record(const std::string& path);

struct HsrdhEmbedResult {
    RasterImage image;
    RecoveryRecord record;
    std::size_t bits_consumed = 0;
};

// Raw bit mode for tests; missing trailing bits embed as zeros.
HsrdhEmbedResult hsrdh_embed_bits(const RasterImage& img, const BitSeq& bits, int rounds);
HsrdhEmbedResult hsv_value_embed_bits(const RasterImage& img, const BitSeq& bits, int rounds);
std::pair<BitSeq, RasterImage> hsrdh_extract_bits(const RasterImage& img,
                                                  const RecoveryRecord& rec);

std::pair<RasterImage, RecoveryRecord> hsrdh_embed(const RasterImage& img,
                                                   const std::vector<std::uint8_t>& payload,
                                                   int rounds);
std::pair<RasterImage, RecoveryRecord> hsv_value_embed(const RasterImage& img,
                                                       const std::vector<std::uint8_t>& payload,
                                                       int rounds);

// Dispatches on rec.mode; returns the payload and the restored cover.
std::pair<std::vector<std::uint8_t>, RasterImage> hsrdh_extract(const RasterImage& img,
                                                                const RecoveryRecord& rec);

} // namespace stegim

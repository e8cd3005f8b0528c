#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "stegim/container.hpp"
#include "stegim/image.hpp"
#include "stegim/keystream.hpp"

namespace stegim {

// Difference ranges partitioning [0,255]; each width is a power of two and
// n_bits = log2(width).
struct RangeTable {
    struct Range {
        int lo;
        int hi;
        int n_bits;
    };
    std::vector<Range> ranges;

    int index_of(int d) const; // range containing |d|
};

// {[0,7],[8,23],[24,55],[56,119],[120,247],[248,255]}, n = {3,4,5,6,7,3}.
const RangeTable& default_range_table();

// Validates contiguity, coverage of [0,255], and power-of-two widths.
RangeTable make_range_table(const std::vector<std::pair<int, int>>& bounds);

// "default" or comma-separated "lo-hi" intervals, e.g. "0-7,8-23,...".
RangeTable parse_range_table(const std::string& text);

// Pair-level primitives over the ordered values of one block.
bool pvd_block_skipped(int g1, int g2, const RangeTable& table);
int pvd_block_bits(int g1, int g2, const RangeTable& table);
std::pair<int, int> pvd_embed_block(int g1, int g2, std::uint32_t b, const RangeTable& table);
std::uint32_t pvd_extract_block(int g1, int g2, const RangeTable& table);

std::uint64_t pvd_capacity(const RasterImage& img, const RangeTable& table, const StegoKey& key);

// Raw bit mode for tests; framed mode below is what the CLI uses.
RasterImage pvd_embed_bits(const RasterImage& img, const BitSeq& bits, const RangeTable& table,
                           const StegoKey& key);
BitSeq pvd_extract_bits(const RasterImage& img, const RangeTable& table, const StegoKey& key);

RasterImage pvd_embed(const RasterImage& img, const std::vector<std::uint8_t>& payload,
                      const RangeTable& table, const StegoKey& key);
std::vector<std::uint8_t> pvd_extract(const RasterImage& img, const RangeTable& table,
                                      const StegoKey& key);

} // namespace stegim

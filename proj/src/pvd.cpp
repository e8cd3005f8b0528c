#include "stegim/pvd.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace stegim {

namespace {

// Floor/ceil halves that stay correct for negative m.
int half_floor(int m) { return m >> 1; }
int half_ceil(int m) { return m - (m >> 1); }

// The paper's f on the ordered (smaller, larger) pair; the ceil/floor split is
// chosen by the parity of the difference at application time.
std::pair<int, int> apply_f(int s, int l, int m) {
    int d = l - s;
    if (d % 2 != 0)
        return {s - half_ceil(m), l + half_floor(m)};
    return {s - half_floor(m), l + half_ceil(m)};
}

struct Block {
    int s, l;
    bool swapped; // true when the first sample held the larger value
};

Block ordered(int g1, int g2) {
    if (g1 <= g2)
        return {g1, g2, false};
    return {g2, g1, true};
}

void require_gray(const RasterImage& img) {
    if (img.channels != 1)
        throw std::invalid_argument("pvd requires a grayscale image");
}

std::vector<std::uint64_t> block_traversal(const RasterImage& img, const StegoKey& key) {
    std::uint64_t num_blocks = img.pixel_count() / 2;
    Permutation perm = keyed_permutation(num_blocks, key);
    std::vector<std::uint64_t> order(num_blocks);
    for (std::uint64_t i = 0; i < num_blocks; ++i)
        order[i] = perm[i];
    return order;
}

} // namespace

int RangeTable::index_of(int d) const {
    d = std::abs(d);
    for (std::size_t k = 0; k < ranges.size(); ++k)
        if (d >= ranges[k].lo && d <= ranges[k].hi)
            return static_cast<int>(k);
    throw std::logic_error("difference " + std::to_string(d) + " not covered by range table");
}

RangeTable make_range_table(const std::vector<std::pair<int, int>>& bounds) {
    if (bounds.empty())
        throw std::invalid_argument("range table must not be empty");
    RangeTable table;
    int expect_lo = 0;
    for (auto [lo, hi] : bounds) {
        if (lo != expect_lo)
            throw std::invalid_argument("range table gap: expected interval starting at " +
                                        std::to_string(expect_lo) + ", got " + std::to_string(lo));
        if (hi < lo || hi > 255)
            throw std::invalid_argument("bad interval [" + std::to_string(lo) + "," +
                                        std::to_string(hi) + "]");
        int width = hi - lo + 1;
        if ((width & (width - 1)) != 0 || width < 2)
            throw std::invalid_argument("interval [" + std::to_string(lo) + "," +
                                        std::to_string(hi) + "] width is not a power of two >= 2");
        int n = 0;
        while ((1 << n) < width)
            ++n;
        table.ranges.push_back({lo, hi, n});
        expect_lo = hi + 1;
    }
    if (expect_lo != 256)
        throw std::invalid_argument("range table stops at " + std::to_string(expect_lo - 1) +
                                    ", must cover through 255");
    return table;
}

const RangeTable& default_range_table() {
    static const RangeTable table = make_range_table(
        {{0, 7}, {8, 23}, {24, 55}, {56, 119}, {120, 247}, {248, 255}});
    return table;
}

RangeTable parse_range_table(const std::string& text) {
    if (text == "default" || text.empty())
        return default_range_table();
    std::vector<std::pair<int, int>> bounds;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                       : comma - pos);
        std::size_t dash = item.find('-');
        if (dash == std::string::npos)
            throw std::invalid_argument("range table item '" + item + "' is not of form lo-hi");
        try {
            bounds.emplace_back(std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1)));
        } catch (const std::exception&) {
            throw std::invalid_argument("range table item '" + item + "' has non-numeric bounds");
        }
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return make_range_table(bounds);
}

bool pvd_block_skipped(int g1, int g2, const RangeTable& table) {
    Block blk = ordered(g1, g2);
    int d = blk.l - blk.s;
    const auto& r = table.ranges[table.index_of(d)];
    auto [s2, l2] = apply_f(blk.s, blk.l, r.hi - d);
    return s2 < 0 || l2 > 255;
}

int pvd_block_bits(int g1, int g2, const RangeTable& table) {
    return table.ranges[table.index_of(std::abs(g2 - g1))].n_bits;
}

std::pair<int, int> pvd_embed_block(int g1, int g2, std::uint32_t b, const RangeTable& table) {
    Block blk = ordered(g1, g2);
    int d = blk.l - blk.s;
    const auto& r = table.ranges[table.index_of(d)];
    if (b >= (1u << r.n_bits))
        throw std::invalid_argument("embed value " + std::to_string(b) + " needs more than " +
                                    std::to_string(r.n_bits) + " bits");
    int d_new = r.lo + static_cast<int>(b);
    auto [s2, l2] = apply_f(blk.s, blk.l, d_new - d);
    if (blk.swapped)
        return {l2, s2};
    return {s2, l2};
}

std::uint32_t pvd_extract_block(int g1, int g2, const RangeTable& table) {
    int d = std::abs(g2 - g1);
    const auto& r = table.ranges[table.index_of(d)];
    return static_cast<std::uint32_t>(d - r.lo);
}

std::uint64_t pvd_capacity(const RasterImage& img, const RangeTable& table, const StegoKey& key) {
    require_gray(img);
    (void)key; // the skipped set does not depend on traversal order
    std::uint64_t bits = 0;
    std::uint64_t num_blocks = img.pixel_count() / 2;
    for (std::uint64_t blk = 0; blk < num_blocks; ++blk) {
        int g1 = img.samples[2 * blk];
        int g2 = img.samples[2 * blk + 1];
        if (!pvd_block_skipped(g1, g2, table))
            bits += pvd_block_bits(g1, g2, table);
    }
    return bits;
}

RasterImage pvd_embed_bits(const RasterImage& img, const BitSeq& bits, const RangeTable& table,
                           const StegoKey& key) {
    require_gray(img);
    RasterImage out = img;
    std::size_t pos = 0;
    for (std::uint64_t blk : block_traversal(img, key)) {
        if (pos >= bits.size())
            break;
        int g1 = out.samples[2 * blk];
        int g2 = out.samples[2 * blk + 1];
        if (pvd_block_skipped(g1, g2, table))
            continue;
        int n = pvd_block_bits(g1, g2, table);
        std::uint32_t b = 0;
        int taken = 0;
        while (taken < n && pos < bits.size()) {
            b = (b << 1) | (bits[pos++] & 1u);
            ++taken;
        }
        b <<= n - taken; // trailing pad bits are zeros
        auto [n1, n2] = pvd_embed_block(g1, g2, b, table);
        out.samples[2 * blk] = static_cast<std::uint8_t>(n1);
        out.samples[2 * blk + 1] = static_cast<std::uint8_t>(n2);
    }
    if (pos < bits.size())
        throw CapacityError(bits.size(), pos);
    return out;
}

BitSeq pvd_extract_bits(const RasterImage& img, const RangeTable& table, const StegoKey& key) {
    require_gray(img);
    BitSeq bits;
    for (std::uint64_t blk : block_traversal(img, key)) {
        int g1 = img.samples[2 * blk];
        int g2 = img.samples[2 * blk + 1];
        if (pvd_block_skipped(g1, g2, table))
            continue;
        int n = pvd_block_bits(g1, g2, table);
        std::uint32_t b = pvd_extract_block(g1, g2, table);
        for (int i = n - 1; i >= 0; --i)
            bits.push_back(static_cast<std::uint8_t>((b >> i) & 1u));
    }
    return bits;
}

RasterImage pvd_embed(const RasterImage& img, const std::vector<std::uint8_t>& payload,
                      const RangeTable& table, const StegoKey& key) {
    BitSeq bits = frame_payload(payload, SchemeId::pvd);
    std::uint64_t available = pvd_capacity(img, table, key);
    if (bits.size() > available)
        throw CapacityError(bits.size(), available);
    return pvd_embed_bits(img, bits, table, key);
}

std::vector<std::uint8_t> pvd_extract(const RasterImage& img, const RangeTable& table,
                                      const StegoKey& key) {
    return parse_frame_expect(pvd_extract_bits(img, table, key), SchemeId::pvd);
}

} // namespace stegim

#include "stegim/lsb.hpp"

#include <stdexcept>
#include <string>

namespace stegim {

namespace {

// Sample indices covered by the channel mask, pixel-major with selected
// channels interleaved in R,G,B order.
std::vector<std::uint64_t> collect_slots(const RasterImage& img, const LsbConfig& cfg) {
    std::vector<std::uint64_t> slots;
    if (img.channels == 1) {
        slots.resize(img.pixel_count());
        for (std::uint64_t i = 0; i < slots.size(); ++i)
            slots[i] = i;
        return slots;
    }
    slots.reserve(img.pixel_count() * 3);
    for (std::uint64_t p = 0; p < img.pixel_count(); ++p)
        for (unsigned ch = 0; ch < 3; ++ch)
            if (cfg.channel_mask & (1u << ch))
                slots.push_back(p * 3 + ch);
    return slots;
}

std::vector<std::uint64_t> traversal(const RasterImage& img, const LsbConfig& cfg) {
    std::vector<std::uint64_t> slots = collect_slots(img, cfg);
    if (cfg.order == SlotOrder::permuted) {
        Permutation perm = keyed_permutation(slots.size(), cfg.key);
        std::vector<std::uint64_t> shuffled(slots.size());
        for (std::size_t i = 0; i < slots.size(); ++i)
            shuffled[i] = slots[perm[i]];
        return shuffled;
    }
    return slots;
}

} // namespace

void lsb_validate(const RasterImage& img, const LsbConfig& cfg) {
    if (cfg.bits_per_sample < 1 || cfg.bits_per_sample > 4)
        throw std::invalid_argument("bits_per_sample must be 1..4, got " +
                                    std::to_string(cfg.bits_per_sample));
    if (img.channels == 1) {
        if (cfg.channel_mask != kChanGray)
            throw std::invalid_argument("grayscale image requires the gray channel mask");
    } else {
        unsigned rgb = cfg.channel_mask & (kChanR | kChanG | kChanB);
        if (rgb == 0 || (cfg.channel_mask & kChanGray))
            throw std::invalid_argument("color image requires a nonempty R/G/B channel mask");
    }
}

std::uint64_t lsb_capacity(const RasterImage& img, const LsbConfig& cfg) {
    lsb_validate(img, cfg);
    return collect_slots(img, cfg).size() *
           static_cast<std::uint64_t>(cfg.bits_per_sample);
}

RasterImage lsb_embed_bits(const RasterImage& img, const BitSeq& bits, const LsbConfig& cfg) {
    lsb_validate(img, cfg);
    std::vector<std::uint64_t> order = traversal(img, cfg);
    const int n = cfg.bits_per_sample;
    std::uint64_t available = order.size() * static_cast<std::uint64_t>(n);
    if (bits.size() > available)
        throw CapacityError(bits.size(), available);

    RasterImage out = img;
    const unsigned field_mask = (1u << n) - 1u;
    std::size_t pos = 0;
    for (std::size_t slot = 0; pos < bits.size(); ++slot) {
        unsigned field = 0;
        int taken = 0;
        while (taken < n && pos < bits.size()) {
            field = (field << 1) | (bits[pos++] & 1u);
            ++taken;
        }
        field <<= n - taken; // partial final chunk sits in the field's top bits
        std::uint8_t& s = out.samples[order[slot]];
        s = static_cast<std::uint8_t>((s & ~field_mask) | field);
    }
    return out;
}

BitSeq lsb_extract_bits(const RasterImage& img, const LsbConfig& cfg, std::uint64_t nbits) {
    lsb_validate(img, cfg);
    std::vector<std::uint64_t> order = traversal(img, cfg);
    const int n = cfg.bits_per_sample;
    std::uint64_t available = order.size() * static_cast<std::uint64_t>(n);
    if (nbits > available)
        throw CapacityError(nbits, available);

    BitSeq bits;
    bits.reserve(nbits);
    for (std::size_t slot = 0; bits.size() < nbits; ++slot) {
        unsigned field = img.samples[order[slot]] & ((1u << n) - 1u);
        for (int b = n - 1; b >= 0 && bits.size() < nbits; --b)
            bits.push_back(static_cast<std::uint8_t>((field >> b) & 1u));
    }
    return bits;
}

RasterImage lsb_embed(const RasterImage& img, const std::vector<std::uint8_t>& payload,
                      const LsbConfig& cfg) {
    BitSeq bits = frame_payload(payload, SchemeId::lsb);
    std::uint64_t available = lsb_capacity(img, cfg);
    if (bits.size() > available)
        throw CapacityError(bits.size(), available);
    return lsb_embed_bits(img, bits, cfg);
}

std::vector<std::uint8_t> lsb_extract(const RasterImage& img, const LsbConfig& cfg) {
    BitSeq bits = lsb_extract_bits(img, cfg, lsb_capacity(img, cfg));
    return parse_frame_expect(bits, SchemeId::lsb);
}

} // namespace stegim

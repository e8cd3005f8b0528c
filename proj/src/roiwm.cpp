#include "stegim/roiwm.hpp"

#include <stdexcept>
#include <string>

#include "stegim/container.hpp"
#include "stegim/errors.hpp"
#include "stegim/lzw.hpp"

namespace stegim {

namespace {

std::string region_text(const Region& r) {
    return std::to_string(r.x) + "," + std::to_string(r.y) + "," + std::to_string(r.w) + "," +
           std::to_string(r.h);
}

std::vector<std::uint8_t> roi_samples(const RasterImage& img, const Region& roi) {
    std::vector<std::uint8_t> out;
    out.reserve(roi.pixel_count() * img.channels);
    for (int y = roi.y; y < roi.y + roi.h; ++y)
        for (int x = roi.x; x < roi.x + roi.w; ++x)
            for (int c = 0; c < img.channels; ++c)
                out.push_back(img.at(x, y, c));
    return out;
}

// Sample indices of the RONI slots: regions in list order, row-major,
// channels interleaved.
std::vector<std::size_t> roni_slots(const RasterImage& img, const RoiWatermarkSpec& spec) {
    std::vector<std::size_t> slots;
    for (const Region& r : spec.roni)
        for (int y = r.y; y < r.y + r.h; ++y)
            for (int x = r.x; x < r.x + r.w; ++x)
                for (int c = 0; c < img.channels; ++c)
                    slots.push_back((static_cast<std::size_t>(y) * img.width + x) *
                                        img.channels + c);
    return slots;
}

constexpr std::size_t kTagBits = 160; // frame overhead plus a 64-bit digest

std::vector<std::size_t> tag_slots(const RasterImage& img, const StegoKey& key) {
    if (img.sample_count() < kTagBits)
        throw CapacityError(kTagBits, img.sample_count());
    Permutation perm = keyed_permutation(img.sample_count(), key);
    std::vector<std::size_t> slots(kTagBits);
    for (std::size_t i = 0; i < kTagBits; ++i)
        slots[i] = perm[i];
    return slots;
}

std::uint64_t zeroed_slot_digest(const RasterImage& img, const std::vector<std::size_t>& slots) {
    RasterImage base = img;
    for (std::size_t s : slots)
        base.samples[s] &= static_cast<std::uint8_t>(~1u);
    return fnv1a64(base.samples);
}

std::vector<std::uint8_t> masked_digest(std::uint64_t digest, const StegoKey& key) {
    std::vector<std::uint8_t> bytes(8);
    for (int i = 0; i < 8; ++i)
        bytes[i] = static_cast<std::uint8_t>(digest >> (8 * (7 - i)));
    return xor_keystream(bytes, key);
}

} // namespace

void roiwm_validate(const RasterImage& img, const RoiWatermarkSpec& spec) {
    if (!spec.roi.within(img))
        throw std::invalid_argument("roi " + region_text(spec.roi) + " outside " +
                                    std::to_string(img.width) + "x" + std::to_string(img.height));
    if (spec.roni.empty())
        throw std::invalid_argument("at least one roni region is required");
    for (std::size_t i = 0; i < spec.roni.size(); ++i) {
        const Region& r = spec.roni[i];
        if (!r.within(img))
            throw std::invalid_argument("roni " + region_text(r) + " outside image bounds");
        if (r.overlaps(spec.roi))
            throw std::invalid_argument("roni " + region_text(r) + " overlaps roi");
        for (std::size_t j = i + 1; j < spec.roni.size(); ++j)
            if (r.overlaps(spec.roni[j]))
                throw std::invalid_argument("roni regions " + region_text(r) + " and " +
                                            region_text(spec.roni[j]) + " overlap");
    }
}

std::vector<Region> default_roni(const RasterImage& img) {
    int bh = std::max(1, img.height / 10);
    int bw = std::max(1, img.width / 10);
    std::vector<Region> roni;
    roni.push_back({0, 0, img.width, bh});
    if (img.height > bh && img.width >= 2 * bw) {
        roni.push_back({0, bh, bw, img.height - bh});
        roni.push_back({img.width - bw, bh, bw, img.height - bh});
    }
    return roni;
}

std::uint64_t roiwm_capacity(const RasterImage& img, const RoiWatermarkSpec& spec) {
    roiwm_validate(img, spec);
    return roni_slots(img, spec).size();
}

RasterImage roiwm_embed(const RasterImage& img, const RoiWatermarkSpec& spec) {
    roiwm_validate(img, spec);
    std::vector<std::uint8_t> payload =
        xor_keystream(lzw_compress(roi_samples(img, spec.roi)), spec.key);
    BitSeq bits = frame_payload(payload, SchemeId::roiwm);
    std::vector<std::size_t> slots = roni_slots(img, spec);
    if (bits.size() > slots.size())
        throw CapacityError(bits.size(), slots.size());
    RasterImage out = img;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        std::uint8_t& s = out.samples[slots[i]];
        s = static_cast<std::uint8_t>((s & ~1u) | bits[i]);
    }
    return out;
}

RoiVerifyResult roiwm_verify(const RasterImage& img, const RoiWatermarkSpec& spec) {
    roiwm_validate(img, spec);
    std::vector<std::size_t> slots = roni_slots(img, spec);
    BitSeq bits;
    bits.reserve(slots.size());
    for (std::size_t s : slots)
        bits.push_back(img.samples[s] & 1u);
    std::vector<std::uint8_t> payload = parse_frame_expect(bits, SchemeId::roiwm);
    std::vector<std::uint8_t> reference =
        lzw_decompress(xor_keystream(payload, spec.key));

    std::size_t expect = spec.roi.pixel_count() * img.channels;
    if (reference.size() != expect)
        throw RecordMismatchError("recovered roi has " + std::to_string(reference.size()) +
                                  " samples, spec expects " + std::to_string(expect));

    RoiVerifyResult res;
    res.map = TamperMap::pixel_map(img.width, img.height);
    res.recovered_roi = RasterImage(spec.roi.w, spec.roi.h, img.channels);
    std::size_t i = 0;
    for (int y = 0; y < spec.roi.h; ++y) {
        for (int x = 0; x < spec.roi.w; ++x) {
            bool differs = false;
            for (int c = 0; c < img.channels; ++c, ++i) {
                res.recovered_roi.at(x, y, c) = reference[i];
                if (img.at(spec.roi.x + x, spec.roi.y + y, c) != reference[i])
                    differs = true;
            }
            if (differs)
                res.map.set(spec.roi.x + x, spec.roi.y + y);
        }
    }
    return res;
}

const char* verdict_name(SelfhashVerdict v) {
    switch (v) {
    case SelfhashVerdict::authentic: return "AUTHENTIC";
    case SelfhashVerdict::tampered: return "TAMPERED";
    case SelfhashVerdict::no_tag: return "NO_TAG";
    }
    return "UNKNOWN";
}

RasterImage selfhash_tag(const RasterImage& img, const StegoKey& key) {
    std::vector<std::size_t> slots = tag_slots(img, key);
    std::uint64_t digest = zeroed_slot_digest(img, slots);
    BitSeq bits = frame_payload(masked_digest(digest, key), SchemeId::selfhash);
    RasterImage out = img;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        std::uint8_t& s = out.samples[slots[i]];
        s = static_cast<std::uint8_t>((s & ~1u) | bits[i]);
    }
    return out;
}

SelfhashVerdict selfhash_check(const RasterImage& img, const StegoKey& key) {
    std::vector<std::size_t> slots = tag_slots(img, key);
    BitSeq bits(kTagBits);
    for (std::size_t i = 0; i < kTagBits; ++i)
        bits[i] = img.samples[slots[i]] & 1u;
    std::vector<std::uint8_t> payload;
    try {
        payload = parse_frame_expect(bits, SchemeId::selfhash);
    } catch (const FrameError& e) {
        if (e.fault == FrameFault::bad_magic || e.fault == FrameFault::wrong_scheme)
            return SelfhashVerdict::no_tag;
        return SelfhashVerdict::tampered;
    }
    if (payload.size() != 8)
        return SelfhashVerdict::tampered;
    payload = xor_keystream(payload, key);
    std::uint64_t stored = 0;
    for (std::uint8_t b : payload)
        stored = (stored << 8) | b;
    return stored == zeroed_slot_digest(img, slots) ? SelfhashVerdict::authentic
                                                    : SelfhashVerdict::tampered;
}

} // namespace stegim

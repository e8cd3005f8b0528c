#include "stegim/hsrdh.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "stegim/errors.hpp"
#include "stegim/lzw.hpp"

namespace stegim {

namespace {

// Intensity plane policies. A shift of +/-1 must be exactly invertible given
// the overflow map; fragile_down marks pixels a downward shift would make
// non-invertible, so they get frozen instead.
struct GrayPlane {
    RasterImage* img;
    int value(std::uint64_t i) const { return img->samples[i]; }
    void shift(std::uint64_t i, int delta) {
        img->samples[i] = static_cast<std::uint8_t>(img->samples[i] + delta);
    }
    bool fragile_down(std::uint64_t i) const { return value(i) == 0; }
};

// V = max(R,G,B); a shift moves every channel sitting at the maximum. Moving
// down collides when another channel sits at V-1 (the max set would grow), so
// those pixels are fragile.
struct ValuePlane {
    RasterImage* img;
    int value(std::uint64_t i) const {
        const std::uint8_t* p = &img->samples[3 * i];
        return std::max({p[0], p[1], p[2]});
    }
    void shift(std::uint64_t i, int delta) {
        std::uint8_t* p = &img->samples[3 * i];
        std::uint8_t v = static_cast<std::uint8_t>(value(i));
        for (int c = 0; c < 3; ++c)
            if (p[c] == v)
                p[c] = static_cast<std::uint8_t>(p[c] + delta);
    }
    bool fragile_down(std::uint64_t i) const {
        const std::uint8_t* p = &img->samples[3 * i];
        int v = value(i);
        if (v == 0)
            return true;
        int second = -1;
        for (int c = 0; c < 3; ++c)
            if (p[c] < v)
                second = std::max(second, static_cast<int>(p[c]));
        return second == v - 1;
    }
};

template <class Plane>
std::array<std::uint64_t, 256> plane_counts(const Plane& plane, std::uint64_t n) {
    std::array<std::uint64_t, 256> counts{};
    for (std::uint64_t i = 0; i < n; ++i)
        ++counts[plane.value(i)];
    return counts;
}

// Two most populated bins within [lo,hi], ties toward the lower value.
std::pair<int, int> top_two_bins(const std::array<std::uint64_t, 256>& counts, int lo, int hi) {
    int b1 = -1, b2 = -1;
    for (int v = lo; v <= hi; ++v) {
        if (counts[v] == 0)
            continue;
        if (b1 < 0 || counts[v] > counts[b1]) {
            b2 = b1;
            b1 = v;
        } else if (b2 < 0 || counts[v] > counts[b2]) {
            b2 = v;
        }
    }
    if (b2 < 0)
        throw HistogramError("degenerate histogram: fewer than two populated bins in [" +
                             std::to_string(lo) + "," + std::to_string(hi) + "]");
    return {std::min(b1, b2), std::max(b1, b2)};
}

template <class Plane>
void embed_round(Plane& plane, std::uint64_t n, int pp1, int pp2, const BitSeq& bits,
                 std::size_t& pos, BitSeq& map) {
    map.assign(n, 0);
    auto next_bit = [&]() -> int { return pos < bits.size() ? bits[pos++] : 0; };
    for (std::uint64_t i = 0; i < n; ++i) {
        int v = plane.value(i);
        if (v < pp1) {
            if (plane.fragile_down(i))
                map[i] = 1;
            else
                plane.shift(i, -1);
        } else if (v == pp1) {
            if (plane.fragile_down(i))
                map[i] = 1; // no bit carried
            else if (next_bit())
                plane.shift(i, -1);
        } else if (v == pp2) {
            if (next_bit())
                plane.shift(i, +1); // pp2 <= 254, never overflows
        } else if (v > pp2) {
            if (v == 255)
                map[i] = 1;
            else
                plane.shift(i, +1);
        }
    }
}

template <class Plane>
void extract_round(Plane& plane, std::uint64_t n, int pp1, int pp2, const BitSeq& map,
                   BitSeq& round_bits) {
    for (std::uint64_t i = 0; i < n; ++i) {
        int v = plane.value(i);
        if (map[i]) {
            bool frozen = v == 255 || (v <= pp1 && plane.fragile_down(i));
            if (!frozen)
                throw RecordMismatchError("overflow map marks pixel " + std::to_string(i) +
                                          " but value " + std::to_string(v) + " is not frozen");
            continue;
        }
        if (v == pp1) {
            round_bits.push_back(0);
        } else if (v == pp1 - 1) {
            round_bits.push_back(1);
            plane.shift(i, +1);
        } else if (v < pp1 - 1) {
            plane.shift(i, +1);
        } else if (v == pp2) {
            round_bits.push_back(0);
        } else if (v == pp2 + 1) {
            round_bits.push_back(1);
            plane.shift(i, -1);
        } else if (v > pp2 + 1) {
            plane.shift(i, -1);
        }
    }
}

std::vector<std::uint8_t> pack_maps(const std::vector<BitSeq>& maps) {
    BitSeq all;
    for (const BitSeq& m : maps)
        all.insert(all.end(), m.begin(), m.end());
    while (all.size() % 8 != 0)
        all.push_back(0);
    return bits_to_bytes(all);
}

template <class Plane>
HsrdhEmbedResult embed_impl(const RasterImage& img, const BitSeq& bits, int rounds,
                            ChannelMode mode) {
    if (rounds < 0)
        throw std::invalid_argument("rounds must be >= 0");
    HsrdhEmbedResult res;
    res.image = img;
    res.record.mode = mode;
    res.record.rounds = rounds;
    if (rounds == 0) {
        if (!bits.empty())
            throw CapacityError(bits.size(), 0);
        return res;
    }
    Plane plane{&res.image};
    auto counts = plane_counts(plane, img.pixel_count());
    // Peaks at 0 or 255 cannot split outward, so selection stays inside.
    auto [pp1, pp2] = top_two_bins(counts, 1, 254);
    res.record.pp1 = pp1;
    res.record.pp2 = pp2;
    std::vector<BitSeq> maps(rounds);
    std::size_t pos = 0;
    for (int r = 0; r < rounds; ++r)
        embed_round(plane, img.pixel_count(), pp1, pp2, bits, pos, maps[r]);
    res.record.overflow_packed = pack_maps(maps);
    res.bits_consumed = pos;
    return res;
}

void require_mode(const RasterImage& img, ChannelMode mode) {
    if (mode == ChannelMode::gray && img.channels != 1)
        throw RecordMismatchError("record is for a grayscale image, got " +
                                  std::to_string(img.channels) + " channels");
    if (mode == ChannelMode::hsv_value && img.channels != 3)
        throw RecordMismatchError("record is for an RGB image, got " +
                                  std::to_string(img.channels) + " channels");
}

} // namespace

IntensityHistogram build_histogram(const RasterImage& img) {
    IntensityHistogram h;
    for (std::uint64_t i = 0; i < img.pixel_count(); ++i) {
        int v;
        if (img.channels == 1) {
            v = img.samples[i];
        } else {
            const std::uint8_t* p = &img.samples[3 * i];
            v = std::max({p[0], p[1], p[2]});
        }
        ++h.counts[v];
    }
    auto [pp1, pp2] = top_two_bins(h.counts, 0, 255);
    h.pp1 = pp1;
    h.pp2 = pp2;
    return h;
}

BitSeq RecoveryRecord::round_overflow(std::uint64_t pixel_count, int round) const {
    std::uint64_t need = (static_cast<std::uint64_t>(round) + 1) * pixel_count;
    if (overflow_packed.size() * 8 < need)
        throw RecordMismatchError("overflow map too short: " +
                                  std::to_string(overflow_packed.size()) + " bytes for round " +
                                  std::to_string(round + 1));
    BitSeq map(pixel_count);
    std::uint64_t base = static_cast<std::uint64_t>(round) * pixel_count;
    for (std::uint64_t i = 0; i < pixel_count; ++i) {
        std::uint64_t j = base + i;
        map[i] = (overflow_packed[j / 8] >> (7 - j % 8)) & 1u;
    }
    return map;
}

HsrdhEmbedResult hsrdh_embed_bits(const RasterImage& img, const BitSeq& bits, int rounds) {
    if (img.channels != 1)
        throw std::invalid_argument("hsrdh gray mode requires a grayscale image");
    return embed_impl<GrayPlane>(img, bits, rounds, ChannelMode::gray);
}

HsrdhEmbedResult hsv_value_embed_bits(const RasterImage& img, const BitSeq& bits, int rounds) {
    if (img.channels != 3)
        throw std::invalid_argument("hsrdh value mode requires an RGB image");
    return embed_impl<ValuePlane>(img, bits, rounds, ChannelMode::hsv_value);
}

std::pair<BitSeq, RasterImage> hsrdh_extract_bits(const RasterImage& img,
                                                  const RecoveryRecord& rec) {
    require_mode(img, rec.mode);
    RasterImage out = img;
    if (rec.rounds == 0)
        return {BitSeq{}, out};
    if (rec.pp1 < 1 || rec.pp2 > 254 || rec.pp1 >= rec.pp2)
        throw RecordMismatchError("record peaks " + std::to_string(rec.pp1) + "," +
                                  std::to_string(rec.pp2) + " are invalid");
    std::vector<BitSeq> per_round(rec.rounds);
    for (int r = rec.rounds - 1; r >= 0; --r) {
        BitSeq map = rec.round_overflow(out.pixel_count(), r);
        if (rec.mode == ChannelMode::gray) {
            GrayPlane plane{&out};
            extract_round(plane, out.pixel_count(), rec.pp1, rec.pp2, map, per_round[r]);
        } else {
            ValuePlane plane{&out};
            extract_round(plane, out.pixel_count(), rec.pp1, rec.pp2, map, per_round[r]);
        }
    }
    BitSeq bits;
    for (const BitSeq& rb : per_round)
        bits.insert(bits.end(), rb.begin(), rb.end());
    return {std::move(bits), std::move(out)};
}

std::pair<RasterImage, RecoveryRecord> hsrdh_embed(const RasterImage& img,
                                                   const std::vector<std::uint8_t>& payload,
                                                   int rounds) {
    BitSeq bits = frame_payload(payload, SchemeId::hsrdh);
    HsrdhEmbedResult res = hsrdh_embed_bits(img, bits, rounds);
    if (res.bits_consumed < bits.size())
        throw CapacityError(bits.size(), res.bits_consumed);
    return {std::move(res.image), std::move(res.record)};
}

std::pair<RasterImage, RecoveryRecord> hsv_value_embed(const RasterImage& img,
                                                       const std::vector<std::uint8_t>& payload,
                                                       int rounds) {
    BitSeq bits = frame_payload(payload, SchemeId::hsrdh);
    HsrdhEmbedResult res = hsv_value_embed_bits(img, bits, rounds);
    if (res.bits_consumed < bits.size())
        throw CapacityError(bits.size(), res.bits_consumed);
    return {std::move(res.image), std::move(res.record)};
}

std::pair<std::vector<std::uint8_t>, RasterImage> hsrdh_extract(const RasterImage& img,
                                                                const RecoveryRecord& rec) {
    auto [bits, restored] = hsrdh_extract_bits(img, rec);
    std::vector<std::uint8_t> payload = parse_frame_expect(bits, SchemeId::hsrdh);
    return {std::move(payload), std::move(restored)};
}

void save_record(const RecoveryRecord& rec, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write sidecar '" + path + "'");
    out << "HSRDH1 " << rec.pp1 << ' ' << rec.pp2 << ' ' << rec.rounds << ' '
        << (rec.mode == ChannelMode::gray ? "GRAY" : "HSV_VALUE") << '\n';
    std::vector<std::uint8_t> blob = lzw_compress(rec.overflow_packed);
    out.write(reinterpret_cast<const char*>(blob.data()),
              static_cast<std::streamsize>(blob.size()));
    if (!out)
        throw IoError("short write to sidecar '" + path + "'");
}

RecoveryRecord load_record(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read sidecar '" + path + "'");
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t nl = data.find('\n');
    if (nl == std::string::npos)
        throw RecordMismatchError("sidecar '" + path + "' has no header line");
    std::istringstream header(data.substr(0, nl));
    std::string magic, mode;
    RecoveryRecord rec;
    if (!(header >> magic >> rec.pp1 >> rec.pp2 >> rec.rounds >> mode) || magic != "HSRDH1")
        throw RecordMismatchError("sidecar '" + path + "' header is not HSRDH1");
    if (mode == "GRAY")
        rec.mode = ChannelMode::gray;
    else if (mode == "HSV_VALUE")
        rec.mode = ChannelMode::hsv_value;
    else
        throw RecordMismatchError("sidecar '" + path + "' has unknown mode '" + mode + "'");
    if (rec.rounds < 0 ||
        (rec.rounds > 0 && (rec.pp1 < 1 || rec.pp2 > 254 || rec.pp1 >= rec.pp2)))
        throw RecordMismatchError("sidecar '" + path + "' has invalid peaks or rounds");
    std::vector<std::uint8_t> blob(data.begin() + static_cast<std::ptrdiff_t>(nl) + 1,
                                   data.end());
    rec.overflow_packed = lzw_decompress(blob);
    return rec;
}

} // namespace stegim

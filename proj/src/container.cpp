#include "stegim/container.hpp"

#include <string>

#include "stegim/keystream.hpp"

namespace stegim {

namespace {

constexpr std::uint8_t kMagic0 = 0x4D;
constexpr std::uint8_t kMagic1 = 0x49;
constexpr std::uint8_t kVersion = 0x01;

void push_bits(BitSeq& out, std::uint64_t value, int nbits) {
    for (int i = nbits - 1; i >= 0; --i)
        out.push_back(static_cast<std::uint8_t>((value >> i) & 1u));
}

} // namespace

const char* scheme_name(SchemeId id) {
    switch (id) {
    case SchemeId::lsb: return "lsb";
    case SchemeId::pvd: return "pvd";
    case SchemeId::hsrdh: return "hsrdh";
    case SchemeId::svdwm: return "svdwm";
    case SchemeId::kmeans: return "kmeans";
    case SchemeId::roiwm: return "roiwm";
    case SchemeId::selfhash: return "selfhash";
    }
    return "unknown";
}

BitSeq bytes_to_bits(const std::vector<std::uint8_t>& bytes) {
    BitSeq bits;
    bits.reserve(bytes.size() * 8);
    for (std::uint8_t b : bytes)
        push_bits(bits, b, 8);
    return bits;
}

std::vector<std::uint8_t> bits_to_bytes(const BitSeq& bits) {
    if (bits.size() % 8 != 0)
        throw std::invalid_argument("bits_to_bytes: length " + std::to_string(bits.size()) +
                                    " is not a multiple of 8");
    std::vector<std::uint8_t> bytes(bits.size() / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        bytes[i / 8] = static_cast<std::uint8_t>((bytes[i / 8] << 1) | (bits[i] & 1u));
    return bytes;
}

std::uint64_t BitCursor::take(int nbits) {
    if (remaining() < static_cast<std::size_t>(nbits))
        throw FrameError(FrameFault::bad_length,
                         "frame truncated: need " + std::to_string(nbits) + " bits, have " +
                             std::to_string(remaining()));
    std::uint64_t v = 0;
    for (int i = 0; i < nbits; ++i)
        v = (v << 1) | ((*bits_)[pos_++] & 1u);
    return v;
}

std::vector<std::uint8_t> BitCursor::take_bytes(std::size_t n) {
    std::vector<std::uint8_t> out(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = static_cast<std::uint8_t>(take(8));
    return out;
}

BitSeq frame_payload(const std::vector<std::uint8_t>& payload, SchemeId scheme) {
    if (payload.size() > 0xFFFFFFFFull)
        throw std::invalid_argument("frame_payload: payload too large");
    BitSeq bits;
    bits.reserve(kFrameHeaderBits + payload.size() * 8);
    push_bits(bits, kMagic0, 8);
    push_bits(bits, kMagic1, 8);
    push_bits(bits, kVersion, 8);
    push_bits(bits, static_cast<std::uint8_t>(scheme), 8);
    push_bits(bits, static_cast<std::uint32_t>(payload.size()), 32);
    for (std::uint8_t b : payload)
        push_bits(bits, b, 8);
    push_bits(bits, crc32(payload), 32);
    return bits;
}

ParsedFrame parse_frame(const BitSeq& bits) {
    BitCursor cur(bits);
    if (cur.remaining() < 16)
        throw FrameError(FrameFault::bad_magic, "no hidden frame: carrier too small for magic");
    auto m0 = cur.take(8);
    auto m1 = cur.take(8);
    if (m0 != kMagic0 || m1 != kMagic1)
        throw FrameError(FrameFault::bad_magic, "no hidden frame: magic mismatch");
    auto version = cur.take(8);
    if (version != kVersion)
        throw FrameError(FrameFault::bad_version,
                         "unsupported frame version " + std::to_string(version));
    auto scheme_raw = cur.take(8);
    if (scheme_raw < 1 || scheme_raw > 7)
        throw FrameError(FrameFault::wrong_scheme,
                         "unknown scheme id " + std::to_string(scheme_raw));
    auto length = cur.take(32);
    if (length * 8 + 32 > cur.remaining())
        throw FrameError(FrameFault::bad_length,
                         "declared payload of " + std::to_string(length) +
                             " bytes exceeds carrier capacity");
    ParsedFrame frame;
    frame.scheme = static_cast<SchemeId>(scheme_raw);
    frame.payload = cur.take_bytes(length);
    auto stored_crc = static_cast<std::uint32_t>(cur.take(32));
    auto actual_crc = crc32(frame.payload);
    if (stored_crc != actual_crc)
        throw FrameError(FrameFault::bad_crc, "payload checksum mismatch");
    return frame;
}

std::vector<std::uint8_t> parse_frame_expect(const BitSeq& bits, SchemeId want) {
    ParsedFrame frame = parse_frame(bits);
    if (frame.scheme != want)
        throw FrameError(FrameFault::wrong_scheme,
                         std::string("frame carries scheme '") + scheme_name(frame.scheme) +
                             "', expected '" + scheme_name(want) + "'");
    return std::move(frame.payload);
}

} // namespace stegim

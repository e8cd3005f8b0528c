#pragma once

#include <cstdint>
#include <vector>

#include "stegim/errors.hpp"

namespace stegim {

// Bits are handled MSB-first everywhere; one element per bit keeps the
// traversal logic simple and the quantities involved are small.
using BitSeq = std::vector<std::uint8_t>;

enum class SchemeId : std::uint8_t {
    lsb = 1,
    pvd = 2,
    hsrdh = 3,
    svdwm = 4,
    kmeans = 5,
    roiwm = 6,
    selfhash = 7,
};

const char* scheme_name(SchemeId id);

BitSeq bytes_to_bits(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> bits_to_bytes(const BitSeq& bits);

// Bounded reader over a BitSeq.
class BitCursor {
public:
    explicit BitCursor(const BitSeq& bits) : bits_(&bits) {}

    std::size_t remaining() const { return bits_->size() - pos_; }
    std::uint64_t take(int nbits); // MSB-first; throws FrameError on underrun
    std::vector<std::uint8_t> take_bytes(std::size_t n);

private:
    const BitSeq* bits_;
    std::size_t pos_ = 0;
};

// Frame layout, bit-exact and versioned:
//   magic 0x4D 0x49 | version 0x01 | scheme id | length u32 BE
//   payload bytes | crc32(payload) u32 BE
constexpr std::size_t kFrameHeaderBits = 96; // header + crc for empty payload
constexpr std::size_t kFrameOverheadBytes = 12;

BitSeq frame_payload(const std::vector<std::uint8_t>& payload, SchemeId scheme);

struct ParsedFrame {
    SchemeId scheme;
    std::vector<std::uint8_t> payload;
};

ParsedFrame parse_frame(const BitSeq& bits);

// parse_frame plus a scheme check, for extractors that know what they expect.
std::vector<std::uint8_t> parse_frame_expect(const BitSeq& bits, SchemeId want);

} // namespace stegim

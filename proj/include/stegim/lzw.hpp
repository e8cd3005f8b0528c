#pragma once

#include <cstdint>
#include <vector>

#include "stegim/errors.hpp"

namespace stegim {

// LZW with a 256-entry initial table, variable code width 9..16 bits packed
// MSB-first, table frozen (never reset) at 2^16 entries. Serialized form is
// a 4-byte big-endian code count followed by the packed codes.
std::vector<std::uint8_t> lzw_compress(const std::vector<std::uint8_t>& data);
std::vector<std::uint8_t> lzw_decompress(const std::vector<std::uint8_t>& stream);

} // namespace stegim

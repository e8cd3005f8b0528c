#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stegim/errors.hpp"

namespace stegim {

// Symmetric key for every keyed scheme: a 64-bit seed.
struct StegoKey {
    std::uint64_t seed = 0;

    static StegoKey from_hex(const std::string& hex);
    bool operator==(const StegoKey&) const = default;
};

// Fixed 64-bit mixing generator. The recurrence is normative so stego files
// are portable across implementations:
//   x += 0x9E3779B97F4A7C15
//   z = x; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9
//   z = (z ^ z>>27) * 0x94D049BB133111EB
//   out = z ^ z>>31
class KeyedGenerator {
public:
    explicit KeyedGenerator(StegoKey key) : state_(key.seed) {}

    std::uint64_t next_u64();
    // Uniform draw in [0, bound) by modulo rejection.
    std::uint64_t next_below(std::uint64_t bound);

private:
    std::uint64_t state_;
};

// Bijection on 0..n-1.
struct Permutation {
    std::vector<std::uint64_t> map;

    std::size_t size() const { return map.size(); }
    std::uint64_t operator[](std::size_t i) const { return map[i]; }
    Permutation inverse() const;
};

// Fisher-Yates driven by the keyed generator, i from n-1 down to 1,
// j drawn in [0, i] with rejection sampling.
Permutation keyed_permutation(std::size_t n, StegoKey key);

std::uint64_t fnv1a64(const std::uint8_t* data, std::size_t len);
std::uint64_t fnv1a64(const std::vector<std::uint8_t>& data);

std::uint32_t crc32(const std::uint8_t* data, std::size_t len);
std::uint32_t crc32(const std::vector<std::uint8_t>& data);

// Byte i is XORed with byte (i mod 8) of successive generator outputs,
// taken big-endian. Applying twice restores the input.
std::vector<std::uint8_t> xor_keystream(const std::vector<std::uint8_t>& data,
                                        StegoKey key);

} // namespace stegim

#include "stegim/keystream.hpp"

#include <array>

namespace stegim {

StegoKey StegoKey::from_hex(const std::string& hex) {
    if (hex.empty() || hex.size() > 16)
        throw std::invalid_argument("key must be 1-16 hex digits, got '" + hex + "'");
    std::uint64_t v = 0;
    for (char c : hex) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else throw std::invalid_argument("key must be hex digits, got '" + hex + "'");
        v = (v << 4) | static_cast<std::uint64_t>(d);
    }
    return StegoKey{v};
}

std::uint64_t KeyedGenerator::next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t KeyedGenerator::next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below bound must be nonzero");
    // reject draws in the incomplete top slice so the result is unbiased
    std::uint64_t rem = (0 - bound) % bound; // 2^64 mod bound
    std::uint64_t limit = 0 - rem;           // accept u < limit (all u if rem==0)
    for (;;) {
        std::uint64_t u = next_u64();
        if (rem == 0 || u < limit) return u % bound;
    }
}

Permutation Permutation::inverse() const {
    Permutation inv;
    inv.map.assign(map.size(), 0);
    for (std::size_t i = 0; i < map.size(); ++i)
        inv.map[map[i]] = i;
    return inv;
}

Permutation keyed_permutation(std::size_t n, StegoKey key) {
    if (n == 0) throw std::invalid_argument("keyed_permutation over an empty domain");
    Permutation p;
    p.map.resize(n);
    for (std::size_t i = 0; i < n; ++i) p.map[i] = i;
    KeyedGenerator gen(key);
    for (std::size_t i = n - 1; i > 0; --i) {
        std::uint64_t j = gen.next_below(i + 1);
        std::swap(p.map[i], p.map[j]);
    }
    return p;
}

std::uint64_t fnv1a64(const std::uint8_t* data, std::size_t len) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= data[i];
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::uint64_t fnv1a64(const std::vector<std::uint8_t>& data) {
    return fnv1a64(data.data(), data.size());
}

namespace {

std::array<std::uint32_t, 256> make_crc_table() {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint32_t c = i;
        for (int k = 0; k < 8; ++k)
            c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : (c >> 1);
        t[i] = c;
    }
    return t;
}

} // namespace

std::uint32_t crc32(const std::uint8_t* data, std::size_t len) {
    static const auto table = make_crc_table();
    std::uint32_t c = 0xFFFFFFFFu;
    for (std::size_t i = 0; i < len; ++i)
        c = table[(c ^ data[i]) & 0xFF] ^ (c >> 8);
    return c ^ 0xFFFFFFFFu;
}

std::uint32_t crc32(const std::vector<std::uint8_t>& data) {
    return crc32(data.data(), data.size());
}

std::vector<std::uint8_t> xor_keystream(const std::vector<std::uint8_t>& data,
                                        StegoKey key) {
    std::vector<std::uint8_t> out(data.size());
    KeyedGenerator gen(key);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        std::size_t lane = i % 8;
        if (lane == 0) word = gen.next_u64();
        std::uint8_t ks = static_cast<std::uint8_t>(word >> (56 - 8 * lane));
        out[i] = data[i] ^ ks;
    }
    return out;
}

} // namespace stegim

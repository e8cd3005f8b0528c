#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "stegim/keystream.hpp"

using namespace stegim;

TEST_CASE("generator reference outputs") {
    KeyedGenerator g0(StegoKey{0});
    CHECK(g0.next_u64() == 0xE220A8397B1DCDAFULL);
    CHECK(g0.next_u64() == 0x6E789E6AA1B965F4ULL);
    CHECK(g0.next_u64() == 0x06C45D188009454FULL);

    KeyedGenerator g1(StegoKey{1});
    CHECK(g1.next_u64() == 0x910A2DEC89025CC1ULL);

    KeyedGenerator g2(StegoKey{2});
    CHECK(g2.next_u64() == 0x975835DE1C9756CEULL);
}

TEST_CASE("generator determinism") {
    KeyedGenerator a(StegoKey{1234});
    KeyedGenerator b(StegoKey{1234});
    for (int i = 0; i < 100; ++i)
        CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("next_below stays within bound") {
    KeyedGenerator g(StegoKey{77});
    for (int i = 0; i < 1000; ++i)
        CHECK(g.next_below(17) < 17);
    KeyedGenerator g2(StegoKey{78});
    for (int i = 0; i < 100; ++i)
        CHECK(g2.next_below(1) == 0);
}

TEST_CASE("keyed_permutation reference values") {
    CHECK(keyed_permutation(8, StegoKey{0}).map ==
          std::vector<std::uint64_t>{2, 5, 0, 3, 4, 6, 1, 7});
    CHECK(keyed_permutation(8, StegoKey{1}).map ==
          std::vector<std::uint64_t>{4, 3, 2, 7, 5, 6, 0, 1});
    CHECK(keyed_permutation(5, StegoKey{42}).map ==
          std::vector<std::uint64_t>{1, 2, 0, 4, 3});
    CHECK(keyed_permutation(1, StegoKey{9}).map ==
          std::vector<std::uint64_t>{0});
    CHECK_THROWS_AS(keyed_permutation(0, StegoKey{9}), std::invalid_argument);
}

TEST_CASE("keyed_permutation is a bijection") {
    for (std::uint64_t seed : {3ULL, 99ULL, 123456789ULL}) {
        Permutation p = keyed_permutation(1000, StegoKey{seed});
        std::vector<std::uint64_t> sorted = p.map;
        std::sort(sorted.begin(), sorted.end());
        std::vector<std::uint64_t> expect(1000);
        std::iota(expect.begin(), expect.end(), 0);
        CHECK(sorted == expect);
    }
}

TEST_CASE("permutation inverse composes to identity") {
    Permutation p = keyed_permutation(257, StegoKey{5});
    Permutation inv = p.inverse();
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(inv[p[i]] == i);
        CHECK(p[inv[i]] == i);
    }
}

TEST_CASE("fnv1a64 reference values") {
    std::vector<std::uint8_t> empty;
    CHECK(fnv1a64(empty) == 0xCBF29CE484222325ULL);
    CHECK(fnv1a64({'a'}) == 0xAF63DC4C8601EC8CULL);
    CHECK(fnv1a64({'a', 'b'}) == 0x089C4407B545986AULL);
    CHECK(fnv1a64({'b', 'a'}) == 0x08A63307B54DD00CULL);
    CHECK(fnv1a64({'a', 'b'}) != fnv1a64({'b', 'a'}));
}

TEST_CASE("crc32 reference values") {
    std::vector<std::uint8_t> digits{'1', '2', '3', '4', '5', '6', '7', '8', '9'};
    CHECK(crc32(digits) == 0xCBF43926u);
    CHECK(crc32(std::vector<std::uint8_t>{}) == 0x00000000u);
    CHECK(crc32(std::vector<std::uint8_t>{'A'}) == 0xD3D99E8Bu);
}

TEST_CASE("crc32 detects single bit flips") {
    std::vector<std::uint8_t> data(64);
    for (std::size_t i = 0; i < data.size(); ++i)
        data[i] = static_cast<std::uint8_t>(i * 7);
    std::uint32_t ref = crc32(data);
    for (std::size_t bit = 0; bit < data.size() * 8; bit += 37) {
        auto mut = data;
        mut[bit / 8] ^= static_cast<std::uint8_t>(0x80u >> (bit % 8));
        CHECK(crc32(mut) != ref);
    }
}

TEST_CASE("xor_keystream first bytes are big-endian generator words") {
    std::vector<std::uint8_t> zeros(12, 0);
    auto ks = xor_keystream(zeros, StegoKey{0});
    CHECK(ks == std::vector<std::uint8_t>{0xE2, 0x20, 0xA8, 0x39, 0x7B, 0x1D,
                                          0xCD, 0xAF, 0x6E, 0x78, 0x9E, 0x6A});
    auto ks1 = xor_keystream(std::vector<std::uint8_t>(8, 0), StegoKey{1});
    CHECK(ks1 == std::vector<std::uint8_t>{0x91, 0x0A, 0x2D, 0xEC, 0x89, 0x02,
                                           0x5C, 0xC1});
}

TEST_CASE("xor_keystream is an involution") {
    std::vector<std::uint8_t> data(100);
    for (std::size_t i = 0; i < data.size(); ++i)
        data[i] = static_cast<std::uint8_t>(i * 13 + 1);
    StegoKey key{0xDEADBEEF};
    auto once = xor_keystream(data, key);
    CHECK(once != data);
    CHECK(xor_keystream(once, key) == data);
    CHECK(xor_keystream(std::vector<std::uint8_t>{}, key).empty());
}

TEST_CASE("from_hex parses 64-bit keys") {
    CHECK(StegoKey::from_hex("0").seed == 0);
    CHECK(StegoKey::from_hex("ff").seed == 0xFF);
    CHECK(StegoKey::from_hex("DEADbeef").seed == 0xDEADBEEFULL);
    CHECK(StegoKey::from_hex("ffffffffffffffff").seed == ~0ULL);
    CHECK_THROWS_AS(StegoKey::from_hex(""), std::invalid_argument);
    CHECK_THROWS_AS(StegoKey::from_hex("xyz"), std::invalid_argument);
    CHECK_THROWS_AS(StegoKey::from_hex("11112222333344445"),
                    std::invalid_argument);
}

#include "doctest.h"

#include <cstdint>
#include <string>
#include <vector>

#include "stegim/keystream.hpp"
#include "stegim/lzw.hpp"

using namespace stegim;

namespace {

// Serializes a code sequence the same way the encoder declares its wire
// format: BE32 count, then codes packed MSB-first at the given widths.
std::vector<std::uint8_t> pack_codes(const std::vector<std::uint32_t>& codes,
                                     const std::vector<int>& widths) {
    std::vector<std::uint8_t> out;
    std::uint32_t count = static_cast<std::uint32_t>(codes.size());
    out.push_back(static_cast<std::uint8_t>(count >> 24));
    out.push_back(static_cast<std::uint8_t>(count >> 16));
    out.push_back(static_cast<std::uint8_t>(count >> 8));
    out.push_back(static_cast<std::uint8_t>(count));
    std::uint32_t acc = 0;
    int nbits = 0;
    for (std::size_t i = 0; i < codes.size(); ++i) {
        for (int b = widths[i] - 1; b >= 0; --b) {
            acc = (acc << 1) | ((codes[i] >> b) & 1u);
            if (++nbits == 8) {
                out.push_back(static_cast<std::uint8_t>(acc));
                acc = 0;
                nbits = 0;
            }
        }
    }
    if (nbits > 0) out.push_back(static_cast<std::uint8_t>(acc << (8 - nbits)));
    return out;
}

std::vector<std::uint8_t> bytes(const std::string& s) {
    return std::vector<std::uint8_t>(s.begin(), s.end());
}

} // namespace

TEST_CASE("empty input roundtrips through a header-only stream") {
    auto compressed = lzw_compress({});
    CHECK(compressed == std::vector<std::uint8_t>{0, 0, 0, 0});
    CHECK(lzw_decompress(compressed).empty());
}

TEST_CASE("classic trace emits the known code sequence") {
    auto input = bytes("TOBEORNOTTOBEORTOBEORNOT");
    std::vector<std::uint32_t> codes{84,  79,  66,  69,  79,  82,  78, 79,
                                     84,  256, 258, 260, 265, 259, 261, 263};
    std::vector<int> widths(codes.size(), 9);
    auto expect = pack_codes(codes, widths);
    CHECK(lzw_compress(input) == expect);
    CHECK(lzw_decompress(expect) == input);
}

TEST_CASE("cScSc case decodes") {
    // {1,1,1} compresses to [1, 256] where 256 names the entry being built.
    std::vector<std::uint8_t> input{1, 1, 1};
    auto compressed = lzw_compress(input);
    CHECK(compressed == pack_codes({1, 256}, {9, 9}));
    CHECK(lzw_decompress(compressed) == input);

    std::vector<std::uint8_t> longer{5, 5, 5, 5, 5, 5, 5};
    CHECK(lzw_decompress(lzw_compress(longer)) == longer);
}

TEST_CASE("4096 zero bytes compress into at most 92 codes") {
    std::vector<std::uint8_t> zeros(4096, 0);
    auto compressed = lzw_compress(zeros);
    std::uint32_t count = (static_cast<std::uint32_t>(compressed[0]) << 24) |
                          (static_cast<std::uint32_t>(compressed[1]) << 16) |
                          (static_cast<std::uint32_t>(compressed[2]) << 8) |
                          static_cast<std::uint32_t>(compressed[3]);
    CHECK(count <= 92);
    CHECK(compressed.size() < zeros.size());
    CHECK(lzw_decompress(compressed) == zeros);
}

TEST_CASE("repetitive input of 256 bytes compresses smaller") {
    std::vector<std::uint8_t> rep(256, 0xAB);
    auto compressed = lzw_compress(rep);
    CHECK(compressed.size() < rep.size());
    CHECK(lzw_decompress(compressed) == rep);
}

TEST_CASE("roundtrip identity on 1000 random inputs") {
    KeyedGenerator gen(StegoKey{0x1234});
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t len = gen.next_below(4097);
        std::vector<std::uint8_t> data(len);
        // Mix of full-random and run-heavy content.
        if (trial % 3 == 0) {
            std::uint8_t cur = static_cast<std::uint8_t>(gen.next_u64());
            for (auto& b : data) {
                if (gen.next_below(10) == 0)
                    cur = static_cast<std::uint8_t>(gen.next_u64());
                b = cur;
            }
        } else {
            for (auto& b : data)
                b = static_cast<std::uint8_t>(gen.next_u64());
        }
        auto back = lzw_decompress(lzw_compress(data));
        if (back != data) {
            CAPTURE(trial);
            CAPTURE(len);
            REQUIRE(back == data);
        }
    }
    CHECK(true);
}

TEST_CASE("width growth past 9 bits roundtrips") {
    // Enough distinct pairs to push the table past 512 entries.
    std::vector<std::uint8_t> data;
    KeyedGenerator gen(StegoKey{7});
    for (int i = 0; i < 20000; ++i)
        data.push_back(static_cast<std::uint8_t>(gen.next_u64()));
    for (int i = 0; i < 20000; ++i)
        data.push_back(static_cast<std::uint8_t>(i % 3));
    CHECK(lzw_decompress(lzw_compress(data)) == data);
}

TEST_CASE("decode rejects invalid code") {
    // Second code 300 arrives when the table still has 256 entries.
    auto stream = pack_codes({65, 300}, {9, 9});
    CHECK_THROWS_AS(lzw_decompress(stream), LzwError);
    try {
        lzw_decompress(stream);
    } catch (const LzwError& e) {
        std::string msg = e.what();
        CHECK(msg.find("invalid code") != std::string::npos);
    }
}

TEST_CASE("decode rejects truncated stream") {
    auto stream = pack_codes({65, 66}, {9, 9});
    stream.resize(5); // header + one byte, second code cut short
    CHECK_THROWS_AS(lzw_decompress(stream), LzwError);
    CHECK_THROWS_AS(lzw_decompress(std::vector<std::uint8_t>{}), LzwError);
    CHECK_THROWS_AS(lzw_decompress(std::vector<std::uint8_t>{0, 0}), LzwError);
}

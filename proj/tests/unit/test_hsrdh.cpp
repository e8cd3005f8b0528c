#include "doctest.h"

#include <cstdio>
#include <cstdint>
#include <string>
#include <vector>

#include "stegim/hsrdh.hpp"
#include "stegim/keystream.hpp"

using namespace stegim;

namespace {

RasterImage worked_example_cover() {
    RasterImage img(8, 1, 1);
    img.samples = {100, 100, 100, 100, 150, 150, 150, 200};
    return img;
}

// Two strong value peaks at 100 and 150 plus low-end noise, so capacity is
// predictable and both shift directions get exercised.
RasterImage peaky_gray(int w, int h, std::uint64_t seed) {
    RasterImage img(w, h, 1);
    KeyedGenerator gen(StegoKey{seed});
    for (auto& s : img.samples) {
        std::uint64_t roll = gen.next_below(10);
        if (roll < 3)
            s = 100;
        else if (roll < 5)
            s = 150;
        else
            s = static_cast<std::uint8_t>(gen.next_u64());
    }
    img.samples[0] = 0;   // frozen on every down round
    img.samples[1] = 255; // frozen on every up round
    return img;
}

RasterImage peaky_rgb(int w, int h, std::uint64_t seed) {
    RasterImage img(w, h, 3);
    KeyedGenerator gen(StegoKey{seed});
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint64_t roll = gen.next_below(10);
            std::uint8_t r = static_cast<std::uint8_t>(gen.next_below(60));
            std::uint8_t g = static_cast<std::uint8_t>(gen.next_below(60));
            std::uint8_t b = static_cast<std::uint8_t>(gen.next_below(60));
            if (roll < 3) {
                r = 100; // v = 100 peak
            } else if (roll < 5) {
                g = 140; // v = 140 peak
            } else if (roll == 5) {
                // down-fragile: second channel exactly one below the max
                r = 30;
                g = 29;
                b = static_cast<std::uint8_t>(gen.next_below(29));
            }
            img.at(x, y, 0) = r;
            img.at(x, y, 1) = g;
            img.at(x, y, 2) = b;
        }
    }
    img.at(0, 0, 0) = img.at(0, 0, 1) = img.at(0, 0, 2) = 0;
    img.at(1, 0, 0) = img.at(1, 0, 1) = img.at(1, 0, 2) = 255;
    return img;
}

std::vector<std::uint8_t> random_payload(std::size_t n, std::uint64_t seed) {
    std::vector<std::uint8_t> p(n);
    KeyedGenerator gen(StegoKey{seed});
    for (auto& b : p)
        b = static_cast<std::uint8_t>(gen.next_u64());
    return p;
}

} // namespace

TEST_CASE("histogram peaks of the worked example") {
    IntensityHistogram h = build_histogram(worked_example_cover());
    CHECK(h.counts[100] == 4);
    CHECK(h.counts[150] == 3);
    CHECK(h.counts[200] == 1);
    CHECK(h.pp1 == 100);
    CHECK(h.pp2 == 150);
}

TEST_CASE("histogram of an rgb image uses the max channel") {
    RasterImage img(2, 1, 3);
    img.samples = {10, 20, 30, 5, 90, 7};
    IntensityHistogram h = build_histogram(img);
    CHECK(h.counts[30] == 1);
    CHECK(h.counts[90] == 1);
}

TEST_CASE("constant image cannot host a histogram pair") {
    RasterImage img(8, 8, 1, 128);
    CHECK_THROWS_AS(build_histogram(img), HistogramError);
    CHECK_THROWS_AS(hsrdh_embed_bits(img, BitSeq{1}, 1), HistogramError);
}

TEST_CASE("worked example embeds bit for bit") {
    RasterImage cover = worked_example_cover();
    BitSeq bits{1, 0, 1, 1, 0, 1, 0};
    HsrdhEmbedResult res = hsrdh_embed_bits(cover, bits, 1);
    CHECK(res.record.pp1 == 100);
    CHECK(res.record.pp2 == 150);
    CHECK(res.bits_consumed == 7);
    CHECK(res.image.samples ==
          std::vector<std::uint8_t>{99, 100, 99, 99, 150, 151, 150, 201});

    auto [got, restored] = hsrdh_extract_bits(res.image, res.record);
    CHECK(got == bits);
    CHECK(restored == cover);
}

TEST_CASE("zero rounds is a no-op for an empty payload") {
    RasterImage cover = worked_example_cover();
    HsrdhEmbedResult res = hsrdh_embed_bits(cover, {}, 0);
    CHECK(res.image == cover);
    CHECK(res.bits_consumed == 0);
    auto [bits, restored] = hsrdh_extract_bits(res.image, res.record);
    CHECK(bits.empty());
    CHECK(restored == cover);

    CHECK_THROWS_AS(hsrdh_embed_bits(cover, BitSeq{1}, 0), CapacityError);
    CHECK_THROWS_AS(hsrdh_embed_bits(cover, BitSeq{1}, -1), std::invalid_argument);
}

TEST_CASE("framed capacity error on a tiny cover") {
    RasterImage cover = worked_example_cover(); // 7 bits per round < 96-bit frame
    CHECK_THROWS_AS(hsrdh_embed(cover, {}, 1), CapacityError);
}

TEST_CASE("gray reversibility across round counts") {
    for (int rounds = 1; rounds <= 3; ++rounds) {
        RasterImage cover = peaky_gray(64, 48, 500 + rounds);
        auto payload = random_payload(80 * rounds, 600 + rounds);
        auto [stego, rec] = hsrdh_embed(cover, payload, rounds);
        CHECK(stego != cover);
        auto [got, restored] = hsrdh_extract(stego, rec);
        CHECK(got == payload);
        CHECK(restored == cover);
    }
}

TEST_CASE("hsv value reversibility across round counts") {
    for (int rounds = 1; rounds <= 3; ++rounds) {
        RasterImage cover = peaky_rgb(64, 48, 700 + rounds);
        auto payload = random_payload(60 * rounds, 800 + rounds);
        auto [stego, rec] = hsv_value_embed(cover, payload, rounds);
        CHECK(rec.mode == ChannelMode::hsv_value);
        auto [got, restored] = hsrdh_extract(stego, rec);
        CHECK(got == payload);
        CHECK(restored == cover);
    }
}

TEST_CASE("hsv shifts touch only max channels") {
    // Peaks land at v=5 (count 3) and v=9 (count 2); the odd pixel out sits
    // above both peaks and must shift its single max channel up.
    RasterImage img(6, 1, 3, 0);
    img.at(0, 0, 2) = 5;
    img.at(1, 0, 2) = 5;
    img.at(2, 0, 2) = 5;
    img.at(3, 0, 2) = 9;
    img.at(4, 0, 2) = 9;
    img.at(5, 0, 0) = 10;
    img.at(5, 0, 1) = 20;
    img.at(5, 0, 2) = 30;
    HsrdhEmbedResult res = hsv_value_embed_bits(img, {}, 1);
    CHECK(res.record.pp1 == 5);
    CHECK(res.record.pp2 == 9);
    CHECK(res.image.at(5, 0, 0) == 10);
    CHECK(res.image.at(5, 0, 1) == 20);
    CHECK(res.image.at(5, 0, 2) == 31);
    auto [bits, restored] = hsrdh_extract_bits(res.image, res.record);
    CHECK(restored == img);
}

TEST_CASE("hsv down shift moves every max channel; fragile pixels freeze") {
    // Peaks at v=100 and v=150; the two low pixels shift down.
    RasterImage img(10, 1, 3, 0);
    for (int i = 0; i < 4; ++i)
        img.at(i, 0, 0) = 100;
    for (int i = 4; i < 7; ++i)
        img.at(i, 0, 1) = 150;
    img.at(7, 0, 0) = 30; // ties on two channels, both must move
    img.at(7, 0, 1) = 30;
    img.at(7, 0, 2) = 10;
    img.at(8, 0, 0) = 30; // second channel at 29 makes this one fragile
    img.at(8, 0, 1) = 29;
    img.at(8, 0, 2) = 10;
    img.at(9, 0, 2) = 40;

    HsrdhEmbedResult res = hsv_value_embed_bits(img, {}, 1);
    CHECK(res.record.pp1 == 100);
    CHECK(res.record.pp2 == 150);
    CHECK(res.image.at(7, 0, 0) == 29);
    CHECK(res.image.at(7, 0, 1) == 29);
    CHECK(res.image.at(7, 0, 2) == 10);
    CHECK(res.image.at(8, 0, 0) == 30); // frozen
    CHECK(res.image.at(8, 0, 1) == 29);
    CHECK(res.image.at(9, 0, 2) == 39);

    auto [bits, restored] = hsrdh_extract_bits(res.image, res.record);
    CHECK(restored == img);
}

TEST_CASE("sidecar record roundtrips through a file") {
    RasterImage cover = peaky_gray(32, 32, 900);
    auto [stego, rec] = hsrdh_embed(cover, random_payload(40, 901), 2);
    std::string path = "test_hsrdh_sidecar.bin";
    save_record(rec, path);
    RecoveryRecord back = load_record(path);
    CHECK(back.pp1 == rec.pp1);
    CHECK(back.pp2 == rec.pp2);
    CHECK(back.rounds == rec.rounds);
    CHECK(back.mode == rec.mode);
    CHECK(back.overflow_packed == rec.overflow_packed);
    auto [payload, restored] = hsrdh_extract(stego, back);
    CHECK(restored == cover);
    std::remove(path.c_str());
}

TEST_CASE("sidecar parse failures") {
    std::string path = "test_hsrdh_bad_sidecar.bin";
    auto write = [&](const std::string& content) {
        std::FILE* f = std::fopen(path.c_str(), "wb");
        std::fwrite(content.data(), 1, content.size(), f);
        std::fclose(f);
    };
    write("BOGUS 1 2 3 GRAY\n");
    CHECK_THROWS_AS(load_record(path), RecordMismatchError);
    write("HSRDH1 100 150 1 SEPIA\n");
    CHECK_THROWS_AS(load_record(path), RecordMismatchError);
    write("HSRDH1 0 150 1 GRAY\n");
    CHECK_THROWS_AS(load_record(path), RecordMismatchError);
    write("HSRDH1 150 100 1 GRAY\n");
    CHECK_THROWS_AS(load_record(path), RecordMismatchError);
    write("no newline at all");
    CHECK_THROWS_AS(load_record(path), RecordMismatchError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_record("no_such_sidecar.bin"), IoError);
}

TEST_CASE("tampered stego breaks the frame") {
    RasterImage cover = peaky_gray(64, 48, 950);
    auto [stego, rec] = hsrdh_embed(cover, random_payload(100, 951), 1);
    // Turning one peak pixel into its shifted neighbour injects a wrong bit.
    RasterImage bad = stego;
    bool done = false;
    for (auto& s : bad.samples) {
        if (!done && s == rec.pp2) {
            s = static_cast<std::uint8_t>(rec.pp2 + 1);
            done = true;
        }
    }
    REQUIRE(done);
    CHECK_THROWS_AS(hsrdh_extract(bad, rec), FrameError);
}

TEST_CASE("corrupted record is rejected") {
    RasterImage cover = peaky_gray(32, 32, 970);
    auto [stego, rec] = hsrdh_embed(cover, random_payload(30, 971), 1);

    RecoveryRecord shortened = rec;
    shortened.overflow_packed.resize(rec.overflow_packed.size() / 2);
    CHECK_THROWS_AS(hsrdh_extract(stego, shortened), RecordMismatchError);

    // Marking a non-frozen pixel as frozen contradicts the image.
    RecoveryRecord lying = rec;
    std::size_t target = 5; // a 100/150-free pixel index would also do
    while (stego.samples[target] == 255 || stego.samples[target] == 0)
        ++target;
    lying.overflow_packed[target / 8] |= static_cast<std::uint8_t>(0x80u >> (target % 8));
    CHECK_THROWS_AS(hsrdh_extract(stego, lying), RecordMismatchError);

    RecoveryRecord wrong_mode = rec;
    wrong_mode.mode = ChannelMode::hsv_value;
    CHECK_THROWS_AS(hsrdh_extract(stego, wrong_mode), RecordMismatchError);
}

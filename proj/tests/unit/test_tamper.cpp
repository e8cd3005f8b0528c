#include "doctest.h"

#include <cstdint>
#include <stdexcept>

#include "stegim/metrics.hpp"
#include "stegim/tamper.hpp"

using namespace stegim;

namespace {

RasterImage random_gray(int w, int h, std::uint64_t seed) {
    RasterImage img(w, h, 1);
    KeyedGenerator gen(StegoKey{seed});
    for (auto& s : img.samples)
        s = static_cast<std::uint8_t>(gen.next_u64());
    return img;
}

} // namespace

TEST_CASE("region fill truth excludes already-matching pixels") {
    RasterImage img(16, 16, 1, 10);
    img.at(5, 5) = 99;
    img.at(6, 5) = 99;
    TamperSpec spec;
    spec.kind = TamperKind::region_fill;
    spec.target = Region{4, 4, 4, 4};
    spec.fill_value = 99;
    auto [out, truth] = apply_tamper(img, spec);
    for (int y = 4; y < 8; ++y)
        for (int x = 4; x < 8; ++x)
            CHECK(out.at(x, y) == 99);
    CHECK(truth.count() == 14); // two pixels were already 99
    CHECK(!truth.get(5, 5));
    CHECK(!truth.get(6, 5));
    CHECK(truth.get(4, 4));
    // Truth equals a plain diff of input and output.
    CHECK(diff_map(img, out).count() == truth.count());
}

TEST_CASE("whole-image target via zero size") {
    RasterImage img(8, 8, 1, 7);
    TamperSpec spec;
    spec.kind = TamperKind::region_fill;
    spec.fill_value = 200;
    auto [out, truth] = apply_tamper(img, spec);
    CHECK(truth.count() == 64);
    CHECK(out.at(0, 0) == 200);
    CHECK(out.at(7, 7) == 200);
}

TEST_CASE("salt and pepper density and determinism") {
    RasterImage img = random_gray(512, 512, 77);
    TamperSpec spec;
    spec.kind = TamperKind::salt_pepper;
    spec.density = 0.01;
    spec.seed = StegoKey{123};
    auto [out, truth] = apply_tamper(img, spec);
    // Expected hits = 2621 +- a few sigma (binomial sd ~51).
    std::size_t hits = 0;
    for (std::size_t i = 0; i < img.samples.size(); ++i) {
        if (img.samples[i] != out.samples[i]) {
            ++hits;
            CHECK((out.samples[i] == 0 || out.samples[i] == 255));
        }
    }
    CHECK(hits >= 2300);
    CHECK(hits <= 2950);
    CHECK(truth.count() == hits); // truth is exactly the changed pixels

    auto [out2, truth2] = apply_tamper(img, spec);
    CHECK(out2 == out);
}

TEST_CASE("single bit flip changes exactly one pixel") {
    RasterImage img = random_gray(32, 32, 88);
    TamperSpec spec;
    spec.kind = TamperKind::bit_flips;
    spec.flip_count = 1;
    spec.seed = StegoKey{5};
    auto [out, truth] = apply_tamper(img, spec);
    CHECK(truth.count() == 1);
    std::size_t diffs = 0;
    int delta = 0;
    for (std::size_t i = 0; i < img.samples.size(); ++i) {
        if (img.samples[i] != out.samples[i]) {
            ++diffs;
            delta = img.samples[i] ^ out.samples[i];
        }
    }
    CHECK(diffs == 1);
    // A single bit position separates the values.
    CHECK((delta & (delta - 1)) == 0);
}

TEST_CASE("bit flips stay inside the target region") {
    RasterImage img = random_gray(32, 32, 99);
    TamperSpec spec;
    spec.kind = TamperKind::bit_flips;
    spec.flip_count = 40;
    spec.target = Region{8, 8, 4, 4};
    spec.seed = StegoKey{6};
    auto [out, truth] = apply_tamper(img, spec);
    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 32; ++x)
            if (!spec.target.contains(x, y))
                CHECK(out.at(x, y) == img.at(x, y));
    CHECK(truth.any());
}

TEST_CASE("paste copies from the unmodified original") {
    RasterImage img = random_gray(32, 32, 111);
    TamperSpec spec;
    spec.kind = TamperKind::paste;
    spec.src = Region{0, 0, 8, 8};
    spec.dst_x = 4; // overlaps the source; reads must come from the original
    spec.dst_y = 4;
    auto [out, truth] = apply_tamper(img, spec);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x)
            CHECK(out.at(4 + x, 4 + y) == img.at(x, y));
    CHECK(diff_map(img, out).count() == truth.count());
}

TEST_CASE("invalid specs are rejected") {
    RasterImage img(16, 16, 1);
    TamperSpec spec;
    spec.kind = TamperKind::region_fill;
    spec.target = Region{10, 10, 10, 10};
    CHECK_THROWS_AS(apply_tamper(img, spec), std::invalid_argument);

    TamperSpec paste;
    paste.kind = TamperKind::paste;
    paste.src = Region{0, 0, 8, 8};
    paste.dst_x = 12; // destination runs off the image
    paste.dst_y = 0;
    CHECK_THROWS_AS(apply_tamper(img, paste), std::invalid_argument);

    TamperSpec pepper;
    pepper.kind = TamperKind::salt_pepper;
    pepper.density = 1.5;
    CHECK_THROWS_AS(apply_tamper(img, pepper), std::invalid_argument);
}

TEST_CASE("score_detector conventions") {
    TamperMap truth = TamperMap::pixel_map(16, 16);
    truth.set(3, 3);
    truth.set(10, 10);

    SUBCASE("exact match scores 1,1") {
        auto [precision, recall] = score_detector(truth, truth);
        CHECK(precision == doctest::Approx(1.0));
        CHECK(recall == doctest::Approx(1.0));
    }
    SUBCASE("empty prediction keeps precision 1, loses recall") {
        TamperMap none = TamperMap::pixel_map(16, 16);
        auto [precision, recall] = score_detector(none, truth);
        CHECK(precision == doctest::Approx(1.0));
        CHECK(recall == doctest::Approx(0.0));
    }
    SUBCASE("empty truth keeps recall 1") {
        TamperMap none = TamperMap::pixel_map(16, 16);
        TamperMap noisy = TamperMap::pixel_map(16, 16);
        noisy.set(0, 0);
        auto [precision, recall] = score_detector(noisy, none);
        CHECK(precision == doctest::Approx(0.0));
        CHECK(recall == doctest::Approx(1.0));
    }
    SUBCASE("partial overlap") {
        TamperMap pred = TamperMap::pixel_map(16, 16);
        pred.set(3, 3);
        pred.set(1, 1);
        auto [precision, recall] = score_detector(pred, truth);
        CHECK(precision == doctest::Approx(0.5));
        CHECK(recall == doctest::Approx(0.5));
    }
}

TEST_CASE("score_detector coarsens mixed granularities") {
    // Block prediction (cell 8) against pixel truth.
    TamperMap pred = TamperMap::block_map(32, 32, 8);
    pred.set(1, 1);
    TamperMap truth = TamperMap::pixel_map(32, 32);
    truth.set(9, 12); // inside block (1,1)
    auto [precision, recall] = score_detector(pred, truth);
    CHECK(precision == doctest::Approx(1.0));
    CHECK(recall == doctest::Approx(1.0));

    truth.set(30, 30); // block (3,3), not predicted
    auto [p2, r2] = score_detector(pred, truth);
    CHECK(p2 == doctest::Approx(1.0));
    CHECK(r2 == doctest::Approx(0.5));
}

TEST_CASE("score_detector dimension mismatch") {
    TamperMap a = TamperMap::pixel_map(16, 16);
    TamperMap b = TamperMap::pixel_map(16, 8);
    CHECK_THROWS_AS(score_detector(a, b), std::invalid_argument);
}

#include "stegim/tamper.hpp"

#include <stdexcept>
#include <string>

namespace stegim {

namespace {

Region resolve_target(const RasterImage& img, const Region& target) {
    if (target.w == 0 || target.h == 0)
        return {0, 0, img.width, img.height};
    if (!target.within(img))
        throw std::invalid_argument("tamper region " + std::to_string(target.x) + "," +
                                    std::to_string(target.y) + "," + std::to_string(target.w) +
                                    "," + std::to_string(target.h) + " out of bounds");
    return target;
}

double unit_double(std::uint64_t u) { return static_cast<double>(u >> 11) * 0x1.0p-53; }

void fill_region(RasterImage& img, const Region& r, std::uint8_t value) {
    for (int y = r.y; y < r.y + r.h; ++y)
        for (int x = r.x; x < r.x + r.w; ++x)
            for (int c = 0; c < img.channels; ++c)
                img.at(x, y, c) = value;
}

void salt_pepper(RasterImage& img, const Region& r, double density, StegoKey seed) {
    if (density < 0.0 || density > 1.0)
        throw std::invalid_argument("density must be in [0,1], got " + std::to_string(density));
    KeyedGenerator gen(seed);
    for (int y = r.y; y < r.y + r.h; ++y) {
        for (int x = r.x; x < r.x + r.w; ++x) {
            if (unit_double(gen.next_u64()) >= density)
                continue;
            std::uint8_t v = (gen.next_u64() & 1u) ? 255 : 0;
            for (int c = 0; c < img.channels; ++c)
                img.at(x, y, c) = v;
        }
    }
}

void bit_flips(RasterImage& img, const Region& r, std::uint64_t count, StegoKey seed) {
    KeyedGenerator gen(seed);
    std::uint64_t region_samples = r.pixel_count() * img.channels;
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t idx = gen.next_below(region_samples);
        std::uint64_t p = idx / img.channels;
        int c = static_cast<int>(idx % img.channels);
        int x = r.x + static_cast<int>(p % r.w);
        int y = r.y + static_cast<int>(p / r.w);
        int bit = static_cast<int>(gen.next_below(8));
        img.at(x, y, c) ^= static_cast<std::uint8_t>(1u << bit);
    }
}

void paste(RasterImage& img, const RasterImage& original, const Region& src, int dx, int dy) {
    if (!src.within(original))
        throw std::invalid_argument("paste source out of bounds");
    Region dst{dx, dy, src.w, src.h};
    if (!dst.within(original))
        throw std::invalid_argument("paste destination out of bounds");
    for (int y = 0; y < src.h; ++y)
        for (int x = 0; x < src.w; ++x)
            for (int c = 0; c < img.channels; ++c)
                img.at(dx + x, dy + y, c) = original.at(src.x + x, src.y + y, c);
}

} // namespace

std::pair<RasterImage, TamperMap> apply_tamper(const RasterImage& img, const TamperSpec& spec) {
    RasterImage out = img;
    switch (spec.kind) {
    case TamperKind::region_fill:
        fill_region(out, resolve_target(img, spec.target),
                    static_cast<std::uint8_t>(spec.fill_value));
        break;
    case TamperKind::salt_pepper:
        salt_pepper(out, resolve_target(img, spec.target), spec.density, spec.seed);
        break;
    case TamperKind::bit_flips:
        bit_flips(out, resolve_target(img, spec.target), spec.flip_count, spec.seed);
        break;
    case TamperKind::paste:
        paste(out, img, spec.src, spec.dst_x, spec.dst_y);
        break;
    }
    TamperMap truth = TamperMap::pixel_map(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < img.channels; ++c)
                if (img.at(x, y, c) != out.at(x, y, c)) {
                    truth.set(x, y);
                    break;
                }
    return {std::move(out), std::move(truth)};
}

std::pair<double, double> score_detector(const TamperMap& predicted, const TamperMap& truth) {
    if (predicted.img_w != truth.img_w || predicted.img_h != truth.img_h)
        throw std::invalid_argument("tamper maps cover different images");
    TamperMap a = predicted;
    TamperMap b = truth;
    if (a.cell != b.cell) {
        if (a.cell == 1)
            a = a.coarsen(b.cell);
        else if (b.cell == 1)
            b = b.coarsen(a.cell);
        else
            throw std::invalid_argument("tamper map granularities " + std::to_string(a.cell) +
                                        " and " + std::to_string(b.cell) + " are incompatible");
    }
    if (a.grid_w != b.grid_w || a.grid_h != b.grid_h)
        throw std::invalid_argument("tamper map grids differ");
    std::uint64_t tp = 0, fp = 0, fn = 0;
    for (int y = 0; y < a.grid_h; ++y) {
        for (int x = 0; x < a.grid_w; ++x) {
            bool p = a.get(x, y);
            bool t = b.get(x, y);
            tp += p && t;
            fp += p && !t;
            fn += !p && t;
        }
    }
    double precision = (tp + fp) == 0 ? 1.0 : static_cast<double>(tp) / (tp + fp);
    double recall = (tp + fn) == 0 ? 1.0 : static_cast<double>(tp) / (tp + fn);
    return {precision, recall};
}

} // namespace stegim

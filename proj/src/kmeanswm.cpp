#include "stegim/kmeanswm.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <tuple>

namespace stegim {

namespace {

Rgb pixel_at(const RasterImage& img, std::size_t i) {
    return {img.samples[3 * i], img.samples[3 * i + 1], img.samples[3 * i + 2]};
}

long dist2(Rgb a, Rgb b) {
    long dr = static_cast<long>(a.r) - b.r;
    long dg = static_cast<long>(a.g) - b.g;
    long db = static_cast<long>(a.b) - b.b;
    return dr * dr + dg * dg + db * db;
}

int nearest(Rgb px, const std::array<Rgb, 8>& centroids) {
    int best = 0;
    long best_d = dist2(px, centroids[0]);
    for (int c = 1; c < 8; ++c) {
        long d = dist2(px, centroids[c]);
        if (d < best_d) { // ties keep the lowest index
            best_d = d;
            best = c;
        }
    }
    return best;
}

std::uint8_t rounded_mean(std::uint64_t sum, std::uint64_t count) {
    return static_cast<std::uint8_t>((2 * sum + count) / (2 * count));
}

} // namespace

ClusterModel kmeans_cluster(const RasterImage& watermark, const StegoKey& seed) {
    if (watermark.channels != 3)
        throw std::invalid_argument("watermark must be RGB");
    std::size_t n = watermark.pixel_count();
    if (n < 8)
        throw std::invalid_argument("watermark needs at least 8 pixels, has " +
                                    std::to_string(n));

    ClusterModel model;
    KeyedGenerator gen(seed);
    std::vector<std::uint64_t> picked;
    while (picked.size() < 8) {
        std::uint64_t idx = gen.next_below(n);
        if (std::find(picked.begin(), picked.end(), idx) == picked.end())
            picked.push_back(idx);
    }
    for (int c = 0; c < 8; ++c)
        model.centroids[c] = pixel_at(watermark, picked[c]);

    auto assign_all = [&](std::vector<int>& out) {
        out.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = nearest(pixel_at(watermark, i), model.centroids);
    };

    assign_all(model.assignments);
    std::vector<int> next;
    for (int iter = 0; iter < 100; ++iter) {
        std::array<std::uint64_t, 8> sr{}, sg{}, sb{}, cnt{};
        for (std::size_t i = 0; i < n; ++i) {
            Rgb px = pixel_at(watermark, i);
            int c = model.assignments[i];
            sr[c] += px.r;
            sg[c] += px.g;
            sb[c] += px.b;
            ++cnt[c];
        }
        for (int c = 0; c < 8; ++c)
            if (cnt[c] > 0)
                model.centroids[c] = {rounded_mean(sr[c], cnt[c]), rounded_mean(sg[c], cnt[c]),
                                      rounded_mean(sb[c], cnt[c])};
        for (int c = 0; c < 8; ++c) {
            if (cnt[c] > 0)
                continue;
            // reseed to the pixel farthest from its current centroid
            std::size_t far_i = 0;
            long far_d = -1;
            for (std::size_t i = 0; i < n; ++i) {
                long d = dist2(pixel_at(watermark, i), model.centroids[model.assignments[i]]);
                if (d > far_d) {
                    far_d = d;
                    far_i = i;
                }
            }
            model.centroids[c] = pixel_at(watermark, far_i);
            model.assignments[far_i] = c;
            cnt[c] = 1;
        }
        assign_all(next);
        if (next == model.assignments)
            break;
        model.assignments = next;
    }
    return model;
}

BitSeq kmeans_hash(const RasterImage& watermark, const StegoKey& seed) {
    ClusterModel model = kmeans_cluster(watermark, seed);
    std::array<Rgb, 8> sorted = model.centroids;
    std::sort(sorted.begin(), sorted.end(), [](Rgb a, Rgb b) {
        return std::tuple(a.r, a.g, a.b) < std::tuple(b.r, b.g, b.b);
    });
    std::vector<std::uint8_t> bytes;
    bytes.reserve(24);
    for (Rgb c : sorted) {
        bytes.push_back(c.r);
        bytes.push_back(c.g);
        bytes.push_back(c.b);
    }
    return bytes_to_bits(bytes);
}

RasterImage kmwm_embed(const RasterImage& cover, const RasterImage& watermark,
                       const StegoKey& seed) {
    if (cover.channels != 3)
        throw std::invalid_argument("cover must be RGB");
    BitSeq base = kmeans_hash(watermark, seed);
    RasterImage out = cover;
    for (int y = 0; y < out.height; ++y) {
        for (int x = 0; x < out.width; ++x) {
            std::uint8_t bit =
                base[(static_cast<std::size_t>(y) * out.width + x) % base.size()];
            std::uint8_t& g = out.at(x, y, 1);
            g = static_cast<std::uint8_t>((g & ~1u) | bit);
        }
    }
    return out;
}

TamperMap kmwm_verify(const RasterImage& stego, const RasterImage& watermark,
                      const StegoKey& seed) {
    if (stego.channels != 3)
        throw std::invalid_argument("stego image must be RGB");
    BitSeq base = kmeans_hash(watermark, seed);
    TamperMap map = TamperMap::pixel_map(stego.width, stego.height);
    for (int y = 0; y < stego.height; ++y) {
        for (int x = 0; x < stego.width; ++x) {
            std::uint8_t want =
                base[(static_cast<std::size_t>(y) * stego.width + x) % base.size()];
            if ((stego.at(x, y, 1) & 1u) != want)
                map.set(x, y);
        }
    }
    return map;
}

KmwmSummary kmwm_summarize(const TamperMap& map, int block) {
    KmwmSummary s;
    s.grid_w = (map.grid_w + block - 1) / block;
    s.grid_h = (map.grid_h + block - 1) / block;
    s.block_fraction.assign(static_cast<std::size_t>(s.grid_w) * s.grid_h, 0.0);
    std::vector<std::uint64_t> hits(s.block_fraction.size(), 0);
    std::vector<std::uint64_t> totals(s.block_fraction.size(), 0);
    for (int y = 0; y < map.grid_h; ++y) {
        for (int x = 0; x < map.grid_w; ++x) {
            std::size_t b = static_cast<std::size_t>(y / block) * s.grid_w + x / block;
            ++totals[b];
            if (map.get(x, y))
                ++hits[b];
        }
    }
    std::uint64_t total_hits = 0;
    for (std::size_t b = 0; b < hits.size(); ++b) {
        s.block_fraction[b] = totals[b] ? static_cast<double>(hits[b]) / totals[b] : 0.0;
        total_hits += hits[b];
    }
    std::uint64_t cells = static_cast<std::uint64_t>(map.grid_w) * map.grid_h;
    s.overall = cells ? static_cast<double>(total_hits) / cells : 0.0;
    return s;
}

} // namespace stegim

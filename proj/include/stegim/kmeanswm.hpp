#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "stegim/container.hpp"
#include "stegim/image.hpp"
#include "stegim/keystream.hpp"

namespace stegim {

struct ClusterModel {
    std::array<Rgb, 8> centroids; // rounded means, cluster-indexed
    std::vector<int> assignments; // per watermark pixel
};

// k=8 over RGB pixels, squared-Euclidean distance, seeded distinct-pixel
// initialization, <=100 iterations or stable assignments; ties go to the
// lowest cluster, empty clusters reseed to the farthest pixel.
ClusterModel kmeans_cluster(const RasterImage& watermark, const StegoKey& seed);

// Centroids sorted by (R,G,B) then serialized to 8x24 bits MSB-first.
BitSeq kmeans_hash(const RasterImage& watermark, const StegoKey& seed);

// plane(i,j) = base_bits[(i*W + j) mod 192], written into green LSBs.
RasterImage kmwm_embed(const RasterImage& cover, const RasterImage& watermark,
                       const StegoKey& seed);

// Green-LSB plane XOR expected plane, one flag per pixel.
TamperMap kmwm_verify(const RasterImage& stego, const RasterImage& watermark,
                      const StegoKey& seed);

struct KmwmSummary {
    double overall = 0.0;
    int grid_w = 0;
    int grid_h = 0;
    std::vector<double> block_fraction; // flagged fraction per block, row-major
};

KmwmSummary kmwm_summarize(const TamperMap& map, int block = 8);

} // namespace stegim

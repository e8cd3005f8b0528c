#pragma once

#include <array>
#include <cstdint>

#include "stegim/image.hpp"
#include "stegim/keystream.hpp"

namespace stegim {

// Column-major k: u[r][c] is row r, column c. sigma descending, >= 0.
struct SvdFactors {
    std::array<std::array<double, 8>, 8> u{};
    std::array<std::array<double, 8>, 8> v{};
    std::array<double, 8> sigma{};
};

// One-sided Jacobi on an 8x8 block; throws NumericError if 30 sweeps do not
// converge at relative off-diagonal threshold 1e-12.
SvdFactors svd8(const std::array<std::array<double, 8>, 8>& a);

// sigma quantized to 16-bit fixed point; the hash input binds content
// (sigmas of the LSB-cleared block), key1, and keyed block position.
std::array<std::uint16_t, 8> quantize_sigma(const std::array<double, 8>& sigma);
std::uint64_t block_auth(const std::array<std::uint16_t, 8>& q, const StegoKey& key1,
                         std::uint64_t block_tag);

RasterImage svdwm_embed(const RasterImage& img, const StegoKey& key1, const StegoKey& key2);

struct SvdReport {
    TamperMap map; // block granularity, full grid; partial cells never flagged
    std::uint64_t full_blocks = 0;
    std::uint64_t flagged = 0;
    bool partial_right = false;
    bool partial_bottom = false;
};

SvdReport svdwm_verify(const RasterImage& img, const StegoKey& key1, const StegoKey& key2);

} // namespace stegim

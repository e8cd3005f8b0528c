#include "stegim/svdwm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "stegim/errors.hpp"

namespace stegim {

namespace {

using Mat8 = std::array<std::array<double, 8>, 8>;

double col_dot(const Mat8& m, int p, int q) {
    double s = 0.0;
    for (int r = 0; r < 8; ++r)
        s += m[r][p] * m[r][q];
    return s;
}

void rotate_cols(Mat8& m, int p, int q, double c, double s) {
    for (int r = 0; r < 8; ++r) {
        double mp = m[r][p], mq = m[r][q];
        m[r][p] = c * mp - s * mq;
        m[r][q] = s * mp + c * mq;
    }
}

// Orthonormal completion for null columns of U, drawn from standard basis
// vectors against the columns already fixed.
void complete_column(Mat8& u, int col, const std::vector<int>& fixed) {
    for (int k = 0; k < 8; ++k) {
        std::array<double, 8> cand{};
        cand[k] = 1.0;
        for (int f : fixed) {
            double proj = 0.0;
            for (int r = 0; r < 8; ++r)
                proj += cand[r] * u[r][f];
            for (int r = 0; r < 8; ++r)
                cand[r] -= proj * u[r][f];
        }
        double norm = 0.0;
        for (double x : cand)
            norm += x * x;
        norm = std::sqrt(norm);
        if (norm > 0.5) {
            for (int r = 0; r < 8; ++r)
                u[r][col] = cand[r] / norm;
            return;
        }
    }
    throw NumericError("svd8: failed to complete orthonormal basis");
}

struct BlockGrid {
    int full_w, full_h; // full 8x8 blocks per axis
    bool partial_right, partial_bottom;
};

BlockGrid grid_for(const RasterImage& img) {
    if (img.channels != 1)
        throw std::invalid_argument("svd watermark requires a grayscale image");
    if (img.width < 8 || img.height < 8)
        throw std::invalid_argument("image " + std::to_string(img.width) + "x" +
                                    std::to_string(img.height) + " is smaller than one 8x8 block");
    return {img.width / 8, img.height / 8, img.width % 8 != 0, img.height % 8 != 0};
}

Mat8 read_block_cleared(const RasterImage& img, int bx, int by) {
    Mat8 a{};
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c)
            a[r][c] = static_cast<double>(img.at(bx * 8 + c, by * 8 + r) & ~1u);
    return a;
}

std::uint64_t auth_for_block(const RasterImage& img, int bx, int by, const StegoKey& key1,
                             std::uint64_t tag) {
    SvdFactors f = svd8(read_block_cleared(img, bx, by));
    return block_auth(quantize_sigma(f.sigma), key1, tag);
}

} // namespace

SvdFactors svd8(const Mat8& a) {
    constexpr double kTol = 1e-12;
    constexpr int kMaxSweeps = 30;

    Mat8 b = a;
    Mat8 v{};
    for (int i = 0; i < 8; ++i)
        v[i][i] = 1.0;

    // Rotations preserve total column energy, so this threshold is stable
    // across sweeps. Columns below it are numerically null: rotating them
    // against a dominant column never reduces the relative off-diagonal.
    double fro2 = 0.0;
    for (int j = 0; j < 8; ++j)
        fro2 += col_dot(b, j, j);
    const double negligible = fro2 * 1e-28;

    double worst = 0.0;
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        converged = true;
        worst = 0.0;
        for (int p = 0; p < 8; ++p) {
            for (int q = p + 1; q < 8; ++q) {
                double alpha = col_dot(b, p, p);
                double beta = col_dot(b, q, q);
                double gamma = col_dot(b, p, q);
                if (alpha <= negligible || beta <= negligible)
                    continue;
                double scale = std::sqrt(alpha * beta);
                if (std::abs(gamma) <= kTol * scale)
                    continue;
                converged = false;
                worst = std::max(worst, std::abs(gamma) / scale);
                double zeta = (beta - alpha) / (2.0 * gamma);
                double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;
                rotate_cols(b, p, q, c, s);
                rotate_cols(v, p, q, c, s);
            }
        }
    }
    if (!converged)
        throw NumericError("svd8: no convergence after 30 sweeps, residual " +
                           std::to_string(worst));

    SvdFactors out;
    std::array<int, 8> order;
    for (int j = 0; j < 8; ++j) {
        out.sigma[j] = std::sqrt(col_dot(b, j, j));
        order[j] = j;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return out.sigma[x] > out.sigma[y]; });

    std::array<double, 8> sorted_sigma;
    Mat8 u{}, vs{};
    double sig_max = 0.0;
    for (int j = 0; j < 8; ++j)
        sig_max = std::max(sig_max, out.sigma[j]);
    std::vector<int> fixed;
    for (int j = 0; j < 8; ++j) {
        int src = order[j];
        sorted_sigma[j] = out.sigma[src];
        for (int r = 0; r < 8; ++r)
            vs[r][j] = v[r][src];
        if (out.sigma[src] > sig_max * 1e-14 && out.sigma[src] > 0.0) {
            for (int r = 0; r < 8; ++r)
                u[r][j] = b[r][src] / out.sigma[src];
            fixed.push_back(j);
        }
    }
    for (int j = 0; j < 8; ++j) {
        bool is_fixed = std::find(fixed.begin(), fixed.end(), j) != fixed.end();
        if (!is_fixed) {
            complete_column(u, j, fixed);
            fixed.push_back(j);
        }
    }
    out.sigma = sorted_sigma;
    out.u = u;
    out.v = vs;
    return out;
}

std::array<std::uint16_t, 8> quantize_sigma(const std::array<double, 8>& sigma) {
    std::array<std::uint16_t, 8> q{};
    for (int i = 0; i < 8; ++i) {
        long long fx = std::llround(sigma[i] * 256.0);
        q[i] = static_cast<std::uint16_t>(std::clamp(fx, 0ll, 65535ll));
    }
    return q;
}

std::uint64_t block_auth(const std::array<std::uint16_t, 8>& q, const StegoKey& key1,
                         std::uint64_t block_tag) {
    std::vector<std::uint8_t> buf;
    buf.reserve(32);
    for (std::uint16_t x : q) {
        buf.push_back(static_cast<std::uint8_t>(x >> 8));
        buf.push_back(static_cast<std::uint8_t>(x & 0xFF));
    }
    for (int i = 7; i >= 0; --i)
        buf.push_back(static_cast<std::uint8_t>(key1.seed >> (8 * i)));
    for (int i = 7; i >= 0; --i)
        buf.push_back(static_cast<std::uint8_t>(block_tag >> (8 * i)));
    return fnv1a64(buf);
}

RasterImage svdwm_embed(const RasterImage& img, const StegoKey& key1, const StegoKey& key2) {
    BlockGrid grid = grid_for(img);
    std::uint64_t num_blocks = static_cast<std::uint64_t>(grid.full_w) * grid.full_h;
    Permutation perm = keyed_permutation(num_blocks, key2);

    RasterImage out = img;
    for (int by = 0; by < grid.full_h; ++by) {
        for (int bx = 0; bx < grid.full_w; ++bx) {
            for (int r = 0; r < 8; ++r)
                for (int c = 0; c < 8; ++c)
                    out.at(bx * 8 + c, by * 8 + r) &= static_cast<std::uint8_t>(~1u);
            std::uint64_t idx = static_cast<std::uint64_t>(by) * grid.full_w + bx;
            std::uint64_t auth = auth_for_block(out, bx, by, key1, perm[idx]);
            for (int bit = 0; bit < 64; ++bit) {
                int r = bit / 8, c = bit % 8;
                out.at(bx * 8 + c, by * 8 + r) |=
                    static_cast<std::uint8_t>((auth >> (63 - bit)) & 1u);
            }
        }
    }
    return out;
}

SvdReport svdwm_verify(const RasterImage& img, const StegoKey& key1, const StegoKey& key2) {
    BlockGrid grid = grid_for(img);
    std::uint64_t num_blocks = static_cast<std::uint64_t>(grid.full_w) * grid.full_h;
    Permutation perm = keyed_permutation(num_blocks, key2);

    SvdReport rep;
    rep.map = TamperMap::block_map(img.width, img.height, 8);
    rep.full_blocks = num_blocks;
    rep.partial_right = grid.partial_right;
    rep.partial_bottom = grid.partial_bottom;
    for (int by = 0; by < grid.full_h; ++by) {
        for (int bx = 0; bx < grid.full_w; ++bx) {
            std::uint64_t idx = static_cast<std::uint64_t>(by) * grid.full_w + bx;
            std::uint64_t want = auth_for_block(img, bx, by, key1, perm[idx]);
            std::uint64_t got = 0;
            for (int bit = 0; bit < 64; ++bit) {
                int r = bit / 8, c = bit % 8;
                got = (got << 1) | (img.at(bx * 8 + c, by * 8 + r) & 1u);
            }
            if (got != want) {
                rep.map.set(bx, by);
                ++rep.flagged;
            }
        }
    }
    return rep;
}

} // namespace stegim

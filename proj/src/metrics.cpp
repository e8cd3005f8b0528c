#include "stegim/metrics.hpp"

#include <cmath>
#include <cstdio>

namespace stegim {

namespace {

void require_same_shape(const RasterImage& a, const RasterImage& b) {
    if (a.width != b.width || a.height != b.height || a.channels != b.channels)
        throw std::invalid_argument(
            "dimension mismatch: " + std::to_string(a.width) + "x" +
            std::to_string(a.height) + "x" + std::to_string(a.channels) + " vs " +
            std::to_string(b.width) + "x" + std::to_string(b.height) + "x" +
            std::to_string(b.channels));
}

// Channel-mean gray plane used by SSIM for RGB inputs.
std::vector<double> gray_plane(const RasterImage& img) {
    std::vector<double> out(img.pixel_count());
    if (img.channels == 1) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = img.samples[i];
    } else {
        for (std::size_t i = 0; i < out.size(); ++i) {
            std::size_t base = i * 3;
            out[i] = (img.samples[base] + img.samples[base + 1] +
                      img.samples[base + 2]) / 3.0;
        }
    }
    return out;
}

double ssim_window(const std::vector<double>& x, const std::vector<double>& y,
                   int stride, int x0, int y0, int w, int h, const SsimParams& p) {
    double n = static_cast<double>(w) * h;
    double sx = 0, sy = 0;
    for (int j = y0; j < y0 + h; ++j)
        for (int i = x0; i < x0 + w; ++i) {
            sx += x[static_cast<std::size_t>(j) * stride + i];
            sy += y[static_cast<std::size_t>(j) * stride + i];
        }
    double mx = sx / n, my = sy / n;
    double vx = 0, vy = 0, cov = 0;
    for (int j = y0; j < y0 + h; ++j)
        for (int i = x0; i < x0 + w; ++i) {
            double dx = x[static_cast<std::size_t>(j) * stride + i] - mx;
            double dy = y[static_cast<std::size_t>(j) * stride + i] - my;
            vx += dx * dx;
            vy += dy * dy;
            cov += dx * dy;
        }
    vx /= n;
    vy /= n;
    cov /= n;
    return ((2 * mx * my + p.c1) * (2 * cov + p.c2)) /
           ((mx * mx + my * my + p.c1) * (vx + vy + p.c2));
}

} // namespace

double mse(const RasterImage& a, const RasterImage& b) {
    require_same_shape(a, b);
    double sum = 0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        double d = static_cast<double>(a.samples[i]) - b.samples[i];
        sum += d * d;
    }
    return sum / static_cast<double>(a.samples.size());
}

std::optional<double> psnr(const RasterImage& a, const RasterImage& b) {
    double m = mse(a, b);
    if (m == 0.0) return std::nullopt;
    return 10.0 * std::log10(255.0 * 255.0 / m);
}

double ssim(const RasterImage& a, const RasterImage& b, const SsimParams& p) {
    require_same_shape(a, b);
    auto x = gray_plane(a);
    auto y = gray_plane(b);
    if (!p.window_8x8 || a.width < 8 || a.height < 8)
        return ssim_window(x, y, a.width, 0, 0, a.width, a.height, p);
    double total = 0;
    std::size_t windows = 0;
    for (int y0 = 0; y0 + 8 <= a.height; ++y0)
        for (int x0 = 0; x0 + 8 <= a.width; ++x0) {
            total += ssim_window(x, y, a.width, x0, y0, 8, 8, p);
            ++windows;
        }
    return total / static_cast<double>(windows);
}

QualityReport quality_report(const RasterImage& a, const RasterImage& b,
                             const SsimParams& p) {
    QualityReport r;
    r.mse = mse(a, b);
    r.psnr_db = psnr(a, b);
    r.ssim = ssim(a, b, p);
    return r;
}

std::string QualityReport::to_line() const {
    char buf[128];
    if (psnr_db)
        std::snprintf(buf, sizeof buf, "mse=%.6g psnr_db=%.6g ssim=%.6g", mse,
                      *psnr_db, ssim);
    else
        std::snprintf(buf, sizeof buf, "mse=%.6g psnr_db=IDENTICAL ssim=%.6g", mse,
                      ssim);
    return buf;
}

TamperMap diff_map(const RasterImage& a, const RasterImage& b, int threshold) {
    require_same_shape(a, b);
    TamperMap map = TamperMap::pixel_map(a.width, a.height);
    for (std::size_t p = 0; p < a.pixel_count(); ++p) {
        for (int c = 0; c < a.channels; ++c) {
            int d = std::abs(static_cast<int>(a.samples[p * a.channels + c]) -
                             static_cast<int>(b.samples[p * a.channels + c]));
            if (d > threshold) {
                map.flags[p] = 1;
                break;
            }
        }
    }
    return map;
}

} // namespace stegim

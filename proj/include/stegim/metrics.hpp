#pragma once

#include <optional>
#include <string>

#include "stegim/image.hpp"

namespace stegim {

// Stabilization constants are intensity-squared quantities; the defaults are
// (0.01*255)^2 and (0.03*255)^2. window_8x8 switches from the whole-image
// statistics to the mean over sliding 8x8 windows.
struct SsimParams {
    double c1 = (0.01 * 255.0) * (0.01 * 255.0);
    double c2 = (0.03 * 255.0) * (0.03 * 255.0);
    bool window_8x8 = false;
};

struct QualityReport {
    double mse = 0.0;
    std::optional<double> psnr_db; // nullopt = images identical
    double ssim = 1.0;

    // "mse=... psnr_db=...|IDENTICAL ssim=..."
    std::string to_line() const;
};

double mse(const RasterImage& a, const RasterImage& b);
std::optional<double> psnr(const RasterImage& a, const RasterImage& b);
double ssim(const RasterImage& a, const RasterImage& b, const SsimParams& p = {});
QualityReport quality_report(const RasterImage& a, const RasterImage& b,
                             const SsimParams& p = {});

// Per-pixel flag where any channel differs by more than threshold.
TamperMap diff_map(const RasterImage& a, const RasterImage& b, int threshold = 0);

} // namespace stegim

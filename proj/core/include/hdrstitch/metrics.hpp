#pragma once

#include <array>

#include "hdrstitch/image.hpp"

namespace hdrstitch::metrics {

/// 10 log10(255^2 / MSE) over all samples; +infinity when the images match.
double psnr(const LdrImage& a, const LdrImage& b);

/// Mean single-scale SSIM of the luma (0.299 R + 0.587 G + 0.114 B), 11x11
/// Gaussian window with sigma 1.5, K1 = 0.01, K2 = 0.03, L = 255, averaged
/// over every window position fully inside the image.
double ssim(const LdrImage& a, const LdrImage& b);

struct MetricReport {
  double psnr = 0.0;
  double ssim = 0.0;
  std::array<double, 3> psnr_per_channel{};
};

MetricReport evaluate(const LdrImage& pred, const LdrImage& truth);

}  // namespace hdrstitch::metrics

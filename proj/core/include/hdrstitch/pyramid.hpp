#pragma once

#include <vector>

#include "hdrstitch/image.hpp"

namespace hdrstitch::mef {

enum class PyramidKind { kGaussian, kLaplacian };

/// Level 0 is full resolution; level k+1 has ceil(w/2) x ceil(h/2) pixels.
/// A Laplacian pyramid's last level is the Gaussian residual.
struct Pyramid {
  std::vector<FloatImage> levels;
  PyramidKind kind = PyramidKind::kGaussian;

  int depth() const noexcept { return static_cast<int>(levels.size()) - 1; }
};

/// Largest depth accepted for a w x h image: floor(log2(min(w, h))) - 1.
int max_pyramid_depth(int width, int height) noexcept;
/// floor(log2(min(w, h))) - 2, at least 0.
int default_pyramid_depth(int width, int height) noexcept;

/// 5-tap binomial [1 4 6 4 1]/16 blur (replicated borders), then decimation.
FloatImage downsample(const FloatImage& image);
/// Inverse-shaped interpolation to an explicit size (w, h); constants stay
/// constant exactly.
FloatImage upsample(const FloatImage& image, int width, int height);

Pyramid gaussian_pyramid(const FloatImage& image, int depth);
Pyramid laplacian_pyramid(const FloatImage& image, int depth);
FloatImage collapse(const Pyramid& pyramid);

}  // namespace hdrstitch::mef

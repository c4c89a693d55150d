#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "hdrstitch/image.hpp"
#include "hdrstitch/layout.hpp"
#include "hdrstitch/viewset.hpp"

namespace hdrstitch {

/// Procedural test scene: a smooth HDR radiance field over the whole panorama,
/// the three captured views, and the ground-truth panoramas at each exposure.
struct SyntheticScene {
  ViewSet viewset;
  std::array<LdrImage, 3> truth;   // full panorama rendered at exposure l
  FloatImage radiance;             // linear scene radiance, panorama sized
  std::array<double, 3> exposure_times{};
  double response_max = 1.0;       // sensor input that maps to 255
};

/// Camera response r(x) = 255 (x / x_max)^(1/2.2), clipped to [0, 255].
double response_curve(double exposure_input, double response_max) noexcept;

/// Deterministic in `seed`. Radiance spans at least 12 stops; the brightest
/// exposure clips its top percent and the darkest has deep shadows near zero.
SyntheticScene synthesize_test_scene(std::uint64_t seed, const PanoLayout& layout);

/// Two captures of one stationary textured scene (no global gradient), the
/// second with `ratio` times the exposure of the first. The longer exposure
/// clips its top percent.
struct ExposurePair {
  LdrImage short_exposure;
  LdrImage long_exposure;
  double response_max = 1.0;
};

ExposurePair synthesize_exposure_pair(std::uint64_t seed, int width, int height, double ratio = 2.0);

/// Ground-truth rendition of view `from` at the exposure of view `to`, i.e.
/// the window of truth[to] covered by view `from`.
LdrImage truth_rendition(const SyntheticScene& scene, int from, int to);

/// Simulated camera shake: `a` keeps columns [10, W) and rows [0, H-10);
/// `b` keeps columns [0, W-10) and rows [10, H). Both outputs are
/// (W-10) x (H-10). Requires inputs of identical size, at least 11x11.
std::pair<LdrImage, LdrImage> simulate_misalignment(const LdrImage& a, const LdrImage& b);

}  // namespace hdrstitch

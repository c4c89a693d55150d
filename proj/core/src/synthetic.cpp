#include "hdrstitch/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "hdrstitch/error.hpp"

namespace hdrstitch {

namespace {

constexpr double kGamma = 1.0 / 2.2;
// Vertical log2-radiance ramp, top of frame brightest. Bumps can shave at most
// 2 * kBumpStops off it, leaving more than 12 stops of range.
constexpr double kRampStops = 15.0;
constexpr double kBumpStops = 1.2;
constexpr int kBumpCount = 12;
// Fraction of radiance samples that clip in the longest exposure.
constexpr double kClipQuantile = 0.99;

struct Bump {
  double cx, cy, sx, sy, stops;
  std::array<double, 3> tint;
};

// log2 E = ramp(y) + channel offset + sum of Gaussian bumps. The ramp spans the
// full height so every vertical band, and thus every overlap, sees the whole
// intensity range of the panorama.
FloatImage render_radiance(std::uint64_t seed, int width, int height) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::array<double, 3> channel_offset{};
  for (auto& o : channel_offset) o = -0.6 * unit(rng);

  std::vector<Bump> bumps;
  for (int k = 0; k < kBumpCount; ++k) {
    Bump b{};
    b.cx = unit(rng) * width;
    b.cy = unit(rng) * height;
    b.sx = (0.05 + 0.15 * unit(rng)) * width;
    b.sy = (0.10 + 0.20 * unit(rng)) * height;
    b.stops = kBumpStops * (2.0 * unit(rng) - 1.0);
    for (auto& t : b.tint) t = 0.7 + 0.3 * unit(rng);
    bumps.push_back(b);
  }

  FloatImage log_radiance(width, height, kRgbChannels);
  for (int y = 0; y < height; ++y) {
    const double ramp = kRampStops * (1.0 - static_cast<double>(y) / std::max(1, height - 1));
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < kRgbChannels; ++c) {
        log_radiance.at(x, y, c) = ramp + channel_offset[static_cast<std::size_t>(c)];
      }
    }
  }
  std::vector<double> gx(static_cast<std::size_t>(width));
  std::vector<double> gy(static_cast<std::size_t>(height));
  for (const Bump& b : bumps) {
    for (int x = 0; x < width; ++x) {
      const double d = (x - b.cx) / b.sx;
      gx[static_cast<std::size_t>(x)] = std::exp(-0.5 * d * d);
    }
    for (int y = 0; y < height; ++y) {
      const double d = (y - b.cy) / b.sy;
      gy[static_cast<std::size_t>(y)] = b.stops * std::exp(-0.5 * d * d);
    }
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const double g = gy[static_cast<std::size_t>(y)] * gx[static_cast<std::size_t>(x)];
        for (int c = 0; c < kRgbChannels; ++c) {
          log_radiance.at(x, y, c) += g * b.tint[static_cast<std::size_t>(c)];
        }
      }
    }
  }
  for (double& v : log_radiance.data()) v = std::exp2(v);
  return log_radiance;
}

// Textured field for exposure pairs: many isotropic bumps at small scales,
// so any sizeable crop has about the same intensity distribution.
constexpr int kTextureBumps = 80;
constexpr double kTextureStops = 2.0;

FloatImage render_texture(std::uint64_t seed, int width, int height) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double scale = std::min(width, height);
  FloatImage log_radiance(width, height, kRgbChannels, 0.0);
  std::vector<double> gx(static_cast<std::size_t>(width));
  std::vector<double> gy(static_cast<std::size_t>(height));
  for (int k = 0; k < kTextureBumps; ++k) {
    const double cx = unit(rng) * width;
    const double cy = unit(rng) * height;
    const double sigma = (0.02 + 0.06 * unit(rng)) * scale;
    const double stops = kTextureStops * (2.0 * unit(rng) - 1.0);
    std::array<double, 3> tint{};
    for (auto& t : tint) t = 0.7 + 0.3 * unit(rng);
    for (int x = 0; x < width; ++x) {
      const double d = (x - cx) / sigma;
      gx[static_cast<std::size_t>(x)] = std::exp(-0.5 * d * d);
    }
    for (int y = 0; y < height; ++y) {
      const double d = (y - cy) / sigma;
      gy[static_cast<std::size_t>(y)] = stops * std::exp(-0.5 * d * d);
    }
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const double g = gy[static_cast<std::size_t>(y)] * gx[static_cast<std::size_t>(x)];
        for (int c = 0; c < kRgbChannels; ++c) log_radiance.at(x, y, c) += g * tint[static_cast<std::size_t>(c)];
      }
    }
  }
  for (double& v : log_radiance.data()) v = std::exp2(v);
  return log_radiance;
}

double clip_level(const FloatImage& radiance, double exposure_time) {
  std::vector<double> samples(radiance.data().begin(), radiance.data().end());
  const auto nth = samples.begin() +
                   static_cast<std::ptrdiff_t>(kClipQuantile * static_cast<double>(samples.size() - 1));
  std::nth_element(samples.begin(), nth, samples.end());
  return *nth * exposure_time;
}

LdrImage render_exposure(const FloatImage& radiance, double exposure_time, double response_max,
                         int x0, int width) {
  LdrImage out(width, radiance.height());
  for (int y = 0; y < radiance.height(); ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < kRgbChannels; ++c) {
        out.at(x, y, c) = quantize_sample(
            response_curve(radiance.at(x0 + x, y, c) * exposure_time, response_max));
      }
    }
  }
  return out;
}

}  // namespace

double response_curve(double exposure_input, double response_max) noexcept {
  if (!(exposure_input > 0.0)) return 0.0;
  const double v = 255.0 * std::pow(exposure_input / response_max, kGamma);
  return std::min(v, 255.0);
}

SyntheticScene synthesize_test_scene(std::uint64_t seed, const PanoLayout& layout) {
  SyntheticScene scene{ViewSet{{}, layout}, {}, {}, {}, 1.0};
  scene.radiance = render_radiance(seed, layout.pano_width(), layout.pano_height());
  scene.exposure_times = layout.exposure_ratios();

  scene.response_max = clip_level(scene.radiance, scene.exposure_times[2]);

  for (int l = 0; l < 3; ++l) {
    const auto li = static_cast<std::size_t>(l);
    scene.truth[li] = render_exposure(scene.radiance, scene.exposure_times[li],
                                      scene.response_max, 0, layout.pano_width());
    scene.viewset.views[li] = crop(scene.truth[li], layout.view_offset(l), 0,
                                   layout.view_width(), layout.view_height());
  }
  return scene;
}

ExposurePair synthesize_exposure_pair(std::uint64_t seed, int width, int height, double ratio) {
  if (width < 1 || height < 1) throw validation_error("exposure pair needs a positive size");
  if (!(ratio > 1.0)) throw validation_error("exposure ratio must exceed 1");
  const FloatImage radiance = render_texture(seed, width, height);
  ExposurePair pair;
  pair.response_max = clip_level(radiance, ratio);
  pair.short_exposure = render_exposure(radiance, 1.0, pair.response_max, 0, width);
  pair.long_exposure = render_exposure(radiance, ratio, pair.response_max, 0, width);
  return pair;
}

LdrImage truth_rendition(const SyntheticScene& scene, int from, int to) {
  if (to < 0 || to > 2) throw validation_error("exposure index must be 0, 1 or 2");
  const PanoLayout& layout = scene.viewset.layout;
  return crop(scene.truth[static_cast<std::size_t>(to)], layout.view_offset(from), 0,
              layout.view_width(), layout.view_height());
}

std::pair<LdrImage, LdrImage> simulate_misalignment(const LdrImage& a, const LdrImage& b) {
  constexpr int kShift = 10;
  if (a.width() != b.width() || a.height() != b.height()) {
    throw validation_error("misalignment needs two images of the same size");
  }
  if (a.width() <= kShift || a.height() <= kShift) {
    throw validation_error("image too small to crop (needs at least 11x11)");
  }
  const int w = a.width() - kShift;
  const int h = a.height() - kShift;
  return {crop(a, kShift, 0, w, h), crop(b, 0, kShift, w, h)};
}

}  // namespace hdrstitch

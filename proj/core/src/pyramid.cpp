#include "hdrstitch/pyramid.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "hdrstitch/error.hpp"

namespace hdrstitch::mef {

namespace {

constexpr double kTaps[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};

int floor_log2(int v) noexcept {
  return v <= 0 ? -1 : std::bit_width(static_cast<unsigned>(v)) - 1;
}

// Separable blur along x followed by y, replicated borders.
FloatImage blur(const FloatImage& in) {
  const int w = in.width();
  const int h = in.height();
  const int ch = in.channels();
  FloatImage tmp(w, h, ch);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < ch; ++c) {
        double acc = 0.0;
        for (int t = -2; t <= 2; ++t) acc += kTaps[t + 2] * in.at(std::clamp(x + t, 0, w - 1), y, c);
        tmp.at(x, y, c) = acc;
      }
    }
  }
  FloatImage out(w, h, ch);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < ch; ++c) {
        double acc = 0.0;
        for (int t = -2; t <= 2; ++t) acc += kTaps[t + 2] * tmp.at(x, std::clamp(y + t, 0, h - 1), c);
        out.at(x, y, c) = acc;
      }
    }
  }
  return out;
}

// Polyphase form of zero-insertion followed by the doubled binomial kernel:
// even outputs take (1, 6, 1)/8, odd outputs (1, 1)/2 of the coarse samples.
double interpolate(int out_index, int n, auto&& coarse) {
  const int i = out_index / 2;
  const auto at = [&](int k) { return coarse(std::clamp(k, 0, n - 1)); };
  if (out_index % 2 == 0) return (at(i - 1) + 6.0 * at(i) + at(i + 1)) / 8.0;
  return (at(i) + at(i + 1)) / 2.0;
}

}  // namespace

int max_pyramid_depth(int width, int height) noexcept {
  return floor_log2(std::min(width, height)) - 1;
}

int default_pyramid_depth(int width, int height) noexcept {
  return std::max(0, floor_log2(std::min(width, height)) - 2);
}

FloatImage downsample(const FloatImage& image) {
  const FloatImage smooth = blur(image);
  const int w = (image.width() + 1) / 2;
  const int h = (image.height() + 1) / 2;
  FloatImage out(w, h, image.channels());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < image.channels(); ++c) out.at(x, y, c) = smooth.at(2 * x, 2 * y, c);
    }
  }
  return out;
}

FloatImage upsample(const FloatImage& image, int width, int height) {
  const int ch = image.channels();
  FloatImage rows(width, image.height(), ch);
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < ch; ++c) {
        rows.at(x, y, c) = interpolate(x, image.width(), [&](int k) { return image.at(k, y, c); });
      }
    }
  }
  FloatImage out(width, height, ch);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < ch; ++c) {
        out.at(x, y, c) = interpolate(y, image.height(), [&](int k) { return rows.at(x, k, c); });
      }
    }
  }
  return out;
}

Pyramid gaussian_pyramid(const FloatImage& image, int depth) {
  if (depth < 0 || depth > max_pyramid_depth(image.width(), image.height())) {
    throw validation_error("pyramid depth " + std::to_string(depth) + " too large for " +
                           std::to_string(image.width()) + "x" + std::to_string(image.height()));
  }
  Pyramid p{{image}, PyramidKind::kGaussian};
  for (int k = 0; k < depth; ++k) p.levels.push_back(downsample(p.levels.back()));
  return p;
}

Pyramid laplacian_pyramid(const FloatImage& image, int depth) {
  Pyramid p = gaussian_pyramid(image, depth);
  for (int k = 0; k < depth; ++k) {
    FloatImage& level = p.levels[static_cast<std::size_t>(k)];
    const FloatImage up =
        upsample(p.levels[static_cast<std::size_t>(k + 1)], level.width(), level.height());
    auto dst = level.data();
    const auto src = up.data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= src[i];
  }
  p.kind = PyramidKind::kLaplacian;
  return p;
}

FloatImage collapse(const Pyramid& pyramid) {
  if (pyramid.levels.empty()) throw validation_error("cannot collapse an empty pyramid");
  if (pyramid.kind != PyramidKind::kLaplacian) throw validation_error("collapse expects a Laplacian pyramid");
  FloatImage current = pyramid.levels.back();
  for (int k = pyramid.depth() - 1; k >= 0; --k) {
    const FloatImage& detail = pyramid.levels[static_cast<std::size_t>(k)];
    FloatImage up = upsample(current, detail.width(), detail.height());
    auto dst = up.data();
    const auto src = detail.data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
    current = std::move(up);
  }
  return current;
}

}  // namespace hdrstitch::mef

#include "hdrstitch/mef.hpp"

#include <algorithm>
#include <cmath>

#include "hdrstitch/error.hpp"

namespace hdrstitch::mef {

FloatImage quality_weight(const FloatImage& image) {
  if (image.channels() != kRgbChannels) throw validation_error("quality_weight expects RGB input");
  const int w = image.width();
  const int h = image.height();
  const FloatImage gray = to_gray(image);
  const double denom = 2.0 * kWellExposedSigma * kWellExposedSigma;

  FloatImage weight(w, h, 1);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto g = [&](int xx, int yy) {
        return gray.at(std::clamp(xx, 0, w - 1), std::clamp(yy, 0, h - 1));
      };
      const double contrast =
          std::abs(g(x - 1, y) + g(x + 1, y) + g(x, y - 1) + g(x, y + 1) - 4.0 * g(x, y));

      const double r = image.at(x, y, 0);
      const double gr = image.at(x, y, 1);
      const double b = image.at(x, y, 2);
      const double mean = (r + gr + b) / 3.0;
      const double saturation = std::sqrt(
          ((r - mean) * (r - mean) + (gr - mean) * (gr - mean) + (b - mean) * (b - mean)) / 3.0);

      double exposedness = 1.0;
      for (double v : {r, gr, b}) {
        const double d = v / 255.0 - 0.5;
        exposedness *= std::exp(-d * d / denom);
      }
      weight.at(x, y) = contrast * saturation * exposedness + kWeightFloor;
    }
  }
  return weight;
}

WeightMaps normalize_weights(const WeightMaps& maps) {
  for (const auto& m : maps) {
    if (!m.same_shape(maps[0]) || m.channels() != 1) {
      throw validation_error("weight maps must be single-channel and equally sized");
    }
  }
  WeightMaps out = maps;
  const std::size_t n = maps[0].data().size();
  for (std::size_t i = 0; i < n; ++i) {
    const double sum = maps[0].data()[i] + maps[1].data()[i] + maps[2].data()[i];
    for (auto& m : out) m.data()[i] /= sum;
  }
  return out;
}

FloatImage fuse(const std::array<FloatImage, 3>& images, int depth, FuseStats* stats) {
  for (const auto& img : images) {
    if (!img.same_shape(images[0]) || img.channels() != kRgbChannels) {
      throw validation_error("fuse needs three RGB images of identical size");
    }
  }
  const WeightMaps weights = normalize_weights(
      {quality_weight(images[0]), quality_weight(images[1]), quality_weight(images[2])});

  Pyramid blended;
  for (std::size_t l = 0; l < images.size(); ++l) {
    const Pyramid lap = laplacian_pyramid(images[l], depth);
    const Pyramid gw = gaussian_pyramid(weights[l], depth);
    if (blended.levels.empty()) {
      blended.kind = PyramidKind::kLaplacian;
      for (const auto& level : lap.levels) {
        blended.levels.emplace_back(level.width(), level.height(), level.channels());
      }
    }
    for (std::size_t k = 0; k < lap.levels.size(); ++k) {
      const FloatImage& src = lap.levels[k];
      const FloatImage& wk = gw.levels[k];
      FloatImage& dst = blended.levels[k];
      for (int y = 0; y < src.height(); ++y) {
        for (int x = 0; x < src.width(); ++x) {
          const double wv = wk.at(x, y);
          for (int c = 0; c < kRgbChannels; ++c) dst.at(x, y, c) += wv * src.at(x, y, c);
        }
      }
    }
  }

  FloatImage out = collapse(blended);
  double overshoot = 0.0;
  for (double& v : out.data()) {
    overshoot = std::max({overshoot, v - 255.0, -v});
    v = std::clamp(v, 0.0, 255.0);
  }
  if (stats) stats->max_overshoot = overshoot;
  return out;
}

PanoImage fuse(const std::array<PanoImage, 3>& panos, int depth, FuseStats* stats) {
  return {fuse({panos[0].image, panos[1].image, panos[2].image}, depth, stats), panos[0].layout};
}

}  // namespace hdrstitch::mef

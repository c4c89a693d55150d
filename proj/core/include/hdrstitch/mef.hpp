#pragma once

#include <array>

#include "hdrstitch/image.hpp"
#include "hdrstitch/pano.hpp"
#include "hdrstitch/pyramid.hpp"

namespace hdrstitch::mef {

inline constexpr double kWeightFloor = 1e-12;
inline constexpr double kWellExposedSigma = 0.2;

/// One single-channel weight map per exposure level.
using WeightMaps = std::array<FloatImage, 3>;

/// Pointwise contrast * saturation * well-exposedness + 1e-12, where contrast
/// is the absolute 4-neighbour Laplacian of the luma, saturation the standard
/// deviation across R, G, B, and well-exposedness the product over channels of
/// exp(-(I/255 - 0.5)^2 / (2 * 0.2^2)).
FloatImage quality_weight(const FloatImage& image);

/// Divides each map by the pointwise sum of all three.
WeightMaps normalize_weights(const WeightMaps& maps);

struct FuseStats {
  double max_overshoot = 0.0;  // largest excursion outside [0, 255] before clamping
};

/// Laplacian-pyramid blend of three equally sized images, weighted by the
/// Gaussian pyramids of their normalized quality weights. Result clamped to
/// [0, 255].
FloatImage fuse(const std::array<FloatImage, 3>& images, int depth, FuseStats* stats = nullptr);
PanoImage fuse(const std::array<PanoImage, 3>& panos, int depth, FuseStats* stats = nullptr);

}  // namespace hdrstitch::mef

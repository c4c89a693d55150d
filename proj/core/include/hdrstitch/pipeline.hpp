#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hdrstitch/enhance.hpp"
#include "hdrstitch/image.hpp"
#include "hdrstitch/mef.hpp"
#include "hdrstitch/pano.hpp"
#include "hdrstitch/viewset.hpp"
#include "hdrstitch/wha.hpp"

namespace hdrstitch {

struct StitchConfig {
  enhance::SolverConfig solver;
  std::optional<int> mef_depth;  // default: floor(log2(min(H, W))) - 2
  std::optional<std::filesystem::path> refined_dir;
  std::optional<std::filesystem::path> intermediates_dir;
};

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct StitchResult {
  LdrImage final_image;
  std::array<PanoImage, 3> panos;
  PanoImage fused;
  FloatImage detail;
  /// imfs[i][j] maps view i to the exposure of view j; the diagonal is identity.
  std::array<std::array<wha::Imf, 3>, 3> imfs;
  int cg_iterations = 0;
  double cg_relative_residual = 0.0;
  double mef_overshoot = 0.0;
  std::vector<StageTiming> timings;
};

/// All six view-to-exposure mappings: neighbours from their shared overlaps,
/// 1<->3 by composing through view 2.
std::array<std::array<wha::Imf, 3>, 3> estimate_all_imfs(const ViewSet& viewset);

/// Physics-driven renditions: every view mapped to every other exposure.
ExposureRenditionSet physics_renditions(const ViewSet& viewset,
                                        const std::array<std::array<wha::Imf, 3>, 3>& imfs);

/// Fusion plus detail recovery on three panoramas; returns (final float
/// image, detail map).
std::pair<FloatImage, enhance::DetailMap> fuse_and_enhance(const std::array<PanoImage, 3>& panos,
                                                            const StitchConfig& cfg,
                                                            mef::FuseStats* stats = nullptr);

/// Full pipeline. Errors from any stage are rethrown with the stage name
/// prefixed; the error kind is preserved.
StitchResult stitch(const ViewSet& viewset, const StitchConfig& cfg);

}  // namespace hdrstitch

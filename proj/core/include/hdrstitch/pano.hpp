#pragma once

#include <array>
#include <filesystem>

#include "hdrstitch/image.hpp"
#include "hdrstitch/layout.hpp"
#include "hdrstitch/viewset.hpp"

namespace hdrstitch {

enum class RenditionSource { kDirect, kPhysics, kRefined };

/// The three captured views plus every cross-exposure rendition: view `from`
/// re-rendered at the exposure of view `to`, for all six ordered pairs.
class ExposureRenditionSet {
 public:
  ExposureRenditionSet(const ViewSet& viewset, std::array<std::array<FloatImage, 3>, 3> mapped);

  const PanoLayout& layout() const noexcept { return layout_; }

  /// View `from` at exposure `to`; the captured view itself when from == to.
  const FloatImage& rendition(int from, int to) const;
  RenditionSource source(int from, int to) const;

  /// Replaces a mapped rendition; `from` must differ from `to`.
  void replace(int from, int to, FloatImage image, RenditionSource source);

 private:
  PanoLayout layout_;
  std::array<std::array<FloatImage, 3>, 3> images_;
  std::array<std::array<RenditionSource, 3>, 3> sources_{};
};

struct PanoImage {
  FloatImage image;
  PanoLayout layout;
};

/// Linear blend weight inside overlap 0 (views 1/2) or 1 (views 2/3):
/// (end - x) / width over the half-open overlap [begin, end). 1 at the first
/// overlap column, approaching 0 towards the right-hand view.
double overlap_weight(int overlap, int column, const PanoLayout& layout);

/// Panorama at the exposure of view `level` (0..2). Columns seen by one view
/// copy that view's rendition; overlap columns blend the two renditions.
PanoImage synthesize_pano(int level, const ExposureRenditionSet& renditions);

/// Substitutes any `z<i>_to_<j>.png|ppm` found in `directory` (1-based view
/// indices) for the corresponding rendition. Throws on size mismatch.
ExposureRenditionSet load_refined(const std::filesystem::path& directory,
                                  ExposureRenditionSet renditions);

}  // namespace hdrstitch

#include "hdrstitch/layout.hpp"

#include <cmath>
#include <string>

#include "hdrstitch/error.hpp"

namespace hdrstitch {

std::string_view to_string(Region region) noexcept {
  switch (region) {
    case Region::kOnly1: return "only1";
    case Region::kOverlap12: return "overlap12";
    case Region::kOnly2: return "only2";
    case Region::kOverlap23: return "overlap23";
    case Region::kOnly3: return "only3";
  }
  return "unknown";
}

PanoLayout::PanoLayout(int view_width, int view_height, int overlap12_width,
                       int overlap23_width, std::array<double, 3> exposure_ratios)
    : view_width_(view_width),
      view_height_(view_height),
      overlap12_(overlap12_width),
      overlap23_(overlap23_width),
      ratios_(exposure_ratios) {
  if (view_width <= 0 || view_height <= 0) {
    throw validation_error("view dimensions must be positive");
  }
  if (overlap12_width <= 0 || overlap23_width <= 0) {
    throw validation_error("overlap widths must be positive");
  }
  if (overlap12_width >= view_width || overlap23_width >= view_width) {
    throw validation_error("overlap must be smaller than view (view_width=" +
                           std::to_string(view_width) + ")");
  }
  // The middle view needs at least one column that belongs to it alone.
  if (overlap12_width + overlap23_width >= view_width) {
    throw validation_error("overlaps of the middle view must not meet");
  }
  for (double r : ratios_) {
    if (!(r > 0.0) || !std::isfinite(r)) throw validation_error("exposure ratios must be positive");
  }
  if (!(ratios_[0] < ratios_[1] && ratios_[1] < ratios_[2])) {
    throw validation_error("exposure ratios must be strictly increasing");
  }
}

PanoLayout PanoLayout::with_ev_gap(int view_width, int view_height, int overlap12_width,
                                   int overlap23_width, double ev_gap) {
  const double step = std::exp2(ev_gap);
  return PanoLayout(view_width, view_height, overlap12_width, overlap23_width,
                    {1.0, step, step * step});
}

int PanoLayout::view_offset(int view) const {
  switch (view) {
    case 0: return 0;
    case 1: return view_width_ - overlap12_;
    case 2: return 2 * view_width_ - overlap12_ - overlap23_;
    default: throw validation_error("view index must be 0, 1 or 2");
  }
}

ColumnRange PanoLayout::view_range(int view) const {
  const int offset = view_offset(view);
  return {offset, offset + view_width_};
}

ColumnRange PanoLayout::region_range(Region region) const noexcept {
  const int v1 = view_width_ - overlap12_;
  const int v2 = 2 * view_width_ - overlap12_ - overlap23_;
  switch (region) {
    case Region::kOnly1: return {0, v1};
    case Region::kOverlap12: return {v1, view_width_};
    case Region::kOnly2: return {view_width_, v2};
    case Region::kOverlap23: return {v2, v1 + view_width_};
    case Region::kOnly3: return {v1 + view_width_, pano_width()};
  }
  return {};
}

ColumnRange PanoLayout::overlap_range(int overlap) const {
  if (overlap == 0) return region_range(Region::kOverlap12);
  if (overlap == 1) return region_range(Region::kOverlap23);
  throw validation_error("overlap index must be 0 or 1");
}

Region PanoLayout::region_of(int column) const {
  if (column < 0 || column >= pano_width()) {
    throw validation_error("column " + std::to_string(column) + " outside panorama [0, " +
                           std::to_string(pano_width()) + ")");
  }
  for (Region r : {Region::kOnly1, Region::kOverlap12, Region::kOnly2, Region::kOverlap23}) {
    if (column < region_range(r).end) return r;
  }
  return Region::kOnly3;
}

LdrImage extract_overlap(const LdrImage& view, int view_index, Side side,
                         const PanoLayout& layout) {
  if (view.width() != layout.view_width() || view.height() != layout.view_height()) {
    throw validation_error("view does not match layout dimensions");
  }
  if (view_index < 0 || view_index > 2) throw validation_error("view index must be 0, 1 or 2");
  if (side == Side::kLeft && view_index == 0) {
    throw validation_error("view 1 has no left neighbour");
  }
  if (side == Side::kRight && view_index == 2) {
    throw validation_error("view 3 has no right neighbour");
  }
  const int width = side == Side::kLeft
                        ? (view_index == 1 ? layout.overlap12_width() : layout.overlap23_width())
                        : (view_index == 0 ? layout.overlap12_width() : layout.overlap23_width());
  const int x0 = side == Side::kLeft ? 0 : layout.view_width() - width;
  return crop(view, x0, 0, width, view.height());
}

}  // namespace hdrstitch

#pragma once

#include <array>
#include <string_view>

#include "hdrstitch/image.hpp"

namespace hdrstitch {

/// Half-open column range [begin, end).
struct ColumnRange {
  int begin = 0;
  int end = 0;

  int width() const noexcept { return end - begin; }
  bool contains(int x) const noexcept { return x >= begin && x < end; }
  friend bool operator==(const ColumnRange&, const ColumnRange&) = default;
};

/// The five horizontal panorama regions, left to right: the area seen only by
/// view 1, the view 1/2 overlap, only view 2, the view 2/3 overlap, only view 3.
enum class Region { kOnly1, kOverlap12, kOnly2, kOverlap23, kOnly3 };

std::string_view to_string(Region region) noexcept;

enum class Side { kLeft, kRight };

/// Geometry of three views laid side by side in a horizontal strip, each pair
/// of neighbours sharing a band of columns, plus relative exposure times.
///
/// Views are indexed 0, 1, 2 from darkest to brightest. Overlap 0 is between
/// views 0 and 1, overlap 1 between views 1 and 2.
class PanoLayout {
 public:
  /// 640x480 views with 200-column overlaps and exposures 1:2:4.
  PanoLayout() : PanoLayout(640, 480, 200, 200) {}
  /// Throws a validation error if the geometry is degenerate.
  PanoLayout(int view_width, int view_height, int overlap12_width, int overlap23_width,
             std::array<double, 3> exposure_ratios = {1.0, 2.0, 4.0});

  /// Exposure ratios 1 : 2^ev_gap : 4^ev_gap.
  static PanoLayout with_ev_gap(int view_width, int view_height, int overlap12_width,
                                int overlap23_width, double ev_gap);

  int view_width() const noexcept { return view_width_; }
  int view_height() const noexcept { return view_height_; }
  int overlap12_width() const noexcept { return overlap12_; }
  int overlap23_width() const noexcept { return overlap23_; }
  const std::array<double, 3>& exposure_ratios() const noexcept { return ratios_; }

  int pano_width() const noexcept { return 3 * view_width_ - overlap12_ - overlap23_; }
  int pano_height() const noexcept { return view_height_; }

  /// Panorama column of the first column of `view`.
  int view_offset(int view) const;
  ColumnRange view_range(int view) const;
  ColumnRange region_range(Region region) const noexcept;
  /// Panorama columns of overlap 0 (views 0/1) or overlap 1 (views 1/2).
  ColumnRange overlap_range(int overlap) const;

  Region region_of(int column) const;

  friend bool operator==(const PanoLayout&, const PanoLayout&) = default;

 private:
  int view_width_;
  int view_height_;
  int overlap12_;
  int overlap23_;
  std::array<double, 3> ratios_;
};

/// Overlap sub-image of `view` (index 0..2) on the given side, full height.
/// Throws for the left side of view 0 and the right side of view 2.
LdrImage extract_overlap(const LdrImage& view, int view_index, Side side, const PanoLayout& layout);

}  // namespace hdrstitch

#pragma once

#include <array>
#include <filesystem>

#include "hdrstitch/image.hpp"
#include "hdrstitch/layout.hpp"

namespace hdrstitch {

/// Three aligned views ordered from the shortest to the longest exposure.
struct ViewSet {
  std::array<LdrImage, 3> views;
  PanoLayout layout;

  /// Throws unless all three views match the layout's view size.
  void validate() const;
};

/// Parses a `layout.txt` key=value file.
PanoLayout read_layout(const std::filesystem::path& path);
void write_layout(const std::filesystem::path& path, const PanoLayout& layout);

/// Loads `z1`, `z2`, `z3` (png or ppm) and `layout.txt` from a scene directory.
ViewSet load_viewset(const std::filesystem::path& scene_directory);

/// Writes views as `z<i>.png` and the layout descriptor.
void save_viewset(const std::filesystem::path& scene_directory, const ViewSet& viewset);

}  // namespace hdrstitch

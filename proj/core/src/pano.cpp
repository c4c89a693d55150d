#include "hdrstitch/pano.hpp"

#include <string>

#include "hdrstitch/error.hpp"
#include "hdrstitch/image_io.hpp"

namespace hdrstitch {

namespace {

void check_index(int i) {
  if (i < 0 || i > 2) throw validation_error("view index must be 0, 1 or 2");
}

std::string pair_name(int from, int to) {
  return "z" + std::to_string(from + 1) + "_to_" + std::to_string(to + 1);
}

}  // namespace

ExposureRenditionSet::ExposureRenditionSet(const ViewSet& viewset,
                                           std::array<std::array<FloatImage, 3>, 3> mapped)
    : layout_(viewset.layout), images_(std::move(mapped)) {
  viewset.validate();
  for (int i = 0; i < 3; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    images_[ii][ii] = to_float(viewset.views[ii]);
    sources_[ii][ii] = RenditionSource::kDirect;
    for (int j = 0; j < 3; ++j) {
      const auto jj = static_cast<std::size_t>(j);
      const FloatImage& img = images_[ii][jj];
      if (img.width() != layout_.view_width() || img.height() != layout_.view_height() ||
          img.channels() != kRgbChannels) {
        throw validation_error("rendition " + pair_name(i, j) + " does not match the view size");
      }
      if (i != j) sources_[ii][jj] = RenditionSource::kPhysics;
    }
  }
}

const FloatImage& ExposureRenditionSet::rendition(int from, int to) const {
  check_index(from);
  check_index(to);
  return images_[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)];
}

RenditionSource ExposureRenditionSet::source(int from, int to) const {
  check_index(from);
  check_index(to);
  return sources_[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)];
}

void ExposureRenditionSet::replace(int from, int to, FloatImage image, RenditionSource source) {
  check_index(from);
  check_index(to);
  if (from == to) throw validation_error("captured views cannot be replaced");
  if (image.width() != layout_.view_width() || image.height() != layout_.view_height() ||
      image.channels() != kRgbChannels) {
    throw validation_error("rendition " + pair_name(from, to) + " is " +
                           std::to_string(image.width()) + "x" + std::to_string(image.height()) +
                           ", expected " + std::to_string(layout_.view_width()) + "x" +
                           std::to_string(layout_.view_height()));
  }
  images_[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)] = std::move(image);
  sources_[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)] = source;
}

double overlap_weight(int overlap, int column, const PanoLayout& layout) {
  const ColumnRange range = layout.overlap_range(overlap);
  if (!range.contains(column)) {
    throw validation_error("column " + std::to_string(column) + " is outside overlap " +
                           std::to_string(overlap + 1));
  }
  return static_cast<double>(range.end - column) / static_cast<double>(range.width());
}

PanoImage synthesize_pano(int level, const ExposureRenditionSet& renditions) {
  check_index(level);
  const PanoLayout& layout = renditions.layout();
  FloatImage out(layout.pano_width(), layout.pano_height(), kRgbChannels);

  // Column x of the panorama, taken from view v at exposure `level`.
  auto sample = [&](int view, int x, int y, int c) {
    return renditions.rendition(view, level).at(x - layout.view_offset(view), y, c);
  };

  for (int x = 0; x < layout.pano_width(); ++x) {
    const Region region = layout.region_of(x);
    int left_view = 0;
    int overlap = -1;
    switch (region) {
      case Region::kOnly1: left_view = 0; break;
      case Region::kOverlap12: left_view = 0; overlap = 0; break;
      case Region::kOnly2: left_view = 1; break;
      case Region::kOverlap23: left_view = 1; overlap = 1; break;
      case Region::kOnly3: left_view = 2; break;
    }
    if (overlap < 0) {
      for (int y = 0; y < layout.pano_height(); ++y) {
        for (int c = 0; c < kRgbChannels; ++c) out.at(x, y, c) = sample(left_view, x, y, c);
      }
      continue;
    }
    const double phi = overlap_weight(overlap, x, layout);
    for (int y = 0; y < layout.pano_height(); ++y) {
      for (int c = 0; c < kRgbChannels; ++c) {
        out.at(x, y, c) =
            phi * sample(left_view, x, y, c) + (1.0 - phi) * sample(left_view + 1, x, y, c);
      }
    }
  }
  return {std::move(out), layout};
}

ExposureRenditionSet load_refined(const std::filesystem::path& directory,
                                  ExposureRenditionSet renditions) {
  if (!std::filesystem::is_directory(directory)) {
    throw io_error("refined rendition directory not found: " + directory.string());
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      const auto path = find_image(directory, pair_name(i, j));
      if (!path) continue;
      renditions.replace(i, j, to_float(read_image(*path)), RenditionSource::kRefined);
    }
  }
  return renditions;
}

}  // namespace hdrstitch

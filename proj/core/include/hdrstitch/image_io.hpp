#pragma once

#include <filesystem>
#include <optional>
#include <string_view>

#include "hdrstitch/image.hpp"

namespace hdrstitch {

/// Reads a binary (P6) or ASCII (P3) PPM, or a PNG of any bit depth and color
/// type (converted to 8-bit RGB). Format is picked from the extension.
LdrImage read_image(const std::filesystem::path& path);

/// Writes PPM (P6) or PNG depending on the extension.
void write_image(const std::filesystem::path& path, const LdrImage& image);

/// Looks for `<stem>.png`, then `<stem>.ppm`, in `directory`.
std::optional<std::filesystem::path> find_image(const std::filesystem::path& directory,
                                                std::string_view stem);

}  // namespace hdrstitch

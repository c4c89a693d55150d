#include "hdrstitch/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <string>

#include "hdrstitch/error.hpp"

namespace hdrstitch {

namespace fs = std::filesystem;

namespace {

std::string lower_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

// Reads the next whitespace-delimited PPM header token, skipping comments.
std::string next_token(std::istream& in) {
  std::string token;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      continue;
    }
    if (std::isspace(ch)) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(static_cast<char>(ch));
  }
  return token;
}

int parse_positive(const std::string& token, const fs::path& path) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(token, &used);
    if (used == token.size() && v > 0) return v;
  } catch (const std::exception&) {
  }
  throw validation_error("malformed PPM header in " + path.string());
}

LdrImage read_ppm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path.string());
  const std::string magic = next_token(in);
  if (magic != "P6" && magic != "P3") {
    throw validation_error("unsupported PPM variant '" + magic + "' in " + path.string());
  }
  const int width = parse_positive(next_token(in), path);
  const int height = parse_positive(next_token(in), path);
  const int maxval = parse_positive(next_token(in), path);
  if (maxval > 65535) throw validation_error("PPM maxval too large in " + path.string());

  const std::size_t samples = static_cast<std::size_t>(width) * height * kRgbChannels;
  std::vector<std::uint8_t> data(samples);
  auto rescale = [maxval](unsigned v) {
    if (maxval == 255) return static_cast<std::uint8_t>(v);
    return static_cast<std::uint8_t>((static_cast<unsigned long>(std::min<unsigned>(v, maxval)) * 255u +
                                      maxval / 2) / maxval);
  };

  if (magic == "P3") {
    for (auto& s : data) {
      const std::string tok = next_token(in);
      if (tok.empty()) throw validation_error("truncated PPM data in " + path.string());
      s = rescale(static_cast<unsigned>(std::stoul(tok)));
    }
  } else if (maxval < 256) {
    in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(samples));
    if (in.gcount() != static_cast<std::streamsize>(samples)) {
      throw validation_error("truncated PPM data in " + path.string());
    }
    if (maxval != 255) std::transform(data.begin(), data.end(), data.begin(), rescale);
  } else {
    std::vector<unsigned char> raw(samples * 2);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.size())) {
      throw validation_error("truncated PPM data in " + path.string());
    }
    for (std::size_t i = 0; i < samples; ++i) {
      data[i] = rescale((static_cast<unsigned>(raw[2 * i]) << 8) | raw[2 * i + 1]);
    }
  }
  return LdrImage(width, height, std::move(data));
}

void write_ppm(const fs::path& path, const LdrImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot write " + path.string());
  out << "P6\n" << image.width() << ' ' << image.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.data().data()),
            static_cast<std::streamsize>(image.data().size()));
  if (!out) throw io_error("failed writing " + path.string());
}

LdrImage read_png(const fs::path& path) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.string().c_str())) {
    throw validation_error("cannot decode PNG " + path.string() + ": " + png.message);
  }
  png.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> data(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, data.data(), 0, nullptr)) {
    const std::string message = png.message;
    png_image_free(&png);
    throw validation_error("cannot decode PNG " + path.string() + ": " + message);
  }
  return LdrImage(static_cast<int>(png.width), static_cast<int>(png.height), std::move(data));
}

void write_png(const fs::path& path, const LdrImage& image) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width());
  png.height = static_cast<png_uint_32>(image.height());
  png.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&png, path.string().c_str(), 0, image.data().data(), 0, nullptr)) {
    throw io_error("cannot write PNG " + path.string() + ": " + png.message);
  }
}

}  // namespace

LdrImage read_image(const fs::path& path) {
  if (!fs::exists(path)) throw io_error("missing file " + path.string());
  const std::string ext = lower_extension(path);
  if (ext == ".ppm" || ext == ".pnm") return read_ppm(path);
  if (ext == ".png") return read_png(path);
  throw validation_error("unsupported image format '" + ext + "' for " + path.string());
}

void write_image(const fs::path& path, const LdrImage& image) {
  const std::string ext = lower_extension(path);
  if (ext == ".ppm" || ext == ".pnm") return write_ppm(path, image);
  if (ext == ".png") return write_png(path, image);
  throw validation_error("unsupported image format '" + ext + "' for " + path.string());
}

std::optional<fs::path> find_image(const fs::path& directory, std::string_view stem) {
  for (const char* ext : {".png", ".ppm"}) {
    fs::path candidate = directory / (std::string(stem) + ext);
    if (fs::is_regular_file(candidate)) return candidate;
  }
  return std::nullopt;
}

}  // namespace hdrstitch

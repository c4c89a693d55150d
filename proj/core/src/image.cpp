#include "hdrstitch/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hdrstitch/error.hpp"

namespace hdrstitch {

namespace {

void check_dims(int width, int height) {
  if (width < 0 || height < 0) {
    throw validation_error("negative image dimensions " + std::to_string(width) + "x" +
                           std::to_string(height));
  }
}

void check_crop(int image_w, int image_h, int x0, int y0, int w, int h) {
  if (x0 < 0 || y0 < 0 || w < 0 || h < 0 || x0 + w > image_w || y0 + h > image_h) {
    throw validation_error("crop window out of bounds");
  }
}

}  // namespace

LdrImage::LdrImage(int width, int height) : width_(width), height_(height) {
  check_dims(width, height);
  data_.assign(pixel_count() * kRgbChannels, 0);
}

LdrImage::LdrImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dims(width, height);
  if (data_.size() != pixel_count() * kRgbChannels) {
    throw validation_error("LdrImage data length does not match width x height x 3");
  }
}

FloatImage::FloatImage(int width, int height, int channels, double fill)
    : width_(width), height_(height), channels_(channels) {
  check_dims(width, height);
  if (channels <= 0) throw validation_error("FloatImage needs at least one channel");
  data_.assign(pixel_count() * static_cast<std::size_t>(channels), fill);
}

FloatImage::FloatImage(int width, int height, int channels, std::vector<double> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  check_dims(width, height);
  if (channels <= 0) throw validation_error("FloatImage needs at least one channel");
  if (data_.size() != pixel_count() * static_cast<std::size_t>(channels)) {
    throw validation_error("FloatImage data length does not match its shape");
  }
}

bool FloatImage::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

FloatImage to_float(const LdrImage& image) {
  std::vector<double> data(image.data().begin(), image.data().end());
  return FloatImage(image.width(), image.height(), kRgbChannels, std::move(data));
}

std::uint8_t quantize_sample(double value) noexcept {
  if (!(value > 0.0)) return 0;  // also maps NaN to 0
  const double rounded = std::floor(value + 0.5);
  return static_cast<std::uint8_t>(std::min(rounded, 255.0));
}

LdrImage quantize(const FloatImage& image) {
  if (image.channels() != kRgbChannels) {
    throw validation_error("quantize expects a 3-channel image");
  }
  std::vector<std::uint8_t> data(image.data().size());
  std::transform(image.data().begin(), image.data().end(), data.begin(), quantize_sample);
  return LdrImage(image.width(), image.height(), std::move(data));
}

LdrImage crop(const LdrImage& image, int x0, int y0, int width, int height) {
  check_crop(image.width(), image.height(), x0, y0, width, height);
  LdrImage out(width, height);
  const auto row_bytes = static_cast<std::size_t>(width) * kRgbChannels;
  for (int y = 0; y < height; ++y) {
    const auto* src = &image.data()[(static_cast<std::size_t>(y0 + y) * image.width() + x0) *
                                    kRgbChannels];
    std::copy_n(src, row_bytes, &out.data()[static_cast<std::size_t>(y) * row_bytes]);
  }
  return out;
}

FloatImage crop(const FloatImage& image, int x0, int y0, int width, int height) {
  check_crop(image.width(), image.height(), x0, y0, width, height);
  const int ch = image.channels();
  FloatImage out(width, height, ch);
  const auto row = static_cast<std::size_t>(width) * ch;
  for (int y = 0; y < height; ++y) {
    const auto* src =
        &image.data()[(static_cast<std::size_t>(y0 + y) * image.width() + x0) * ch];
    std::copy_n(src, row, &out.data()[static_cast<std::size_t>(y) * row]);
  }
  return out;
}

FloatImage extract_channel(const FloatImage& image, int c) {
  if (c < 0 || c >= image.channels()) throw validation_error("channel index out of range");
  FloatImage out(image.width(), image.height(), 1);
  const auto src = image.data();
  auto dst = out.data();
  const auto ch = static_cast<std::size_t>(image.channels());
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = src[i * ch + static_cast<std::size_t>(c)];
  return out;
}

FloatImage to_gray(const FloatImage& image) {
  if (image.channels() == 1) return image;
  if (image.channels() != kRgbChannels) throw validation_error("to_gray expects 1 or 3 channels");
  FloatImage out(image.width(), image.height(), 1);
  const auto src = image.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = 0.299 * src[3 * i] + 0.587 * src[3 * i + 1] + 0.114 * src[3 * i + 2];
  }
  return out;
}

}  // namespace hdrstitch

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hdrstitch {

inline constexpr int kRgbChannels = 3;

/// 8-bit interleaved RGB image. Samples are stored row-major as
/// (y * width + x) * 3 + channel.
class LdrImage {
 public:
  LdrImage() = default;
  LdrImage(int width, int height);
  LdrImage(int width, int height, std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return kRgbChannels; }
  bool empty() const noexcept { return data_.empty(); }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  std::uint8_t& at(int x, int y, int c) { return data_[index(x, y, c)]; }
  std::uint8_t at(int x, int y, int c) const { return data_[index(x, y, c)]; }

  std::span<std::uint8_t> data() noexcept { return data_; }
  std::span<const std::uint8_t> data() const noexcept { return data_; }

  friend bool operator==(const LdrImage&, const LdrImage&) = default;

 private:
  std::size_t index(int x, int y, int c) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) * kRgbChannels + static_cast<std::size_t>(c);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Real-valued interleaved image with an arbitrary channel count. The working
/// range for intensities is [0, 255]; log-domain and detail layers reuse the
/// same container.
class FloatImage {
 public:
  FloatImage() = default;
  FloatImage(int width, int height, int channels, double fill = 0.0);
  FloatImage(int width, int height, int channels, std::vector<double> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  bool empty() const noexcept { return data_.empty(); }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  double& at(int x, int y, int c = 0) { return data_[index(x, y, c)]; }
  double at(int x, int y, int c = 0) const { return data_[index(x, y, c)]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  bool same_shape(const FloatImage& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_ && channels_ == other.channels_;
  }
  bool all_finite() const noexcept;

  friend bool operator==(const FloatImage&, const FloatImage&) = default;

 private:
  std::size_t index(int x, int y, int c) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) * static_cast<std::size_t>(channels_) +
           static_cast<std::size_t>(c);
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<double> data_;
};

FloatImage to_float(const LdrImage& image);

/// Round half up, then clamp to [0, 255]. Requires a 3-channel image.
LdrImage quantize(const FloatImage& image);
std::uint8_t quantize_sample(double value) noexcept;

LdrImage crop(const LdrImage& image, int x0, int y0, int width, int height);
FloatImage crop(const FloatImage& image, int x0, int y0, int width, int height);

/// Single channel `c` of `image` as a one-channel image.
FloatImage extract_channel(const FloatImage& image, int c);

/// BT.601 luma, 0.299 R + 0.587 G + 0.114 B.
FloatImage to_gray(const FloatImage& image);

}  // namespace hdrstitch

#include "hdrstitch/metrics.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "hdrstitch/error.hpp"

namespace hdrstitch::metrics {

namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;

void require_same_size(const LdrImage& a, const LdrImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw validation_error("metric inputs differ in size");
  }
  if (a.empty()) throw validation_error("metric inputs are empty");
}

double psnr_from_mse(double mse) {
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

std::array<double, kWindow> gaussian_taps() {
  std::array<double, kWindow> taps{};
  double sum = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double d = i - kWindow / 2;
    taps[static_cast<std::size_t>(i)] = std::exp(-d * d / (2.0 * kSigma * kSigma));
    sum += taps[static_cast<std::size_t>(i)];
  }
  for (auto& t : taps) t /= sum;
  return taps;
}

// Separable Gaussian filter evaluated only at valid window positions.
std::vector<double> filter_valid(const std::vector<double>& src, int w, int h) {
  static const auto taps = gaussian_taps();
  const int ow = w - kWindow + 1;
  const int oh = h - kWindow + 1;
  std::vector<double> rows(static_cast<std::size_t>(ow) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int t = 0; t < kWindow; ++t) {
        acc += taps[static_cast<std::size_t>(t)] * src[static_cast<std::size_t>(y) * w + x + t];
      }
      rows[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(ow) * oh);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int t = 0; t < kWindow; ++t) {
        acc += taps[static_cast<std::size_t>(t)] * rows[static_cast<std::size_t>(y + t) * ow + x];
      }
      out[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  return out;
}

std::vector<double> luma(const LdrImage& img) {
  std::vector<double> g(img.pixel_count());
  const auto d = img.data();
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = 0.299 * d[3 * i] + 0.587 * d[3 * i + 1] + 0.114 * d[3 * i + 2];
  }
  return g;
}

}  // namespace

double psnr(const LdrImage& a, const LdrImage& b) {
  require_same_size(a, b);
  double sse = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    const double d = static_cast<double>(a.data()[i]) - static_cast<double>(b.data()[i]);
    sse += d * d;
  }
  return psnr_from_mse(sse / static_cast<double>(a.data().size()));
}

double ssim(const LdrImage& a, const LdrImage& b) {
  require_same_size(a, b);
  if (a.width() < kWindow || a.height() < kWindow) {
    throw validation_error("SSIM needs images of at least 11x11");
  }
  constexpr double c1 = (0.01 * 255.0) * (0.01 * 255.0);
  constexpr double c2 = (0.03 * 255.0) * (0.03 * 255.0);
  const int w = a.width();
  const int h = a.height();
  const std::vector<double> x = luma(a);
  const std::vector<double> y = luma(b);
  std::vector<double> xx(x.size()), yy(x.size()), xy(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
    xy[i] = x[i] * y[i];
  }
  const auto mx = filter_valid(x, w, h);
  const auto my = filter_valid(y, w, h);
  const auto sxx = filter_valid(xx, w, h);
  const auto syy = filter_valid(yy, w, h);
  const auto sxy = filter_valid(xy, w, h);

  double total = 0.0;
  for (std::size_t i = 0; i < mx.size(); ++i) {
    const double vx = sxx[i] - mx[i] * mx[i];
    const double vy = syy[i] - my[i] * my[i];
    const double cov = sxy[i] - mx[i] * my[i];
    total += ((2.0 * mx[i] * my[i] + c1) * (2.0 * cov + c2)) /
             ((mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2));
  }
  return total / static_cast<double>(mx.size());
}

MetricReport evaluate(const LdrImage& pred, const LdrImage& truth) {
  MetricReport report;
  report.psnr = psnr(pred, truth);
  report.ssim = ssim(pred, truth);
  for (int c = 0; c < 3; ++c) {
    double sse = 0.0;
    for (std::size_t i = static_cast<std::size_t>(c); i < pred.data().size(); i += 3) {
      const double d = static_cast<double>(pred.data()[i]) - static_cast<double>(truth.data()[i]);
      sse += d * d;
    }
    report.psnr_per_channel[static_cast<std::size_t>(c)] =
        psnr_from_mse(sse / static_cast<double>(pred.pixel_count()));
  }
  return report;
}

}  // namespace hdrstitch::metrics

#include "hdrstitch/enhance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "hdrstitch/error.hpp"

namespace hdrstitch::enhance {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

// Per-difference weights 1 / psi(v)^2 for one channel.
std::vector<double> difference_weights(const FloatImage& v) {
  std::vector<double> w(v.data().size());
  std::transform(v.data().begin(), v.data().end(), w.begin(), [](double g) {
    const double p = psi_weight(g);
    return 1.0 / (p * p);
  });
  return w;
}

// z + lambda (Gx' Wx Gx z + Gy' Wy Gy z) for a single-channel image.
void normal_operator(std::span<const double> z, std::span<double> out, int width, int height,
                     const std::vector<double>& wx, const std::vector<double>& wy, double lambda) {
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * width + x;
      double acc = 0.0;
      if (x + 1 < width) acc -= wx[i] * (z[i + 1] - z[i]);
      if (x > 0) acc += wx[i - 1] * (z[i] - z[i - 1]);
      if (y + 1 < height) acc -= wy[i] * (z[i + width] - z[i]);
      if (y > 0) acc += wy[i - width] * (z[i] - z[i - width]);
      out[i] = z[i] + lambda * acc;
    }
  }
}

struct ChannelSolve {
  std::vector<double> z;
  int iterations = 0;
  double relative_residual = 0.0;
};

ChannelSolve solve_channel(const FloatImage& vx, const FloatImage& vy, const SolverConfig& cfg) {
  const int w = vx.width();
  const int h = vx.height();
  const std::size_t n = vx.data().size();
  const std::vector<double> wx = difference_weights(vx);
  const std::vector<double> wy = difference_weights(vy);

  // Right-hand side lambda alpha (Gx' Wx Vx + Gy' Wy Vy) and Jacobi diagonal.
  std::vector<double> b(n, 0.0);
  std::vector<double> inv_diag(n, 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      double rhs = 0.0;
      double diag = 0.0;
      if (x + 1 < w) { rhs -= wx[i] * vx.data()[i]; diag += wx[i]; }
      if (x > 0) { rhs += wx[i - 1] * vx.data()[i - 1]; diag += wx[i - 1]; }
      if (y + 1 < h) { rhs -= wy[i] * vy.data()[i]; diag += wy[i]; }
      if (y > 0) { rhs += wy[i - w] * vy.data()[i - w]; diag += wy[i - w]; }
      b[i] = cfg.lambda * cfg.alpha * rhs;
      inv_diag[i] = 1.0 / (1.0 + cfg.lambda * diag);
    }
  }

  ChannelSolve result{std::vector<double>(n, 0.0), 0, 0.0};
  const double b_norm = std::sqrt(dot(b, b));
  if (b_norm == 0.0) return result;

  std::vector<double> r = b;
  std::vector<double> z(n);
  std::vector<double> p(n);
  std::vector<double> ap(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = dot(r, z);
  double rel = 1.0;

  for (int it = 1; it <= cfg.cg_max_iters; ++it) {
    normal_operator(p, ap, w, h, wx, wy, cfg.lambda);
    const double step = rz / dot(p, ap);
    for (std::size_t i = 0; i < n; ++i) {
      result.z[i] += step * p[i];
      r[i] -= step * ap[i];
    }
    rel = std::sqrt(dot(r, r)) / b_norm;
    result.iterations = it;
    result.relative_residual = rel;
    if (rel <= cfg.cg_tolerance) return result;
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  throw numerical_error("conjugate gradient did not converge in " +
                        std::to_string(cfg.cg_max_iters) + " iterations (relative residual " +
                        std::to_string(rel) + ")");
}

}  // namespace

void SolverConfig::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw validation_error("lambda must be >= 0");
  if (!std::isfinite(alpha)) throw validation_error("alpha must be finite");
  if (!(cg_tolerance > 0.0)) throw validation_error("cg tolerance must be positive");
  if (cg_max_iters <= 0) throw validation_error("cg max iterations must be positive");
  if (!(nu >= 0.0 && nu <= 1.0)) throw validation_error("nu must lie in [0, 1]");
}

FloatImage log_domain(const FloatImage& image) {
  FloatImage out = image;
  for (double& v : out.data()) {
    if (!(v >= 0.0)) throw validation_error("log_domain expects non-negative samples");
    v = std::log2(v + 1.0);
  }
  return out;
}

FloatImage gradient_x(const FloatImage& image) {
  FloatImage g(image.width(), image.height(), image.channels());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x + 1 < image.width(); ++x) {
      for (int c = 0; c < image.channels(); ++c) g.at(x, y, c) = image.at(x + 1, y, c) - image.at(x, y, c);
    }
  }
  return g;
}

FloatImage gradient_y(const FloatImage& image) {
  FloatImage g(image.width(), image.height(), image.channels());
  for (int y = 0; y + 1 < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      for (int c = 0; c < image.channels(); ++c) g.at(x, y, c) = image.at(x, y + 1, c) - image.at(x, y, c);
    }
  }
  return g;
}

double ramp_weight(int overlap, int column, const PanoLayout& layout) {
  const ColumnRange range = layout.overlap_range(overlap);
  const double theta = 0.5 * range.width();
  const double center = range.begin + theta;
  if (std::abs(column - center) > theta) {
    throw validation_error("column " + std::to_string(column) + " is outside overlap " +
                           std::to_string(overlap + 1));
  }
  return (center + theta - column) / (2.0 * theta);
}

GuidanceField guidance_field(const std::array<FloatImage, 3>& log_panos, const PanoLayout& layout) {
  for (const auto& p : log_panos) {
    if (p.width() != layout.pano_width() || p.height() != layout.pano_height() ||
        !p.same_shape(log_panos[0])) {
      throw validation_error("log panoramas do not match the layout");
    }
  }
  std::array<FloatImage, 3> gx;
  std::array<FloatImage, 3> gy;
  for (std::size_t l = 0; l < 3; ++l) {
    gx[l] = gradient_x(log_panos[l]);
    gy[l] = gradient_y(log_panos[l]);
  }

  const int ch = log_panos[0].channels();
  GuidanceField field{FloatImage(layout.pano_width(), layout.pano_height(), ch),
                      FloatImage(layout.pano_width(), layout.pano_height(), ch)};
  for (int x = 0; x < layout.pano_width(); ++x) {
    int level = 0;
    double w = 0.0;  // weight of level - 1
    switch (layout.region_of(x)) {
      case Region::kOnly1: level = 0; break;
      case Region::kOverlap12: level = 1; w = ramp_weight(0, x, layout); break;
      case Region::kOnly2: level = 1; break;
      case Region::kOverlap23: level = 2; w = ramp_weight(1, x, layout); break;
      case Region::kOnly3: level = 2; break;
    }
    const auto cur = static_cast<std::size_t>(level);
    const auto prev = level > 0 ? cur - 1 : cur;
    for (int y = 0; y < layout.pano_height(); ++y) {
      for (int c = 0; c < ch; ++c) {
        const double ax = gx[cur].at(x, y, c);
        const double ay = gy[cur].at(x, y, c);
        field.vx.at(x, y, c) = ax + w * (gx[prev].at(x, y, c) - ax);
        field.vy.at(x, y, c) = ay + w * (gy[prev].at(x, y, c) - ay);
      }
    }
  }
  return field;
}

double psi_weight(double v) noexcept { return std::sqrt(std::pow(std::abs(v), 0.75) + 2.0); }

DetailMap solve_detail(const GuidanceField& field, const SolverConfig& cfg) {
  cfg.validate();
  if (!field.vx.same_shape(field.vy)) throw validation_error("guidance components differ in shape");
  if (!field.vx.all_finite() || !field.vy.all_finite()) {
    throw validation_error("guidance field has non-finite values");
  }
  const int ch = field.vx.channels();
  DetailMap result{FloatImage(field.vx.width(), field.vx.height(), ch), 0, 0.0};
  for (int c = 0; c < ch; ++c) {
    const ChannelSolve s =
        solve_channel(extract_channel(field.vx, c), extract_channel(field.vy, c), cfg);
    auto dst = result.zd.data();
    for (std::size_t i = 0; i < s.z.size(); ++i) dst[i * static_cast<std::size_t>(ch) + static_cast<std::size_t>(c)] = s.z[i];
    result.iterations = std::max(result.iterations, s.iterations);
    result.relative_residual = std::max(result.relative_residual, s.relative_residual);
  }
  return result;
}

FloatImage apply_normal_operator(const FloatImage& z, const FloatImage& vx, const FloatImage& vy,
                                 double lambda) {
  if (z.channels() != 1 || !z.same_shape(vx) || !z.same_shape(vy)) {
    throw validation_error("apply_normal_operator expects matching single-channel images");
  }
  FloatImage out(z.width(), z.height(), 1);
  normal_operator(z.data(), out.data(), z.width(), z.height(), difference_weights(vx),
                  difference_weights(vy), lambda);
  return out;
}

FloatImage recombine(const FloatImage& fused, const FloatImage& zd, double nu) {
  if (!fused.same_shape(zd)) throw validation_error("fused image and detail layer differ in shape");
  if (!(nu >= 0.0 && nu <= 1.0)) throw validation_error("nu must lie in [0, 1]");
  FloatImage out(fused.width(), fused.height(), fused.channels());
  const auto s = fused.data();
  const auto d = zd.data();
  auto o = out.data();
  for (std::size_t i = 0; i < o.size(); ++i) {
    const double enhanced = std::clamp(s[i] * std::exp2(d[i]), 0.0, 255.0);
    // Unchanged samples short-circuit so that z_d = 0 is an exact identity.
    o[i] = enhanced == s[i] ? s[i] : nu * s[i] + (1.0 - nu) * enhanced;
  }
  return out;
}

LdrImage visualize_detail(const FloatImage& zd) {
  FloatImage rgb(zd.width(), zd.height(), kRgbChannels);
  double peak = 0.0;
  for (double v : zd.data()) peak = std::max(peak, std::abs(v));
  const double scale = peak > 0.0 ? 127.5 / peak : 0.0;
  for (int y = 0; y < zd.height(); ++y) {
    for (int x = 0; x < zd.width(); ++x) {
      for (int c = 0; c < kRgbChannels; ++c) {
        rgb.at(x, y, c) = 127.5 + scale * zd.at(x, y, zd.channels() == 1 ? 0 : c);
      }
    }
  }
  return quantize(rgb);
}

}  // namespace hdrstitch::enhance

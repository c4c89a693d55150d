#pragma once

// Log-domain high-frequency recovery for the fused panorama.
//
// A guidance gradient field V is assembled from the per-exposure panoramas in
// log2 space, each region taking gradients from its own exposure and overlaps
// ramping between neighbours. The detail layer z_d minimizes
//
//   |z_d|^2 + lambda * sum_{d in x,y} |(alpha V_d - grad_d z_d) / psi(V_d)|^2,
//   psi(v) = sqrt(|v|^0.75 + 2),
//
// and the enhanced image is Z_s * 2^z_d.

#include <array>

#include "hdrstitch/image.hpp"
#include "hdrstitch/layout.hpp"

namespace hdrstitch::enhance {

struct SolverConfig {
  double lambda = 0.125;
  double alpha = 1.125;
  double cg_tolerance = 1e-6;  // relative residual of the normal equations
  int cg_max_iters = 2000;
  double nu = 0.0;             // 0 = full enhancement, 1 = fused image unchanged

  /// lambda = 0 is accepted and yields a zero detail layer.
  void validate() const;
};

struct GuidanceField {
  FloatImage vx;
  FloatImage vy;
};

struct DetailMap {
  FloatImage zd;
  int iterations = 0;              // worst channel
  double relative_residual = 0.0;  // worst channel
};

/// Pointwise log2(x + 1). Throws on negative samples.
FloatImage log_domain(const FloatImage& image);

/// Forward differences; the last column (x) or row (y) gets zero.
FloatImage gradient_x(const FloatImage& image);
FloatImage gradient_y(const FloatImage& image);

/// Ramp weight inside overlap `overlap`: (C + theta - x) / (2 theta), with C
/// the overlap centre and 2 theta its width. Equals 1 at the first overlap
/// column.
double ramp_weight(int overlap, int column, const PanoLayout& layout);

/// `log_panos[l]` is the log-domain panorama at exposure l.
GuidanceField guidance_field(const std::array<FloatImage, 3>& log_panos, const PanoLayout& layout);

double psi_weight(double v) noexcept;

/// Jacobi-preconditioned conjugate gradient on the normal equations
///   (I + lambda (Gx' Wx Gx + Gy' Wy Gy)) z = lambda alpha (Gx' Wx Vx + Gy' Wy Vy),
/// W = diag(1 / psi(V)^2), one solve per channel. Throws a numerical error if
/// the tolerance is not reached within cg_max_iters.
DetailMap solve_detail(const GuidanceField& field, const SolverConfig& cfg);

/// Applies the normal-equation operator to one channel `z` (exposed for
/// residual checks); `vx`, `vy` are the matching guidance channels.
FloatImage apply_normal_operator(const FloatImage& z, const FloatImage& vx, const FloatImage& vy,
                                 double lambda);

/// nu * Z_s + (1 - nu) * clamp(Z_s * 2^z_d, 0, 255).
FloatImage recombine(const FloatImage& fused, const FloatImage& zd, double nu);

/// Detail layer mapped to 8 bits for inspection: 127.5 +- 127.5 * zd / max|zd|.
LdrImage visualize_detail(const FloatImage& zd);

}  // namespace hdrstitch::enhance

#pragma once
// Dense reference for the detail-layer normal equations, one channel at a time.

#include <Eigen/Dense>

#include "hdrstitch/enhance.hpp"
#include "hdrstitch/image.hpp"

namespace hdrstitch::testing {

struct DenseSystem {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::MatrixXd gx, gy;
  Eigen::VectorXd wx, wy;
};

// Forward differences with a zero row on the last column (x) or row (y).
inline DenseSystem dense_system(const FloatImage& vx, const FloatImage& vy, int channel, double lambda,
                                double alpha) {
  const int w = vx.width();
  const int h = vx.height();
  const int n = w * h;
  DenseSystem s;
  s.gx = Eigen::MatrixXd::Zero(n, n);
  s.gy = Eigen::MatrixXd::Zero(n, n);
  s.wx.resize(n);
  s.wy.resize(n);
  Eigen::VectorXd bx(n), by(n);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int i = y * w + x;
      if (x + 1 < w) {
        s.gx(i, i) = -1.0;
        s.gx(i, i + 1) = 1.0;
      }
      if (y + 1 < h) {
        s.gy(i, i) = -1.0;
        s.gy(i, i + w) = 1.0;
      }
      const double px = enhance::psi_weight(vx.at(x, y, channel));
      const double py = enhance::psi_weight(vy.at(x, y, channel));
      s.wx(i) = 1.0 / (px * px);
      s.wy(i) = 1.0 / (py * py);
      bx(i) = vx.at(x, y, channel);
      by(i) = vy.at(x, y, channel);
    }
  }
  s.a = Eigen::MatrixXd::Identity(n, n) +
        lambda * (s.gx.transpose() * s.wx.asDiagonal() * s.gx + s.gy.transpose() * s.wy.asDiagonal() * s.gy);
  s.b = lambda * alpha *
        (s.gx.transpose() * s.wx.asDiagonal() * bx + s.gy.transpose() * s.wy.asDiagonal() * by);
  return s;
}

inline Eigen::VectorXd dense_solve(const DenseSystem& s) { return s.a.ldlt().solve(s.b); }

// Objective |z|^2 + lambda sum w (alpha V - G z)^2 over the defined differences.
inline double dense_objective(const DenseSystem& s, const FloatImage& vx, const FloatImage& vy, int channel,
                              double lambda, double alpha, const Eigen::VectorXd& z) {
  const int w = vx.width();
  const Eigen::VectorXd dx = s.gx * z;
  const Eigen::VectorXd dy = s.gy * z;
  double f = z.squaredNorm();
  for (int i = 0; i < z.size(); ++i) {
    const int x = i % w;
    const int y = i / w;
    if (x + 1 < w) {
      const double r = alpha * vx.at(x, y, channel) - dx(i);
      f += lambda * s.wx(i) * r * r;
    }
    if (y + 1 < vx.height()) {
      const double r = alpha * vy.at(x, y, channel) - dy(i);
      f += lambda * s.wy(i) * r * r;
    }
  }
  return f;
}

}  // namespace hdrstitch::testing

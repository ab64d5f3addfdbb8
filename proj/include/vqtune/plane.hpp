#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>

namespace vqtune {

// 8-bit image plane in raster order. Row-major so the raw Y4M/PGM payload is
// one contiguous block.
using Plane = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Planes promoted to double for filter arithmetic.
using RealPlane = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Global rounding convention: round half away from zero (std::round).
inline std::uint8_t clamp_round_u8(double x) {
  const double r = std::round(x);
  if (r <= 0.0) return 0;
  if (r >= 255.0) return 255;
  return static_cast<std::uint8_t>(r);
}

inline Plane to_u8(const RealPlane& p) {
  return p.unaryExpr([](double x) { return clamp_round_u8(x); });
}

inline RealPlane to_real(const Plane& p) { return p.cast<double>(); }

}  // namespace vqtune

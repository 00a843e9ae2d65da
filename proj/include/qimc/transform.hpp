#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qimc/error.hpp"

namespace qimc {

enum class Transform { none, dct8, haar8, haar64 };

inline std::string_view to_string(Transform t) {
  switch (t) {
    case Transform::none: return "none";
    case Transform::dct8: return "dct8";
    case Transform::haar8: return "haar8";
    case Transform::haar64: return "haar64";
  }
  return "?";
}

inline Transform parse_transform(std::string_view s) {
  if (s == "none") return Transform::none;
  if (s == "dct8") return Transform::dct8;
  if (s == "haar8") return Transform::haar8;
  if (s == "haar64") return Transform::haar64;
  throw ParseError("unknown transform '" + std::string(s) + "'");
}

// Nominal block side of a transform; 0 for the identity mapping.
inline int block_size_of(Transform t) {
  switch (t) {
    case Transform::dct8:
    case Transform::haar8: return 8;
    case Transform::haar64: return 64;
    case Transform::none: return 0;
  }
  return 0;
}

struct BlockOrigin {
  int block_row = 0;
  int block_col = 0;
  bool operator==(const BlockOrigin&) const = default;
};

struct CoeffBlock {
  BlockOrigin origin;
  int block_size = 0;
  std::vector<double> values;  // block_size^2, row-major
};

// Scalar quantization divisor.
class QuantSpec {
 public:
  explicit QuantSpec(int q_factor) : q_factor_(q_factor) {
    if (q_factor < 1) throw DomainError("quantization factor must be >= 1");
  }
  int q_factor() const { return q_factor_; }
  bool operator==(const QuantSpec&) const = default;

 private:
  int q_factor_;
};

inline constexpr double kCenterOffset = 128.0;

namespace detail {

// Orthonormal DCT-II basis, row k = frequency, column i = sample.
inline const std::vector<double>& dct_basis(int size) {
  static const auto make = [](int n) {
    std::vector<double> c(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k) {
      const double a = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
      for (int i = 0; i < n; ++i) {
        c[static_cast<std::size_t>(k) * n + i] =
            a * std::cos(std::numbers::pi * (2 * i + 1) * k / (2.0 * n));
      }
    }
    return c;
  };
  static const std::array<std::vector<double>, 4> tables{make(1), make(2), make(4), make(8)};
  switch (size) {
    case 1: return tables[0];
    case 2: return tables[1];
    case 4: return tables[2];
    case 8: return tables[3];
  }
  throw ShapeError("DCT size must be 1, 2, 4 or 8; got " + std::to_string(size));
}

inline void check_square(std::span<const double> block, int size) {
  if (block.size() != static_cast<std::size_t>(size) * size) {
    throw ShapeError("expected " + std::to_string(size) + "x" + std::to_string(size) +
                     " block, got " + std::to_string(block.size()) + " samples");
  }
}

// Separable 2-D DCT-II on an N x N block (N in {1,2,4,8}).
inline std::vector<double> dct2_square(std::span<const double> block, int size, bool centered) {
  check_square(block, size);
  const auto& c = dct_basis(size);
  const double shift = centered ? kCenterOffset : 0.0;
  const auto n = static_cast<std::size_t>(size);
  std::vector<double> tmp(n * n, 0.0), out(n * n, 0.0);
  // rows: tmp[y][k] = sum_x c[k][x] * (b[y][x] - shift)
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t k = 0; k < n; ++k) {
      double s = 0.0;
      for (std::size_t x = 0; x < n; ++x) s += c[k * n + x] * (block[y * n + x] - shift);
      tmp[y * n + k] = s;
    }
  // columns: out[u][k] = sum_y c[u][y] * tmp[y][k]
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t k = 0; k < n; ++k) {
      double s = 0.0;
      for (std::size_t y = 0; y < n; ++y) s += c[u * n + y] * tmp[y * n + k];
      out[u * n + k] = s;
    }
  return out;
}

inline std::vector<double> idct2_square(std::span<const double> coeffs, int size, bool centered) {
  check_square(coeffs, size);
  const auto& c = dct_basis(size);
  const double shift = centered ? kCenterOffset : 0.0;
  const auto n = static_cast<std::size_t>(size);
  std::vector<double> tmp(n * n, 0.0), out(n * n, 0.0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t x = 0; x < n; ++x) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += c[k * n + x] * coeffs[u * n + k];
      tmp[u * n + x] = s;
    }
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = 0; x < n; ++x) {
      double s = 0.0;
      for (std::size_t u = 0; u < n; ++u) s += c[u * n + y] * tmp[u * n + x];
      out[y * n + x] = s + shift;
    }
  return out;
}

// One level of orthonormal 2-D Haar. Output quadrants: LL top-left,
// HL top-right (detail along x), LH bottom-left (detail along y), HH
// bottom-right.
inline std::vector<double> haar_square(std::span<const double> block, int size, bool centered) {
  if (size < 2 || size % 2 != 0) throw ShapeError("Haar block size must be even; got " + std::to_string(size));
  check_square(block, size);
  const auto n = static_cast<std::size_t>(size), h = n / 2;
  const double shift = centered ? kCenterOffset : 0.0;
  const double r = std::numbers::sqrt2 / 2.0;
  std::vector<double> tmp(n * n), out(n * n);
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t i = 0; i < h; ++i) {
      const double a = block[y * n + 2 * i] - shift, b = block[y * n + 2 * i + 1] - shift;
      tmp[y * n + i] = (a + b) * r;
      tmp[y * n + h + i] = (a - b) * r;
    }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t j = 0; j < h; ++j) {
      const double a = tmp[2 * j * n + x], b = tmp[(2 * j + 1) * n + x];
      out[j * n + x] = (a + b) * r;
      out[(h + j) * n + x] = (a - b) * r;
    }
  return out;
}

inline std::vector<double> ihaar_square(std::span<const double> coeffs, int size, bool centered) {
  if (size < 2 || size % 2 != 0) throw ShapeError("Haar block size must be even; got " + std::to_string(size));
  check_square(coeffs, size);
  const auto n = static_cast<std::size_t>(size), h = n / 2;
  const double shift = centered ? kCenterOffset : 0.0;
  const double r = std::numbers::sqrt2 / 2.0;
  std::vector<double> tmp(n * n), out(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t j = 0; j < h; ++j) {
      const double s = coeffs[j * n + x], d = coeffs[(h + j) * n + x];
      tmp[2 * j * n + x] = (s + d) * r;
      tmp[(2 * j + 1) * n + x] = (s - d) * r;
    }
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t i = 0; i < h; ++i) {
      const double s = tmp[y * n + i], d = tmp[y * n + h + i];
      out[y * n + 2 * i] = (s + d) * r + shift;
      out[y * n + 2 * i + 1] = (s - d) * r + shift;
    }
  return out;
}

}  // namespace detail

/// Orthonormal 8x8 DCT-II. With `centered`, 128 is subtracted from every
/// sample first (JPEG level shift).
inline CoeffBlock dct2_block(std::span<const double> block, bool centered, BlockOrigin origin = {}) {
  detail::check_square(block, 8);
  return {origin, 8, detail::dct2_square(block, 8, centered)};
}

inline std::vector<double> idct2_block(const CoeffBlock& coeffs, bool centered) {
  if (coeffs.block_size != 8) throw ShapeError("idct2_block expects an 8x8 coefficient block");
  return detail::idct2_square(coeffs.values, 8, centered);
}

/// Single-level 2-D Haar on a B x B block, B in {8, 64}.
inline CoeffBlock haar_dwt_block(std::span<const double> block, int block_size, BlockOrigin origin = {}) {
  if (block_size != 8 && block_size != 64) {
    throw ShapeError("Haar block size must be 8 or 64; got " + std::to_string(block_size));
  }
  return {origin, block_size, detail::haar_square(block, block_size, false)};
}

inline std::vector<double> haar_idwt_block(const CoeffBlock& coeffs) {
  if (coeffs.block_size != 8 && coeffs.block_size != 64) {
    throw ShapeError("Haar block size must be 8 or 64; got " + std::to_string(coeffs.block_size));
  }
  return detail::ihaar_square(coeffs.values, coeffs.block_size, false);
}

inline constexpr int kDefaultMaxMagnitude = 255;

struct QuantizedLevel {
  int level = 0;
  bool clamped = false;
};

// round(coeff / Q), halves away from zero, magnitude clamped to max_magnitude.
inline QuantizedLevel quantize_tracked(double coeff, QuantSpec spec,
                                       int max_magnitude = kDefaultMaxMagnitude) {
  const double r = std::round(coeff / spec.q_factor());
  if (std::abs(r) > max_magnitude) {
    return {r < 0 ? -max_magnitude : max_magnitude, true};
  }
  return {static_cast<int>(r), false};
}

inline int quantize(double coeff, QuantSpec spec, int max_magnitude = kDefaultMaxMagnitude) {
  return quantize_tracked(coeff, spec, max_magnitude).level;
}

inline double dequantize(int level, QuantSpec spec) {
  return static_cast<double>(level) * spec.q_factor();
}

}  // namespace qimc

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "qimc/encoders.hpp"
#include "qimc/error.hpp"
#include "qimc/imageio.hpp"
#include "qimc/transform.hpp"

namespace qimc {

// Mean squared error over the original (cropped) region.
inline double mse(const GrayImage& a, const GrayImage& b) {
  if (a.width != b.width || a.height != b.height) {
    throw ShapeError("mse: image dimensions differ (" + std::to_string(a.width) + "x" + std::to_string(a.height) +
                     " vs " + std::to_string(b.width) + "x" + std::to_string(b.height) + ")");
  }
  double acc = 0.0;
  for (int y = 0; y < a.height; ++y)
    for (int x = 0; x < a.width; ++x) {
      const double d = static_cast<double>(a.at(y, x)) - b.at(y, x);
      acc += d * d;
    }
  return acc / (static_cast<double>(a.width) * a.height);
}

inline constexpr double kMaxPixel = 255.0;

// 20 log10(max / sqrt(mse)); +inf when the images are identical.
inline double psnr(double mse_value, double max_value = kMaxPixel) {
  if (!(mse_value >= 0.0)) throw DomainError("psnr: mse must be non-negative");
  if (mse_value == 0.0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(max_value / std::sqrt(mse_value));
}

// A transform paired with a circuit encoding.
enum class Scheme { dct_gqir, dct_efrqi, dwt8_gqir, dwt64_gqir, dwt8_efrqi, raw_efrqi, raw_gqir };

struct SchemeInfo {
  Scheme scheme;
  std::string_view name;
  Transform transform;
  Encoding encoding;
};

inline constexpr std::array<SchemeInfo, 7> kSchemes{{
    {Scheme::dct_gqir, "dct-gqir", Transform::dct8, Encoding::gqir},
    {Scheme::dct_efrqi, "dct-efrqi", Transform::dct8, Encoding::efrqi},
    {Scheme::dwt8_gqir, "dwt8-gqir", Transform::haar8, Encoding::gqir},
    {Scheme::dwt64_gqir, "dwt64-gqir", Transform::haar64, Encoding::gqir},
    {Scheme::dwt8_efrqi, "dwt8-efrqi", Transform::haar8, Encoding::efrqi},
    {Scheme::raw_efrqi, "raw-efrqi", Transform::none, Encoding::efrqi},
    {Scheme::raw_gqir, "raw-gqir", Transform::none, Encoding::gqir},
}};

inline const SchemeInfo& info(Scheme s) {
  for (const auto& i : kSchemes) {
    if (i.scheme == s) return i;
  }
  throw DomainError("unknown scheme");
}

inline std::string_view to_string(Scheme s) { return info(s).name; }

inline Scheme parse_scheme(std::string_view name) {
  for (const auto& i : kSchemes) {
    if (i.name == name) return i.scheme;
  }
  throw ParseError("unknown scheme '" + std::string(name) + "'");
}

struct RDPoint {
  Scheme scheme = Scheme::dct_efrqi;
  int q_factor = 1;
  double bpp = 0.0;
  double psnr_db = 0.0;  // +inf for a lossless point
};

inline const std::vector<int> kDefaultQFactors{8, 16, 32, 36, 70};

struct PipelineOptions {
  bool centered = true;
  BlockBits block_bits = BlockBits::none;
  int value_qubits = 8;
};

// Everything one (image, scheme, Q) evaluation produces, without building the
// circuit.
struct Evaluation {
  CoeffMap map;
  CostReport report;
  GrayImage decoded;
  double psnr_db = 0.0;
};

inline Evaluation evaluate(const GrayImage& img, Scheme scheme, QuantSpec spec, const PipelineOptions& opts = {}) {
  const auto& si = info(scheme);
  Evaluation ev;
  ev.map = build_coeff_map(img, si.transform, spec, {opts.centered, (1 << opts.value_qubits) - 1});
  ev.report = estimate_cost(ev.map, si.encoding, opts.block_bits);
  ev.decoded = decode_coeff_map(ev.map);
  ev.psnr_db = psnr(mse(img, ev.decoded));
  return ev;
}

/// Rate-distortion samples for one scheme, ordered by ascending Q.
inline std::vector<RDPoint> rd_curve(const GrayImage& img, Scheme scheme, std::vector<int> q_list = kDefaultQFactors,
                                     const PipelineOptions& opts = {}) {
  std::sort(q_list.begin(), q_list.end());
  std::vector<RDPoint> out;
  out.reserve(q_list.size());
  for (int q : q_list) {
    const auto ev = evaluate(img, scheme, QuantSpec(q), opts);
    out.push_back({scheme, q, ev.report.bpp, ev.psnr_db});
  }
  return out;
}

inline std::string format_fixed6(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline std::string emit_csv(const std::vector<RDPoint>& points) {
  std::string out = "scheme,q,bpp,psnr_db\n";
  for (const auto& p : points) {
    out += std::string(to_string(p.scheme)) + ',' + std::to_string(p.q_factor) + ',' + format_fixed6(p.bpp) + ',' +
           format_fixed6(p.psnr_db) + '\n';
  }
  return out;
}

}  // namespace qimc

#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qimc/circuit.hpp"
#include "qimc/error.hpp"
#include "qimc/imageio.hpp"
#include "qimc/transform.hpp"

namespace qimc {

enum class Sign : std::int8_t { negative = -1, positive = 1 };

struct Position {
  int y = 0;
  int x = 0;
  auto operator<=>(const Position&) const = default;  // y-major: raster order
};

struct Coefficient {
  int magnitude = 0;  // >= 1; zeros are never stored
  Sign sign = Sign::positive;
  bool operator==(const Coefficient&) const = default;
  int level() const { return sign == Sign::negative ? -magnitude : magnitude; }
};

// Non-zero quantized coefficients (or raw pixels) of one image, keyed by
// global position in the padded 2^n x 2^n raster. The provenance fields
// record how the map was produced so the sidecar file can be decoded on its
// own.
struct CoeffMap {
  int n = 0;
  int width = 0;
  int height = 0;
  std::map<Position, Coefficient> entries;

  Transform transform = Transform::none;
  int q_factor = 1;
  bool centered = true;
  std::int64_t clamped_count = 0;

  int side() const { return 1 << n; }
  bool operator==(const CoeffMap&) const = default;
};

struct BuildOptions {
  bool centered = true;
  int max_magnitude = kDefaultMaxMagnitude;  // 2^q - 1
};

// Block side actually used on a 2^n image: blocks never exceed the image.
inline int effective_block_size(Transform t, int padded_size) {
  const int b = block_size_of(t);
  return b == 0 ? 0 : std::min(b, padded_size);
}

namespace detail {

inline std::vector<double> forward_block(Transform t, std::span<const double> block, int size, bool centered) {
  if (t == Transform::dct8) return dct2_square(block, size, centered);
  return haar_square(block, size, centered);
}

inline std::vector<double> inverse_block(Transform t, std::span<const double> coeffs, int size, bool centered) {
  if (t == Transform::dct8) return idct2_square(coeffs, size, centered);
  return ihaar_square(coeffs, size, centered);
}

}  // namespace detail

// Transforms the padded raster block by block, quantizes, and keeps the
// non-zero levels at their global coordinates. Blocks lying entirely in the
// padding are skipped; they are cropped away on decode. For
// Transform::none the pixels themselves are the entries and `spec` is
// ignored.
inline CoeffMap build_coeff_map(const GrayImage& img, Transform transform, QuantSpec spec,
                                BuildOptions opts = {}) {
  CoeffMap m;
  m.n = img.n;
  m.width = img.width;
  m.height = img.height;
  m.transform = transform;
  m.q_factor = transform == Transform::none ? 1 : spec.q_factor();
  m.centered = transform == Transform::none ? false : opts.centered;

  const int side = img.padded_size;
  if (transform == Transform::none) {
    for (int y = 0; y < img.height; ++y)
      for (int x = 0; x < img.width; ++x) {
        const int v = img.at(y, x);
        if (v == 0) continue;
        if (v > opts.max_magnitude) {
          m.entries[{y, x}] = {opts.max_magnitude, Sign::positive};
          ++m.clamped_count;
        } else {
          m.entries[{y, x}] = {v, Sign::positive};
        }
      }
    return m;
  }

  const int b = effective_block_size(transform, side);
  std::vector<double> block(static_cast<std::size_t>(b) * b);
  for (int by = 0; by < side; by += b) {
    if (by >= img.height) break;
    for (int bx = 0; bx < side; bx += b) {
      if (bx >= img.width) break;
      for (int u = 0; u < b; ++u)
        for (int v = 0; v < b; ++v) block[static_cast<std::size_t>(u) * b + v] = img.at(by + u, bx + v);
      const auto coeffs = detail::forward_block(transform, block, b, m.centered);
      for (int u = 0; u < b; ++u)
        for (int v = 0; v < b; ++v) {
          const auto ql = quantize_tracked(coeffs[static_cast<std::size_t>(u) * b + v], spec, opts.max_magnitude);
          if (ql.clamped) ++m.clamped_count;
          if (ql.level == 0) continue;
          m.entries[{by + u, bx + v}] = {std::abs(ql.level), ql.level < 0 ? Sign::negative : Sign::positive};
        }
    }
  }
  return m;
}

// Dequantize, inverse transform, round half away from zero, clamp to
// [0, 255], crop. The transform and spec must match the ones used to build
// the map; a mismatch is not detectable here.
inline GrayImage decode_coeff_map(const CoeffMap& m, Transform transform, QuantSpec spec, bool centered = true) {
  const int side = 1 << m.n;
  std::vector<std::uint8_t> raster(static_cast<std::size_t>(m.width) * m.height, 0);
  auto clamp_px = [](double v) {
    const double r = std::round(v);
    return static_cast<std::uint8_t>(r < 0 ? 0 : (r > 255 ? 255 : r));
  };

  if (transform == Transform::none) {
    for (const auto& [p, c] : m.entries) {
      if (p.y < m.height && p.x < m.width) {
        raster[static_cast<std::size_t>(p.y) * m.width + p.x] = clamp_px(c.level());
      }
    }
    return pad_to_power_of_two(m.width, m.height, raster);
  }

  const int b = effective_block_size(transform, side);
  std::vector<double> plane(static_cast<std::size_t>(side) * side, 0.0);
  for (const auto& [p, c] : m.entries) {
    plane[static_cast<std::size_t>(p.y) * side + p.x] = dequantize(c.level(), spec);
  }
  std::vector<double> block(static_cast<std::size_t>(b) * b);
  for (int by = 0; by < side && by < m.height; by += b) {
    for (int bx = 0; bx < side && bx < m.width; bx += b) {
      for (int u = 0; u < b; ++u)
        for (int v = 0; v < b; ++v)
          block[static_cast<std::size_t>(u) * b + v] = plane[static_cast<std::size_t>(by + u) * side + bx + v];
      const auto px = detail::inverse_block(transform, block, b, centered);
      for (int u = 0; u < b; ++u)
        for (int v = 0; v < b; ++v) {
          const int y = by + u, x = bx + v;
          if (y < m.height && x < m.width) {
            raster[static_cast<std::size_t>(y) * m.width + x] = clamp_px(px[static_cast<std::size_t>(u) * b + v]);
          }
        }
    }
  }
  return pad_to_power_of_two(m.width, m.height, raster);
}

// Decodes using the provenance recorded in the map.
inline GrayImage decode_coeff_map(const CoeffMap& m) {
  return decode_coeff_map(m, m.transform, QuantSpec(m.q_factor), m.centered);
}

// ---- cost accounting ---------------------------------------------------

enum class Encoding { gqir, efrqi };
enum class BlockBits { none, log2 };

inline std::string_view to_string(Encoding e) { return e == Encoding::gqir ? "gqir" : "efrqi"; }
inline std::string_view to_string(BlockBits b) { return b == BlockBits::none ? "none" : "log2"; }

inline BlockBits parse_block_bits(std::string_view s) {
  if (s == "none") return BlockBits::none;
  if (s == "log2") return BlockBits::log2;
  throw ParseError("unknown block-bits mode '" + std::string(s) + "'");
}

struct CostReport {
  Encoding encoding = Encoding::efrqi;
  std::int64_t coeff_one_bits = 0;  // 1-bits over all magnitudes
  std::int64_t position_bits = 0;   // 2n per position-addressed gate
  std::int64_t sign_bits = 0;
  std::int64_t block_bits = 0;
  std::int64_t nonzero_count = 0;
  std::int64_t clamped_count = 0;
  GateCensus census;
  double bpp = 0.0;

  std::int64_t total_bits() const { return coeff_one_bits + position_bits + sign_bits + block_bits; }
};

// Bits needed to name one block of the map's block grid.
inline int block_address_bits(const CoeffMap& m) {
  const int b = effective_block_size(m.transform, m.side());
  if (b == 0) return 0;
  const auto blocks = static_cast<unsigned>((m.side() / b) * (m.side() / b));
  return blocks <= 1 ? 0 : std::bit_width(blocks - 1);
}

// Closed-form rate and gate accounting; needs no circuit, so it scales to
// images far beyond what can be simulated.
//
// Every position-addressed gate carries the full 2n-bit address (zeros and
// ones). GQIR addresses the position once per set magnitude bit; EFRQI
// addresses it twice per entry (set and reset of the auxiliary qubit) and
// copies the bits with single-control CNOTs.
inline CostReport estimate_cost(const CoeffMap& m, Encoding enc, BlockBits bb = BlockBits::none) {
  CostReport r;
  r.encoding = enc;
  for (const auto& [p, c] : m.entries) r.coeff_one_bits += std::popcount(static_cast<unsigned>(c.magnitude));
  r.nonzero_count = static_cast<std::int64_t>(m.entries.size());
  r.clamped_count = m.clamped_count;

  const std::int64_t addressed = enc == Encoding::gqir ? r.coeff_one_bits : 2 * r.nonzero_count;
  r.position_bits = 2LL * m.n * addressed;
  r.sign_bits = m.transform == Transform::none ? 0 : r.nonzero_count;
  r.block_bits = bb == BlockBits::log2 ? r.nonzero_count * block_address_bits(m) : 0;

  r.census.hadamard = 2LL * m.n;
  if (enc == Encoding::gqir) {
    r.census.toffoli_like = r.coeff_one_bits;
  } else {
    r.census.toffoli_like = 2 * r.nonzero_count;
    r.census.cnot = r.coeff_one_bits;
  }
  r.bpp = static_cast<double>(r.total_bits()) / (static_cast<double>(m.width) * m.height);
  return r;
}

// ---- circuit builders --------------------------------------------------

struct Encoded {
  Circuit circuit;
  CostReport report;
};

namespace detail {

inline void check_magnitudes(const CoeffMap& m, int q) {
  if (q < 1 || q > 30) throw LayoutError("value register width out of range");
  const int limit = 1 << q;
  for (const auto& [p, c] : m.entries) {
    if (c.magnitude < 1 || c.magnitude >= limit) {
      throw RangeError("magnitude " + std::to_string(c.magnitude) + " at (" + std::to_string(p.y) + "," +
                       std::to_string(p.x) + ") does not fit " + std::to_string(q) + " value qubits");
    }
    if (p.y < 0 || p.x < 0 || p.y >= m.side() || p.x >= m.side()) {
      throw RangeError("entry position outside the 2^n x 2^n raster");
    }
  }
}

}  // namespace detail

/// One NOT per set magnitude bit, each controlled by the full position
/// address. The auxiliary qubit stays idle.
inline Encoded encode_gqir(const CoeffMap& m, int q, BlockBits bb = BlockBits::none) {
  detail::check_magnitudes(m, q);
  Encoded e{new_circuit(q, m.n), estimate_cost(m, Encoding::gqir, bb)};
  auto& c = e.circuit;
  append_hadamard_wall(c);
  for (const auto& [p, coeff] : m.entries) {
    const auto addr = position_controls(c.layout(), p.y, p.x);
    for (int i = 0; i < q; ++i) {
      if ((coeff.magnitude >> i) & 1) c.append(x_gate(c.layout().value_qubit(i), addr));
    }
  }
  e.report.census = gate_census(c);
  return e;
}

/// Per entry: a position-controlled NOT sets the auxiliary qubit, CNOTs copy
/// it into each set value bit, and the same address gate resets it.
inline Encoded encode_efrqi(const CoeffMap& m, int q, BlockBits bb = BlockBits::none) {
  detail::check_magnitudes(m, q);
  Encoded e{new_circuit(q, m.n), estimate_cost(m, Encoding::efrqi, bb)};
  auto& c = e.circuit;
  const int aux = c.layout().aux_qubit();
  append_hadamard_wall(c);
  for (const auto& [p, coeff] : m.entries) {
    auto addr = position_controls(c.layout(), p.y, p.x);
    c.append(x_gate(aux, addr));
    for (int i = 0; i < q; ++i) {
      if ((coeff.magnitude >> i) & 1) c.append(x_gate(c.layout().value_qubit(i), {{aux, Polarity::positive}}));
    }
    c.append(x_gate(aux, std::move(addr)));
  }
  e.report.census = gate_census(c);
  return e;
}

inline Encoded encode(const CoeffMap& m, Encoding enc, int q, BlockBits bb = BlockBits::none) {
  return enc == Encoding::gqir ? encode_gqir(m, q, bb) : encode_efrqi(m, q, bb);
}

struct DctEfrqiOptions {
  bool centered = true;
  BlockBits block_bits = BlockBits::none;
};

struct DctEfrqiResult {
  Circuit circuit;
  CoeffMap map;
  CostReport report;
};

/// 8x8 block DCT, scalar quantization, then EFRQI over the non-zero levels.
inline DctEfrqiResult encode_dctefrqi(const GrayImage& img, QuantSpec spec, int q = 8, DctEfrqiOptions opts = {}) {
  if (q < 1 || q > 30) throw LayoutError("value register width out of range");
  auto map = build_coeff_map(img, Transform::dct8, spec, {opts.centered, (1 << q) - 1});
  auto enc = encode_efrqi(map, q, opts.block_bits);
  return {std::move(enc.circuit), std::move(map), enc.report};
}

// ---- sidecar / report JSON ---------------------------------------------

// {"n":..,"original_dims":[w,h],"transform":"dct8","q_factor":16,"centered":true,
//  "clamped_count":0,"entries":[[y,x,magnitude,sign],...]} with sign +1/-1 and
// entries in raster order.
inline std::string coeffmap_to_json(const CoeffMap& m) {
  std::string out;
  out.reserve(128 + m.entries.size() * 20);
  out += "{\"n\":" + std::to_string(m.n) + ",\"original_dims\":[" + std::to_string(m.width) + ',' +
         std::to_string(m.height) + "],\"transform\":\"" + std::string(to_string(m.transform)) +
         "\",\"q_factor\":" + std::to_string(m.q_factor) + ",\"centered\":" + (m.centered ? "true" : "false") +
         ",\"clamped_count\":" + std::to_string(m.clamped_count) + ",\"entries\":[";
  bool first = true;
  for (const auto& [p, c] : m.entries) {
    if (!first) out += ',';
    first = false;
    out += '[' + std::to_string(p.y) + ',' + std::to_string(p.x) + ',' + std::to_string(c.magnitude) + ',' +
           (c.sign == Sign::negative ? "-1" : "1") + ']';
  }
  out += "]}";
  return out;
}

inline CoeffMap parse_coeffmap_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    CoeffMap m;
    m.n = j.at("n").get<int>();
    const auto& dims = j.at("original_dims");
    m.width = dims.at(0).get<int>();
    m.height = dims.at(1).get<int>();
    if (m.n < 0 || m.n > 15 || m.width < 1 || m.height < 1 || m.width > (1 << m.n) || m.height > (1 << m.n)) {
      throw ParseError("coefficient map: inconsistent geometry");
    }
    m.transform = parse_transform(j.at("transform").get<std::string>());
    m.q_factor = j.at("q_factor").get<int>();
    if (m.q_factor < 1) throw ParseError("coefficient map: q_factor must be >= 1");
    m.centered = j.at("centered").get<bool>();
    m.clamped_count = j.at("clamped_count").get<std::int64_t>();
    for (const auto& e : j.at("entries")) {
      if (!e.is_array() || e.size() != 4) throw ParseError("coefficient map: entry must be [y,x,magnitude,sign]");
      const Position p{e[0].get<int>(), e[1].get<int>()};
      const int mag = e[2].get<int>(), sign = e[3].get<int>();
      if (p.y < 0 || p.x < 0 || p.y >= m.side() || p.x >= m.side()) throw ParseError("coefficient map: position out of range");
      if (mag < 1) throw ParseError("coefficient map: magnitude must be >= 1");
      if (sign != 1 && sign != -1) throw ParseError("coefficient map: sign must be 1 or -1");
      if (!m.entries.emplace(p, Coefficient{mag, sign < 0 ? Sign::negative : Sign::positive}).second) {
        throw ParseError("coefficient map: duplicate position");
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("coefficient map JSON: ") + e.what());
  }
}

inline nlohmann::ordered_json report_to_json(const CostReport& r) {
  nlohmann::ordered_json j;
  j["encoding"] = std::string(to_string(r.encoding));
  j["nonzero_count"] = r.nonzero_count;
  j["coeff_one_bits"] = r.coeff_one_bits;
  j["position_bits"] = r.position_bits;
  j["sign_bits"] = r.sign_bits;
  j["block_bits"] = r.block_bits;
  j["total_bits"] = r.total_bits();
  j["clamped_count"] = r.clamped_count;
  j["bpp"] = r.bpp;
  j["gate_census"] = census_to_json(r.census);
  return j;
}

}  // namespace qimc

#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qimc/error.hpp"

namespace qimc {

using Bytes = std::vector<std::uint8_t>;

// 8-bit grayscale raster, zero-padded to a 2^n x 2^n square. width/height
// keep the original geometry; everything that measures quality or rate
// works on that region only.
struct GrayImage {
  int width = 0;
  int height = 0;
  int padded_size = 0;
  int n = 0;
  std::vector<std::uint8_t> pixels;  // padded_size * padded_size, row-major

  std::uint8_t at(int y, int x) const {
    return pixels[static_cast<std::size_t>(y) * padded_size + x];
  }
  std::uint8_t& at(int y, int x) {
    return pixels[static_cast<std::size_t>(y) * padded_size + x];
  }

  bool operator==(const GrayImage&) const = default;
};

// Pads a width x height raster (row-major) with zeros to the smallest
// enclosing power-of-two square.
inline GrayImage pad_to_power_of_two(int width, int height,
                                     std::span<const std::uint8_t> raster) {
  if (width <= 0 || height <= 0) {
    throw EmptyImage("image has zero width or height");
  }
  const auto count = static_cast<std::size_t>(width) * height;
  if (raster.size() != count) {
    throw ShapeError("raster has " + std::to_string(raster.size()) +
                     " samples, expected " + std::to_string(count));
  }
  const auto side = std::bit_ceil(static_cast<unsigned>(std::max(width, height)));
  GrayImage img;
  img.width = width;
  img.height = height;
  img.padded_size = static_cast<int>(side);
  img.n = std::countr_zero(side);
  img.pixels.assign(static_cast<std::size_t>(side) * side, 0);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      img.at(y, x) = raster[static_cast<std::size_t>(y) * width + x];
    }
  }
  return img;
}

// Original width x height region, row-major.
inline std::vector<std::uint8_t> crop(const GrayImage& img) {
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(img.width) * img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) out.push_back(img.at(y, x));
  }
  return out;
}

namespace detail {

class PgmReader {
 public:
  explicit PgmReader(std::span<const std::uint8_t> data) : data_(data) {}

  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      const auto c = data_[pos_];
      if (c == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long read_uint(const char* what) {
    skip_space_and_comments();
    const auto start = pos_;
    long value = 0;
    while (pos_ < data_.size() && std::isdigit(data_[pos_])) {
      value = value * 10 + (data_[pos_] - '0');
      if (value > 1'000'000'000L) throw ParseError(std::string("PGM ") + what + " out of range");
      ++pos_;
    }
    if (pos_ == start) throw ParseError(std::string("PGM header: expected ") + what);
    return value;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t k) { pos_ += k; }
  std::size_t remaining() const { return data_.size() - pos_; }
  std::uint8_t peek() const { return data_[pos_]; }
  std::span<const std::uint8_t> rest() const { return data_.subspan(pos_); }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Reads binary (P5) or ASCII (P2) PGM with maxval <= 255. Sample values are
// kept as-is (no rescaling for maxval < 255).
inline GrayImage load_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') throw ParseError("not a PNM file: bad magic");
  const char kind = static_cast<char>(bytes[1]);
  if (kind == '1' || kind == '3' || kind == '4' || kind == '6' || kind == '7') {
    throw UnsupportedFormat(std::string("unsupported PNM variant P") + kind +
                            " (grayscale PGM only)");
  }
  if (kind != '2' && kind != '5') throw ParseError("not a PGM file: bad magic");

  detail::PgmReader rd(bytes);
  rd.advance(2);
  if (rd.remaining() == 0 || !std::isspace(rd.peek())) throw ParseError("PGM header: bad magic");
  const long width = rd.read_uint("width");
  const long height = rd.read_uint("height");
  const long maxval = rd.read_uint("maxval");
  if (width == 0 || height == 0) throw EmptyImage("PGM has zero width or height");
  if (maxval == 0) throw ParseError("PGM maxval must be positive");
  if (maxval > 255) throw UnsupportedFormat("PGM maxval > 255 (16-bit samples) not supported");

  const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<std::uint8_t> raster;
  raster.reserve(count);
  if (kind == '5') {
    // exactly one whitespace byte separates the header from the payload
    if (rd.remaining() == 0 || !std::isspace(rd.peek())) throw ParseError("PGM header: missing separator");
    rd.advance(1);
    if (rd.remaining() < count) throw ParseError("PGM payload truncated");
    auto payload = rd.rest().first(count);
    for (auto v : payload) {
      if (v > maxval) throw ParseError("PGM sample exceeds maxval");
      raster.push_back(v);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      rd.skip_space_and_comments();
      if (rd.remaining() == 0) throw ParseError("PGM payload truncated");
      const long v = rd.read_uint("sample");
      if (v > maxval) throw ParseError("PGM sample exceeds maxval");
      raster.push_back(static_cast<std::uint8_t>(v));
    }
  }
  return pad_to_power_of_two(static_cast<int>(width), static_cast<int>(height), raster);
}

inline GrayImage load_pgm(std::string_view text) {
  return load_pgm(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

// Binary P5, canonical header "P5\n<w> <h>\n255\n".
inline Bytes save_pgm(const GrayImage& img, bool crop_to_original) {
  const int w = crop_to_original ? img.width : img.padded_size;
  const int h = crop_to_original ? img.height : img.padded_size;
  char header[64];
  const int len = std::snprintf(header, sizeof header, "P5\n%d %d\n255\n", w, h);
  Bytes out(header, header + len);
  out.reserve(out.size() + static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) out.push_back(img.at(y, x));
  }
  return out;
}

inline Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Writes to a sibling temp file then renames, so readers never observe a
// partially written output.
inline void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> data) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline void write_file_atomic(const std::filesystem::path& path, std::string_view text) {
  write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace qimc

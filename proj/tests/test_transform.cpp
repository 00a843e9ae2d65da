#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qimc/transform.hpp"

using namespace qimc;

namespace {

std::vector<double> random_block(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> px(0, 255);
  std::vector<double> b(static_cast<std::size_t>(n) * n);
  for (auto& v : b) v = px(rng);
  return b;
}

double energy(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return s;
}

}  // namespace

TEST(Dct, ZeroBlock) {
  const auto c = dct2_block(std::vector<double>(64, 0.0), false);
  for (double v : c.values) EXPECT_EQ(v, 0.0);
}

TEST(Dct, Constant128HasDcOnly) {
  const auto c = dct2_block(std::vector<double>(64, 128.0), false);
  EXPECT_NEAR(c.values[0], 1024.0, 1e-9);  // (1/8) * 64 * 128
  for (std::size_t i = 1; i < 64; ++i) EXPECT_NEAR(c.values[i], 0.0, 1e-9);
  // centered: the level shift removes it entirely
  const auto z = dct2_block(std::vector<double>(64, 128.0), true);
  for (double v : z.values) EXPECT_NEAR(v, 0.0, 1e-9);
}

TEST(Dct, MatchesNaiveDefinition) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    const auto b = random_block(rng, 8);
    for (bool centered : {false, true}) {
      const auto fast = dct2_block(b, centered).values;
      const auto ref = oracle::naive_dct2(b, 8, centered ? 128.0 : 0.0);
      for (std::size_t i = 0; i < 64; ++i) ASSERT_NEAR(fast[i], ref[i], 1e-9);
    }
  }
  for (int n : {1, 2, 4}) {
    const auto b = random_block(rng, n);
    const auto fast = detail::dct2_square(b, n, true);
    const auto ref = oracle::naive_dct2(b, n, 128.0);
    for (std::size_t i = 0; i < fast.size(); ++i) EXPECT_NEAR(fast[i], ref[i], 1e-9);
  }
}

TEST(Dct, InverseAndParseval) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 500; ++t) {
    const auto b = random_block(rng, 8);
    const auto c = dct2_block(b, false);
    EXPECT_NEAR(energy(c.values), energy(b), 1e-9 * energy(b) + 1e-9);
    const auto back = idct2_block(c, false);
    for (std::size_t i = 0; i < 64; ++i) ASSERT_NEAR(back[i], b[i], 1e-9);
    const auto backc = idct2_block(dct2_block(b, true), true);
    for (std::size_t i = 0; i < 64; ++i) ASSERT_NEAR(backc[i], b[i], 1e-9);
  }
}

TEST(Dct, InverseSpecialCases) {
  CoeffBlock zero{{}, 8, std::vector<double>(64, 0.0)};
  for (double v : idct2_block(zero, false)) EXPECT_EQ(v, 0.0);
  CoeffBlock dc{{}, 8, std::vector<double>(64, 0.0)};
  dc.values[0] = 1.0;
  for (double v : idct2_block(dc, false)) EXPECT_NEAR(v, 1.0 / 8.0, 1e-15);
}

TEST(Dct, ShapeErrors) {
  EXPECT_THROW(dct2_block(std::vector<double>(63), false), ShapeError);
  EXPECT_THROW(idct2_block(CoeffBlock{{}, 4, std::vector<double>(16)}, false), ShapeError);
  EXPECT_THROW(detail::dct2_square(std::vector<double>(9), 3, false), ShapeError);
}

TEST(Haar, ConstantBlockHasNoDetail) {
  for (int n : {8, 64}) {
    const auto c = haar_dwt_block(std::vector<double>(static_cast<std::size_t>(n) * n, 77.0), n);
    const int h = n / 2;
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) {
        const double v = c.values[static_cast<std::size_t>(y) * n + x];
        if (y < h && x < h) EXPECT_NEAR(v, 154.0, 1e-12);
        else EXPECT_NEAR(v, 0.0, 1e-12);
      }
  }
}

TEST(Haar, MatchesPairwiseOracleAndInverts) {
  std::mt19937_64 rng(3);
  for (int n : {8, 64}) {
    for (int t = 0; t < 50; ++t) {
      const auto b = random_block(rng, n);
      const auto c = haar_dwt_block(b, n);
      const auto ref = oracle::naive_haar(b, n);
      for (std::size_t i = 0; i < ref.size(); ++i) ASSERT_NEAR(c.values[i], ref[i], 1e-9);
      EXPECT_NEAR(energy(c.values), energy(b), 1e-9 * energy(b));
      const auto back = haar_idwt_block(c);
      for (std::size_t i = 0; i < b.size(); ++i) ASSERT_NEAR(back[i], b[i], 1e-9);
    }
  }
}

TEST(Haar, InverseSpecialCases) {
  CoeffBlock zero{{}, 8, std::vector<double>(64, 0.0)};
  for (double v : haar_idwt_block(zero)) EXPECT_EQ(v, 0.0);

  // LL-only: each LL cell spreads to a constant 2x2 patch of value LL/2.
  CoeffBlock ll{{}, 8, std::vector<double>(64, 0.0)};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) ll.values[static_cast<std::size_t>(i) * 8 + j] = 10.0 * i + j;
  const auto px = haar_idwt_block(ll);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x) EXPECT_NEAR(px[static_cast<std::size_t>(y) * 8 + x], (10.0 * (y / 2) + x / 2) / 2.0, 1e-12);
}

TEST(Haar, ShapeErrors) {
  EXPECT_THROW(haar_dwt_block(std::vector<double>(16 * 16), 16), ShapeError);
  EXPECT_THROW(haar_dwt_block(std::vector<double>(10), 8), ShapeError);
  EXPECT_THROW(haar_idwt_block(CoeffBlock{{}, 32, std::vector<double>(32 * 32)}), ShapeError);
}

TEST(Quantize, Examples) {
  const QuantSpec q16(16);
  EXPECT_EQ(quantize(0, q16), 0);
  EXPECT_EQ(quantize(40, q16), 3);
  EXPECT_EQ(quantize(-40, q16), -3);
  EXPECT_EQ(quantize(7.99, q16), 0);
  EXPECT_EQ(quantize(8, q16), 1);
  EXPECT_EQ(dequantize(0, q16), 0.0);
  EXPECT_EQ(dequantize(3, q16), 48.0);
  EXPECT_EQ(dequantize(-3, q16), -48.0);
  EXPECT_THROW(QuantSpec(0), DomainError);
}

TEST(Quantize, ClampsToValueRegister) {
  const auto hi = quantize_tracked(2040.0, QuantSpec(1));
  EXPECT_EQ(hi.level, 255);
  EXPECT_TRUE(hi.clamped);
  const auto lo = quantize_tracked(-300.0, QuantSpec(1));
  EXPECT_EQ(lo.level, -255);
  EXPECT_TRUE(lo.clamped);
  EXPECT_FALSE(quantize_tracked(255.0, QuantSpec(1)).clamped);
}

TEST(Quantize, OddAndBoundedErrorProperty) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> qd(1, 80);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int t = 0; t < 20000; ++t) {
    const QuantSpec q(qd(rng));
    const double x = unit(rng) * 255.0 * q.q_factor();
    ASSERT_EQ(quantize(-x, q), -quantize(x, q));
    ASSERT_LE(std::abs(dequantize(quantize(x, q), q) - x), q.q_factor() / 2.0 + 1e-9);
  }
}

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "flicker/palette.hpp"
#include "oracles.hpp"

namespace flicker {
namespace {

TEST(Palette, CodesMatchComputerColorTable) {
  EXPECT_EQ(palette_code(PaletteColor::Yellow), (Rgb{1, 1, 0}));
  EXPECT_EQ(palette_code(PaletteColor::Magenta), (Rgb{1, 0, 1}));
  EXPECT_EQ(palette_code(PaletteColor::Cyan), (Rgb{0, 1, 1}));
  EXPECT_EQ(palette_code(PaletteColor::Red), (Rgb{1, 0, 0}));
  EXPECT_EQ(palette_code(PaletteColor::Green), (Rgb{0, 1, 0}));
  EXPECT_EQ(palette_code(PaletteColor::Blue), (Rgb{0, 0, 1}));
  EXPECT_EQ(palette_code(PaletteColor::White), (Rgb{1, 1, 1}));
  EXPECT_EQ(palette_code(PaletteColor::Black), (Rgb{0, 0, 0}));
}

TEST(Palette, CodesAreDistinctCubeCorners) {
  for (auto a : kAllColors) {
    const auto ca = palette_code(a);
    for (double v : {ca.r, ca.g, ca.b}) EXPECT_TRUE(v == 0.0 || v == 1.0);
    for (auto b : kAllColors) {
      if (a != b) {
        EXPECT_NE(ca, palette_code(b));
      }
    }
  }
}

TEST(Palette, OrderIsBlackFirstWhiteLast) {
  EXPECT_EQ(index_of(kAllColors.front()), 0U);
  EXPECT_EQ(kAllColors.front(), PaletteColor::Black);
  EXPECT_EQ(kAllColors.back(), PaletteColor::White);
  for (std::size_t i = 0; i < kPaletteSize; ++i) EXPECT_EQ(index_of(kAllColors[i]), i);
}

TEST(Quantize, Examples) {
  EXPECT_EQ(quantize({1, 1, 0}), PaletteColor::Yellow);
  EXPECT_EQ(quantize({0.9, 0.9, 0.1}), PaletteColor::Yellow);
  // All eight corners are sqrt(0.75) away; lowest index wins.
  EXPECT_EQ(quantize({0.5, 0.5, 0.5}), PaletteColor::Black);
}

TEST(Quantize, IdempotentOnCodes) {
  for (auto c : kAllColors) EXPECT_EQ(quantize(palette_code(c)), c);
}

TEST(Quantize, MatchesBruteForceOnGrid) {
  // Includes every tie plane at 0.5.
  for (int r = 0; r <= 20; ++r)
    for (int g = 0; g <= 20; ++g)
      for (int b = 0; b <= 20; ++b) {
        const Rgb p{r / 20.0, g / 20.0, b / 20.0};
        ASSERT_EQ(static_cast<int>(index_of(quantize(p))), oracle::brute_quantize(p))
            << p.r << "," << p.g << "," << p.b;
      }
}

TEST(Quantize, MatchesBruteForceOnRandomAndByteValues) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100000; ++k) {
    const Rgb p{u(rng), u(rng), u(rng)};
    ASSERT_EQ(static_cast<int>(index_of(quantize(p))), oracle::brute_quantize(p));
  }
  for (int v = 0; v < 256; ++v) {
    const Rgb p = rgb_from_bytes(static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(255 - v),
                                 static_cast<std::uint8_t>(v));
    ASSERT_EQ(static_cast<int>(index_of(quantize(p))), oracle::brute_quantize(p));
  }
}

TEST(Palette, ByteNormalization) {
  EXPECT_EQ(rgb_from_bytes(255, 0, 255), (Rgb{1, 0, 1}));
  EXPECT_DOUBLE_EQ(rgb_from_bytes(51, 0, 0).r, 0.2);
  EXPECT_TRUE(is_valid(rgb_from_bytes(128, 127, 1)));
  EXPECT_FALSE(is_valid({1.1, 0, 0}));
  EXPECT_FALSE(is_valid({0, -0.1, 0}));
}

TEST(Palette, ColorNames) {
  for (auto c : kAllColors) EXPECT_EQ(color_from_name(color_name(c)), c);
  EXPECT_EQ(color_from_name("white"), PaletteColor::White);
  EXPECT_EQ(color_from_name("BLUE"), PaletteColor::Blue);
  EXPECT_FALSE(color_from_name("orange").has_value());
}

TEST(DistanceMatrix, Examples) {
  const auto d = distance_matrix();
  EXPECT_EQ(d[index_of(PaletteColor::Black)][index_of(PaletteColor::Blue)], 0.5);
  EXPECT_EQ(d[index_of(PaletteColor::White)][index_of(PaletteColor::Yellow)], 6.5);
  EXPECT_EQ(d[index_of(PaletteColor::Red)][index_of(PaletteColor::Red)], 0.0);
}

TEST(DistanceMatrix, EqualsPrintedTableExactly) {
  const auto d = distance_matrix();
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) EXPECT_EQ(d[i][j], oracle::kPrintedDistance[i][j]) << i << "," << j;
}

TEST(DistanceMatrix, SymmetricHalfSums) {
  const auto d = distance_matrix();
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      EXPECT_EQ(d[i][j], d[j][i]);
      if (i != j) {
        EXPECT_EQ(d[i][j], static_cast<double>(i + j) / 2.0);
      }
    }
}

}  // namespace
}  // namespace flicker

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace flicker {

inline constexpr std::size_t kPaletteSize = 8;

// The eight computer color codes. The enumerator value is the row/column
// index used by every probability table, and equals 4*r + 2*g + b of the code.
enum class PaletteColor : std::uint8_t {
  Black = 0,
  Blue = 1,
  Green = 2,
  Cyan = 3,
  Red = 4,
  Magenta = 5,
  Yellow = 6,
  White = 7,
};

inline constexpr std::array<PaletteColor, kPaletteSize> kAllColors = {
    PaletteColor::Black, PaletteColor::Blue,    PaletteColor::Green,  PaletteColor::Cyan,
    PaletteColor::Red,   PaletteColor::Magenta, PaletteColor::Yellow, PaletteColor::White,
};

constexpr std::size_t index_of(PaletteColor c) noexcept { return static_cast<std::size_t>(c); }

/// RGB triple with each channel in [0, 1].
struct Rgb {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;

  friend constexpr bool operator==(const Rgb&, const Rgb&) = default;
};

constexpr bool is_valid(const Rgb& p) noexcept {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  return in_unit(p.r) && in_unit(p.g) && in_unit(p.b);
}

/// 8-bit channels normalized by v/255.
constexpr Rgb rgb_from_bytes(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
  return {r / 255.0, g / 255.0, b / 255.0};
}

constexpr Rgb palette_code(PaletteColor c) noexcept {
  const auto i = index_of(c);
  return {static_cast<double>((i >> 2) & 1U), static_cast<double>((i >> 1) & 1U),
          static_cast<double>(i & 1U)};
}

// Nearest palette code in Euclidean RGB distance, ties to the lowest index.
// The codes are the corners of the unit cube, so the squared distance splits
// into independent per-channel terms: each channel picks 1 only when strictly
// closer to 1 than to 0. A tie on any channel picks 0, which is also the
// lower index, so the combined choice is the lowest-index argmin.
constexpr PaletteColor quantize(const Rgb& p) noexcept {
  const unsigned r = p.r > 0.5 ? 1U : 0U;
  const unsigned g = p.g > 0.5 ? 1U : 0U;
  const unsigned b = p.b > 0.5 ? 1U : 0U;
  return static_cast<PaletteColor>((r << 2) | (g << 1) | b);
}

constexpr std::string_view color_name(PaletteColor c) noexcept {
  constexpr std::array<std::string_view, kPaletteSize> names = {
      "Black", "Blue", "Green", "Cyan", "Red", "Magenta", "Yellow", "White"};
  return names[index_of(c)];
}

/// Case-insensitive lookup by name ("black", "White", ...).
inline std::optional<PaletteColor> color_from_name(std::string_view name) {
  for (auto c : kAllColors) {
    const auto candidate = color_name(c);
    if (candidate.size() != name.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < name.size() && same; ++i) {
      const auto lower = [](char ch) {
        return (ch >= 'A' && ch <= 'Z') ? static_cast<char>(ch - 'A' + 'a') : ch;
      };
      same = lower(candidate[i]) == lower(name[i]);
    }
    if (same) return c;
  }
  return std::nullopt;
}

template <std::size_t N>
using SquareMatrix = std::array<std::array<double, N>, N>;

using Matrix8 = SquareMatrix<kPaletteSize>;

// Pairwise color relation table: zero on the diagonal and (i+j)/2 elsewhere.
// All entries are exact halves.
constexpr Matrix8 distance_matrix() noexcept {
  Matrix8 d{};
  for (std::size_t i = 0; i < kPaletteSize; ++i) {
    for (std::size_t j = 0; j < kPaletteSize; ++j) {
      d[i][j] = (i == j) ? 0.0 : static_cast<double>(i + j) / 2.0;
    }
  }
  return d;
}

}  // namespace flicker

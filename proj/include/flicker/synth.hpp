#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "flicker/detector.hpp"
#include "flicker/errors.hpp"
#include "flicker/frame.hpp"
#include "flicker/palette.hpp"

namespace flicker {

// 32-bit linear congruential generator, x' = 1664525 x + 1013904223 (mod 2^32).
// Fixed so that any implementation reproduces the same injection locations.
class Lcg32 {
 public:
  explicit constexpr Lcg32(std::uint32_t seed) noexcept : state_(seed) {}

  constexpr std::uint32_t next() noexcept {
    state_ = 1664525U * state_ + 1013904223U;
    return state_;
  }

  /// Uniform-ish integer in [0, bound) by multiply-shift; bound must be > 0.
  constexpr std::uint32_t below(std::uint32_t bound) noexcept {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(next()) * bound) >> 32);
  }

 private:
  std::uint32_t state_;
};

struct InjectionSpec {
  PaletteColor base_color = PaletteColor::Black;
  PaletteColor flicker_color = PaletteColor::White;
  double fraction = 0.06;
  std::size_t width = 100;
  std::size_t height = 100;
  std::size_t frame_count = 10;
  std::uint32_t seed = 42;

  std::size_t injected_count() const {
    return static_cast<std::size_t>(std::llround(fraction * static_cast<double>(width * height)));
  }

  void validate() const {
    if (!(fraction >= 0.0 && fraction <= 1.0)) throw InputError("fraction must lie in [0,1]");
    if (width == 0 || height == 0) throw InputError("synthetic frame dimensions must be positive");
    if (frame_count == 0) throw InputError("frame_count must be positive");
    if (width * height > 0xFFFFFFFFULL) throw InputError("synthetic frame too large");
  }
};

/// Distinct linear pixel indices, sorted ascending. Partial Fisher-Yates driven by Lcg32.
inline std::vector<std::size_t> injection_locations(const InjectionSpec& spec) {
  spec.validate();
  const std::size_t n = spec.width * spec.height;
  const std::size_t k = spec.injected_count();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Lcg32 rng(spec.seed);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.below(static_cast<std::uint32_t>(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

struct SyntheticSequence {
  FrameSequence sequence;
  std::vector<FlickerMap> ground_truth;  // one per consecutive pair
  std::vector<std::size_t> locations;
};

// Even frames are uniform base_color; odd frames additionally carry
// flicker_color at the selected locations. Every pair's truth map marks
// exactly those locations.
inline SyntheticSequence generate(const InjectionSpec& spec) {
  const auto locations = injection_locations(spec);
  const Frame even(spec.width, spec.height, palette_code(spec.base_color));
  Frame odd = even;
  for (auto i : locations) odd[i] = palette_code(spec.flicker_color);

  SyntheticSequence out;
  out.locations = locations;
  out.sequence.frames.reserve(spec.frame_count);
  for (std::size_t f = 0; f < spec.frame_count; ++f) {
    out.sequence.frames.push_back(f % 2 == 0 ? even : odd);
  }
  for (std::size_t p = 0; p + 1 < spec.frame_count; ++p) {
    FlickerMap m(spec.width, spec.height, p);
    for (auto i : locations) m.set(i);
    out.ground_truth.push_back(std::move(m));
  }
  return out;
}

}  // namespace flicker

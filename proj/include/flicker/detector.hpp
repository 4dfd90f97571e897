#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "flicker/errors.hpp"
#include "flicker/frame.hpp"
#include "flicker/palette.hpp"
#include "flicker/stochastic.hpp"

namespace flicker {

inline constexpr double kDefaultThreshold = 0.05;

struct DetectorConfig {
  double threshold = kDefaultThreshold;
  ProbabilitySource source = ProbabilitySource::col_stochastic;
  CdfMode mode = CdfMode::precision;
  // Table lookup is (row = earlier frame, column = later frame) unless swapped.
  bool swap_lookup = false;
  unsigned workers = 1;

  void validate() const {
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
      throw InputError("threshold must lie in [0,1], got " + std::to_string(threshold));
    }
  }
};

/// Per-pixel flicker flags for one consecutive frame pair.
struct FlickerMap {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> flags;  // row-major, 0 or 1
  std::size_t pair_index = 0;

  FlickerMap() = default;
  FlickerMap(std::size_t w, std::size_t h, std::size_t pair = 0)
      : width(w), height(h), flags(w * h, 0), pair_index(pair) {}

  bool operator()(std::size_t x, std::size_t y) const noexcept { return flags[y * width + x] != 0; }
  void set(std::size_t i, bool v = true) noexcept { flags[i] = v ? 1 : 0; }

  std::size_t total() const noexcept { return flags.size(); }
  std::size_t count() const noexcept {
    return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), std::uint8_t{1}));
  }
  bool any() const noexcept {
    return std::any_of(flags.begin(), flags.end(), [](std::uint8_t f) { return f != 0; });
  }

  /// Linear indices of flagged pixels, ascending.
  std::vector<std::size_t> locations() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < flags.size(); ++i)
      if (flags[i]) out.push_back(i);
    return out;
  }

  friend bool operator==(const FlickerMap&, const FlickerMap&) = default;
};

inline double flicker_ratio(const FlickerMap& map) {
  if (map.total() == 0) return 0.0;
  return static_cast<double>(map.count()) / static_cast<double>(map.total());
}

struct PairReport {
  std::size_t index = 0;
  std::size_t flagged = 0;
  std::size_t total = 0;
  double ratio = 0.0;
  std::vector<std::size_t> locations;  // linear pixel indices

  friend bool operator==(const PairReport&, const PairReport&) = default;
};

struct FlickerReport {
  std::vector<PairReport> pairs;
  double aggregate_ratio = 0.0;

  friend bool operator==(const FlickerReport&, const FlickerReport&) = default;
};

inline PairReport make_pair_report(const FlickerMap& map) {
  return {map.pair_index, map.count(), map.total(), flicker_ratio(map), map.locations()};
}

/// Unweighted mean of the pair ratios; 0 for no pairs.
inline double aggregate_ratio(const std::vector<PairReport>& pairs) {
  if (pairs.empty()) return 0.0;
  // Equal pair sizes (any single sequence): mean of ratios == flagged / pixels, one rounding.
  const bool uniform = std::all_of(pairs.begin(), pairs.end(),
                                   [&](const PairReport& p) { return p.total == pairs.front().total; });
  if (uniform && pairs.front().total > 0) {
    std::size_t flagged = 0;
    for (const auto& p : pairs) flagged += p.flagged;
    return static_cast<double>(flagged) /
           (static_cast<double>(pairs.front().total) * static_cast<double>(pairs.size()));
  }
  double sum = 0.0;
  for (const auto& p : pairs) sum += p.ratio;
  return sum / static_cast<double>(pairs.size());
}

inline FlickerReport make_report(const std::vector<FlickerMap>& maps) {
  FlickerReport r;
  r.pairs.reserve(maps.size());
  for (const auto& m : maps) r.pairs.push_back(make_pair_report(m));
  r.aggregate_ratio = aggregate_ratio(r.pairs);
  return r;
}

/// Flags pixel i when the table probability of its quantized color pair is >= threshold.
inline FlickerMap compare_frames(const Frame& fa, const Frame& fb, const DetectorConfig& cfg = {},
                                 std::size_t pair_index = 0) {
  cfg.validate();
  if (!fa.same_shape(fb)) {
    throw InputError("frame dimensions differ: " + FrameSequence::dims(fa) + " vs " +
                     FrameSequence::dims(fb));
  }
  const Matrix8& table = tables(cfg.mode).table(cfg.source);

  // Hoist the threshold test out of the pixel loop.
  std::array<std::array<std::uint8_t, kPaletteSize>, kPaletteSize> hit{};
  for (std::size_t i = 0; i < kPaletteSize; ++i)
    for (std::size_t j = 0; j < kPaletteSize; ++j)
      hit[i][j] = (cfg.swap_lookup ? table[j][i] : table[i][j]) >= cfg.threshold ? 1 : 0;

  FlickerMap map(fa.width(), fa.height(), pair_index);
  const auto a = fa.pixels();
  const auto b = fb.pixels();
  for (std::size_t i = 0; i < a.size(); ++i) {
    map.flags[i] = hit[index_of(quantize(a[i]))][index_of(quantize(b[i]))];
  }
  return map;
}

struct PairDetection {
  FlickerMap map;
  PairReport report;
};

/// One map and report per consecutive pair, in pair order.
inline std::vector<PairDetection> detect_pairs(const FrameSequence& seq,
                                               const DetectorConfig& cfg = {}) {
  cfg.validate();
  if (seq.size() < 2) throw InputError("detection needs at least 2 frames");
  seq.validate();

  const std::size_t n_pairs = seq.size() - 1;
  std::vector<PairDetection> out(n_pairs);
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      out[k].map = compare_frames(seq[k], seq[k + 1], cfg, k);
      out[k].report = make_pair_report(out[k].map);
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(cfg.workers, 1, n_pairs);
  if (workers == 1) {
    run(0, n_pairs);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n_pairs + workers - 1) / workers;
    for (std::size_t begin = 0; begin < n_pairs; begin += chunk) {
      pool.emplace_back(run, begin, std::min(begin + chunk, n_pairs));
    }
  }
  return out;
}

struct SequenceDetection {
  std::vector<FlickerMap> maps;
  FlickerReport report;
};

inline SequenceDetection detect_sequence(const FrameSequence& seq, const DetectorConfig& cfg = {}) {
  auto pairs = detect_pairs(seq, cfg);
  SequenceDetection out;
  out.maps.reserve(pairs.size());
  out.report.pairs.reserve(pairs.size());
  for (auto& p : pairs) {
    out.maps.push_back(std::move(p.map));
    out.report.pairs.push_back(std::move(p.report));
  }
  out.report.aggregate_ratio = aggregate_ratio(out.report.pairs);
  return out;
}

}  // namespace flicker

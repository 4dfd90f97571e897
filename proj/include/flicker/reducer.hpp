#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "flicker/detector.hpp"
#include "flicker/errors.hpp"
#include "flicker/frame.hpp"

namespace flicker {

constexpr Rgb mean_pixel(const Rgb& a, const Rgb& b) noexcept {
  return {(a.r + b.r) / 2.0, (a.g + b.g) / 2.0, (a.b + b.b) / 2.0};
}

enum class ReduceMode {
  insert,   // add a reconstructed frame between each flagged pair
  replace,  // overwrite flagged pixels of the later frame, length preserved
};

inline std::optional<ReduceMode> reduce_mode_from_string(std::string_view s) {
  if (s == "insert") return ReduceMode::insert;
  if (s == "replace") return ReduceMode::replace;
  return std::nullopt;
}

struct ReduceOptions {
  ReduceMode mode = ReduceMode::insert;
  // Average every pixel of the reconstructed frame, not only flagged ones.
  bool full_mean = false;
};

struct ReconstructedFrame {
  Frame frame;
  std::size_t source_pair = 0;
  FlickerMap mask;
};

/// Flagged pixels become mean(fa, fb); the rest are copied from fa (or averaged with full_mean).
inline ReconstructedFrame reconstruct_frame(const Frame& fa, const Frame& fb, const FlickerMap& map,
                                            bool full_mean = false) {
  if (!fa.same_shape(fb) || map.width != fa.width() || map.height != fa.height()) {
    throw InputError("reconstruct_frame: frame/map dimensions differ");
  }
  ReconstructedFrame out{fa, map.pair_index, map};
  for (std::size_t i = 0; i < fa.size(); ++i) {
    if (full_mean || map.flags[i]) out.frame[i] = mean_pixel(fa[i], fb[i]);
  }
  return out;
}

namespace detail {

inline void check_maps(const FrameSequence& seq, const std::vector<FlickerMap>& maps) {
  seq.validate();
  const std::size_t expected = seq.size() - 1;
  if (maps.size() != expected) {
    throw InputError("expected " + std::to_string(expected) + " maps for " +
                     std::to_string(seq.size()) + " frames, got " + std::to_string(maps.size()));
  }
  for (const auto& m : maps) {
    if (m.width != seq[0].width() || m.height != seq[0].height()) {
      throw InputError("map " + std::to_string(m.pair_index) + " dimensions differ from frames");
    }
  }
}

}  // namespace detail

/// Applies the reconstruction to every pair whose map has at least one flag.
inline FrameSequence insert_frames(const FrameSequence& seq, const std::vector<FlickerMap>& maps,
                                   const ReduceOptions& opts = {}) {
  detail::check_maps(seq, maps);
  FrameSequence out;
  out.frames_per_second = seq.frames_per_second;

  if (opts.mode == ReduceMode::replace) {
    out.frames = seq.frames;
    for (std::size_t k = 0; k < maps.size(); ++k) {
      const auto& m = maps[k];
      for (std::size_t i = 0; i < m.flags.size(); ++i) {
        if (m.flags[i]) out.frames[k + 1][i] = mean_pixel(seq[k][i], seq[k + 1][i]);
      }
    }
    return out;
  }

  out.frames.reserve(seq.size() + maps.size());
  for (std::size_t k = 0; k < seq.size(); ++k) {
    out.frames.push_back(seq[k]);
    if (k < maps.size() && maps[k].any()) {
      out.frames.push_back(reconstruct_frame(seq[k], seq[k + 1], maps[k], opts.full_mean).frame);
    }
  }
  return out;
}

struct ReductionReport {
  double before_ratio = 0.0;
  double after_ratio = 0.0;
  double percent_reduction = 0.0;
  double max_step_before = 0.0;
  double max_step_after = 0.0;
  std::size_t frames_before = 0;
  std::size_t frames_after = 0;
  std::size_t flagged_pairs = 0;
};

inline double max_channel_step(const Rgb& a, const Rgb& b) noexcept {
  return std::max({std::abs(a.r - b.r), std::abs(a.g - b.g), std::abs(a.b - b.b)});
}

/// Re-runs detection on both sequences and compares the largest per-channel step
/// at originally flagged locations.
inline ReductionReport reduction_report(const FrameSequence& before, const FrameSequence& after,
                                        const DetectorConfig& cfg = {},
                                        ReduceMode mode = ReduceMode::insert) {
  const auto det_before = detect_sequence(before, cfg);
  ReductionReport r;
  r.frames_before = before.size();
  r.frames_after = after.size();
  r.before_ratio = det_before.report.aggregate_ratio;

  // Position of each original frame inside `after`.
  std::vector<std::size_t> pos(before.size());
  std::size_t inserted = 0;
  for (std::size_t k = 0; k < before.size(); ++k) {
    pos[k] = k + inserted;
    if (k + 1 < before.size() && det_before.maps[k].any()) {
      ++r.flagged_pairs;
      if (mode == ReduceMode::insert) ++inserted;
    }
  }
  if (pos.back() + 1 != after.size()) {
    throw InputError("after-sequence length " + std::to_string(after.size()) +
                     " does not match the reduction of the before-sequence");
  }

  r.after_ratio = after.size() >= 2 ? detect_sequence(after, cfg).report.aggregate_ratio : 0.0;
  r.percent_reduction =
      r.before_ratio > 0.0 ? 100.0 * (r.before_ratio - r.after_ratio) / r.before_ratio : 0.0;

  for (std::size_t k = 0; k + 1 < before.size(); ++k) {
    const auto& m = det_before.maps[k];
    if (!m.any()) continue;
    for (std::size_t i = 0; i < m.flags.size(); ++i) {
      if (!m.flags[i]) continue;
      r.max_step_before = std::max(r.max_step_before, max_channel_step(before[k][i], before[k + 1][i]));
      for (std::size_t f = pos[k]; f < pos[k + 1]; ++f) {
        r.max_step_after = std::max(r.max_step_after, max_channel_step(after[f][i], after[f + 1][i]));
      }
    }
  }
  return r;
}

}  // namespace flicker

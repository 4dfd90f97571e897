#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flicker/errors.hpp"
#include "flicker/palette.hpp"

namespace flicker {

/// Row-major grid of unit-interval RGB pixels.
class Frame {
 public:
  Frame() = default;

  Frame(std::size_t width, std::size_t height, Rgb fill = {})
      : width_(width), height_(height), pixels_(checked_area(width, height), fill) {
    if (!is_valid(fill)) throw InputError("frame fill color outside [0,1]");
  }

  Frame(std::size_t width, std::size_t height, std::vector<Rgb> pixels)
      : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (pixels_.size() != checked_area(width, height)) {
      throw InputError("frame pixel count " + std::to_string(pixels_.size()) +
                       " does not match " + std::to_string(width) + "x" + std::to_string(height));
    }
    for (const auto& p : pixels_) {
      if (!is_valid(p)) throw InputError("frame pixel outside [0,1]");
    }
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  Rgb& operator()(std::size_t x, std::size_t y) noexcept { return pixels_[y * width_ + x]; }
  const Rgb& operator()(std::size_t x, std::size_t y) const noexcept {
    return pixels_[y * width_ + x];
  }
  Rgb& operator[](std::size_t i) noexcept { return pixels_[i]; }
  const Rgb& operator[](std::size_t i) const noexcept { return pixels_[i]; }

  std::span<const Rgb> pixels() const noexcept { return pixels_; }
  std::span<Rgb> pixels() noexcept { return pixels_; }

  bool same_shape(const Frame& o) const noexcept {
    return width_ == o.width_ && height_ == o.height_;
  }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  static std::size_t checked_area(std::size_t w, std::size_t h) {
    if (w == 0 || h == 0) throw InputError("frame dimensions must be positive");
    return w * h;
  }

  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<Rgb> pixels_;
};

/// Ordered frames of uniform dimensions.
struct FrameSequence {
  std::vector<Frame> frames;
  std::optional<double> frames_per_second{};

  std::size_t size() const noexcept { return frames.size(); }
  const Frame& operator[](std::size_t i) const { return frames[i]; }

  /// Throws InputError if empty or if any frame's dimensions differ from the first.
  void validate() const {
    if (frames.empty()) throw InputError("sequence contains no frames");
    for (std::size_t i = 1; i < frames.size(); ++i) {
      if (!frames[i].same_shape(frames.front())) {
        throw InputError("frame " + std::to_string(i) + " is " + dims(frames[i]) +
                         ", expected " + dims(frames.front()));
      }
    }
  }

  static std::string dims(const Frame& f) {
    return std::to_string(f.width()) + "x" + std::to_string(f.height());
  }
};

}  // namespace flicker

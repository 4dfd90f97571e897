#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

#ifdef FLICKER_WITH_PNG
#include <png.h>
#endif

#include "flicker/detector.hpp"
#include "flicker/errors.hpp"
#include "flicker/frame.hpp"

namespace flicker {

namespace fs = std::filesystem;

/// round(channel * 255), ties away from zero, clamped to [0, 255].
inline std::uint8_t to_byte(double channel) noexcept {
  return static_cast<std::uint8_t>(std::lround(std::clamp(channel, 0.0, 1.0) * 255.0));
}

inline bool png_supported() noexcept {
#ifdef FLICKER_WITH_PNG
  return true;
#else
  return false;
#endif
}

// ---------------------------------------------------------------------------
// Binary PPM (P6, maxval 255)
// ---------------------------------------------------------------------------

namespace detail {

class HeaderCursor {
 public:
  explicit HeaderCursor(std::string_view data, std::size_t pos = 0) : data_(data), pos_(pos) {}

  std::size_t offset() const noexcept { return pos_; }

  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      const char c = data_[pos_];
      if (c == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else if (is_space(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::size_t read_uint(std::string_view field) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < data_.size() && data_[pos_] >= '0' && data_[pos_] <= '9') {
      value = value * 10 + static_cast<std::size_t>(data_[pos_] - '0');
      if (value > 1'000'000'000) throw FormatError(std::string(field) + " is too large", start);
      ++pos_;
    }
    if (pos_ == start) {
      if (pos_ >= data_.size()) throw FormatError("header truncated before " + std::string(field), pos_);
      throw FormatError("expected decimal " + std::string(field), pos_);
    }
    return value;
  }

  static bool is_space(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
  }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

inline std::string read_file_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace detail

/// Decodes a P6 image held in memory. Channel value = byte / 255.
inline Frame decode_ppm(std::string_view data) {
  if (data.size() < 2 || data[0] != 'P' || data[1] != '6') {
    throw FormatError("not a binary PPM (expected magic 'P6')", 0);
  }
  if (data.size() > 2 && !detail::HeaderCursor::is_space(data[2]) && data[2] != '#') {
    throw FormatError("expected whitespace after magic", 2);
  }
  detail::HeaderCursor cur(data, 2);
  const std::size_t width = cur.read_uint("width");
  const std::size_t height = cur.read_uint("height");
  if (width == 0 || height == 0) throw FormatError("image dimensions must be positive", cur.offset());
  cur.skip_space_and_comments();
  const std::size_t maxval_at = cur.offset();
  const std::size_t maxval = cur.read_uint("maxval");
  if (maxval != 255) {
    throw FormatError("unsupported maxval " + std::to_string(maxval) + " (only 255 is accepted)",
                      maxval_at);
  }
  const std::size_t ws = cur.offset();
  if (ws >= data.size() || !detail::HeaderCursor::is_space(data[ws])) {
    throw FormatError("expected single whitespace after maxval", ws);
  }
  const std::size_t payload = ws + 1;
  const std::size_t needed = width * height * 3;
  const std::size_t available = data.size() - payload;
  if (available < needed) {
    throw FormatError("truncated payload: expected " + std::to_string(needed) + " bytes, found " +
                          std::to_string(available),
                      payload + available);
  }
  std::vector<Rgb> pixels(width * height);
  const auto* p = reinterpret_cast<const unsigned char*>(data.data() + payload);
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    pixels[i] = rgb_from_bytes(p[3 * i], p[3 * i + 1], p[3 * i + 2]);
  }
  return Frame(width, height, std::move(pixels));
}

inline std::string encode_ppm(const Frame& frame) {
  std::string out = "P6\n" + std::to_string(frame.width()) + " " + std::to_string(frame.height()) +
                    "\n255\n";
  out.reserve(out.size() + frame.size() * 3);
  for (const auto& px : frame.pixels()) {
    out.push_back(static_cast<char>(to_byte(px.r)));
    out.push_back(static_cast<char>(to_byte(px.g)));
    out.push_back(static_cast<char>(to_byte(px.b)));
  }
  return out;
}

/// Binary PBM (P4); a set bit marks a flagged pixel.
inline std::string encode_pbm(const FlickerMap& map) {
  std::string out = "P4\n" + std::to_string(map.width) + " " + std::to_string(map.height) + "\n";
  const std::size_t row_bytes = (map.width + 7) / 8;
  for (std::size_t y = 0; y < map.height; ++y) {
    std::string row(row_bytes, '\0');
    for (std::size_t x = 0; x < map.width; ++x) {
      if (map(x, y)) row[x / 8] = static_cast<char>(row[x / 8] | (0x80 >> (x % 8)));
    }
    out += row;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

/// Writes through a temporary sibling and renames, so a failed write leaves no partial file.
inline void write_file_atomic(const fs::path& path, std::string_view bytes) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw InputError("write failed for " + path.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InputError("cannot rename into " + path.string());
  }
}

inline std::string lower_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

#ifdef FLICKER_WITH_PNG
inline Frame read_png(const fs::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
    throw FormatError(path.string() + ": " + image.message, 0);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<unsigned char> buf(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw FormatError(path.string() + ": " + msg, 0);
  }
  std::vector<Rgb> pixels(static_cast<std::size_t>(image.width) * image.height);
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    pixels[i] = rgb_from_bytes(buf[3 * i], buf[3 * i + 1], buf[3 * i + 2]);
  }
  return Frame(image.width, image.height, std::move(pixels));
}

inline void write_png(const Frame& frame, const fs::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(frame.width());
  image.height = static_cast<png_uint_32>(frame.height());
  image.format = PNG_FORMAT_RGB;
  std::vector<unsigned char> buf;
  buf.reserve(frame.size() * 3);
  for (const auto& px : frame.pixels()) {
    buf.push_back(to_byte(px.r));
    buf.push_back(to_byte(px.g));
    buf.push_back(to_byte(px.b));
  }
  const fs::path tmp = path.string() + ".tmp";
  if (!png_image_write_to_file(&image, tmp.string().c_str(), 0, buf.data(), 0, nullptr)) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw InputError("cannot write " + path.string() + ": " + image.message);
  }
  fs::rename(tmp, path);
}
#endif

/// PPM is always supported; PNG when built with libpng.
inline Frame read_frame(const fs::path& path) {
  const auto ext = lower_extension(path);
  if (ext == ".png") {
#ifdef FLICKER_WITH_PNG
    return read_png(path);
#else
    throw FormatError(path.string() + ": PNG support not compiled in", 0);
#endif
  }
  const std::string bytes = detail::read_file_bytes(path);
  try {
    return decode_ppm(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.message(), e.offset());
  }
}

inline void write_frame(const Frame& frame, const fs::path& path) {
  if (lower_extension(path) == ".png") {
#ifdef FLICKER_WITH_PNG
    write_png(frame, path);
    return;
#else
    throw InputError(path.string() + ": PNG support not compiled in");
#endif
  }
  write_file_atomic(path, encode_ppm(frame));
}

}  // namespace flicker

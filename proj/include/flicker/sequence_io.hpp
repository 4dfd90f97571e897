#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flicker/errors.hpp"
#include "flicker/frame.hpp"
#include "flicker/image_io.hpp"

namespace flicker {

// Locates a numbered frame sequence: every file in `directory` named
// prefix + <decimal index> + suffix.
struct SequenceLocator {
  fs::path directory;
  std::string prefix;
  std::string suffix;

  // Accepts either a directory (the single numbered group of .ppm/.pnm/.png
  // files inside it is used) or a file pattern whose index is written as
  // %d, %0Nd or a run of '#'.
  static SequenceLocator parse(const std::string& spec) {
    const fs::path p(spec);
    if (fs::is_directory(p)) return discover(p);

    const std::string name = p.filename().string();
    SequenceLocator loc;
    loc.directory = p.has_parent_path() ? p.parent_path() : fs::path(".");
    if (auto pct = name.find('%'); pct != std::string::npos) {
      auto d = name.find('d', pct);
      if (d == std::string::npos) throw InputError("bad index placeholder in pattern " + spec);
      for (auto k = pct + 1; k < d; ++k) {
        if (name[k] < '0' || name[k] > '9') throw InputError("bad index placeholder in pattern " + spec);
      }
      loc.prefix = name.substr(0, pct);
      loc.suffix = name.substr(d + 1);
    } else if (auto hash = name.find('#'); hash != std::string::npos) {
      auto end = name.find_first_not_of('#', hash);
      loc.prefix = name.substr(0, hash);
      loc.suffix = end == std::string::npos ? "" : name.substr(end);
    } else {
      throw InputError("pattern " + spec + " has no index placeholder (%d, %04d or ###)");
    }
    return loc;
  }

  /// Index encoded in `filename`, if it matches this locator.
  std::optional<std::size_t> match(const std::string& filename) const {
    if (filename.size() <= prefix.size() + suffix.size()) return std::nullopt;
    if (filename.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
    if (filename.compare(filename.size() - suffix.size(), suffix.size(), suffix) != 0) return std::nullopt;
    const std::string digits = filename.substr(prefix.size(), filename.size() - prefix.size() - suffix.size());
    if (digits.empty() || digits.size() > 18) return std::nullopt;
    if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(std::stoull(digits));
  }

  /// Matching files ordered by index. Throws on no match, duplicate index or gap.
  std::vector<std::pair<std::size_t, fs::path>> files() const {
    std::vector<std::pair<std::size_t, fs::path>> found;
    if (fs::is_directory(directory)) {
      for (const auto& entry : fs::directory_iterator(directory)) {
        if (!entry.is_regular_file()) continue;
        if (auto idx = match(entry.path().filename().string())) found.emplace_back(*idx, entry.path());
      }
    }
    if (found.empty()) {
      throw NotFoundError("no frames match " + (directory / (prefix + "<index>" + suffix)).string());
    }
    std::sort(found.begin(), found.end());
    for (std::size_t k = 1; k < found.size(); ++k) {
      if (found[k].first == found[k - 1].first) {
        throw InputError("duplicate frame index " + std::to_string(found[k].first) + ": " +
                         found[k - 1].second.string() + " and " + found[k].second.string());
      }
      if (found[k].first != found[k - 1].first + 1) {
        throw InputError("gap in frame sequence: index " + std::to_string(found[k - 1].first + 1) +
                         " missing before " + found[k].second.string());
      }
    }
    return found;
  }

 private:
  static bool is_image_ext(const std::string& ext) {
    return ext == ".ppm" || ext == ".pnm" || ext == ".png";
  }

  static SequenceLocator discover(const fs::path& dir) {
    std::vector<SequenceLocator> groups;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      const auto& path = entry.path();
      if (!is_image_ext(lower_extension(path))) continue;
      const std::string stem = path.stem().string();
      const auto digits_at = stem.find_last_not_of("0123456789") + 1;  // npos + 1 == 0
      if (digits_at == stem.size()) continue;
      SequenceLocator g{dir, stem.substr(0, digits_at), path.extension().string()};
      if (std::none_of(groups.begin(), groups.end(), [&](const SequenceLocator& o) {
            return o.prefix == g.prefix && o.suffix == g.suffix;
          })) {
        groups.push_back(std::move(g));
      }
    }
    if (groups.empty()) throw NotFoundError("no numbered frames in directory " + dir.string());
    if (groups.size() > 1) {
      throw InputError("directory " + dir.string() +
                       " holds more than one numbered sequence; pass a pattern such as " +
                       (dir / (groups[0].prefix + "%d" + groups[0].suffix)).string());
    }
    return groups.front();
  }
};

/// Loads every frame in index order and enforces uniform dimensions.
inline FrameSequence load_sequence(const SequenceLocator& loc) {
  FrameSequence seq;
  for (const auto& [idx, path] : loc.files()) {
    Frame f = read_frame(path);
    if (!seq.frames.empty() && !f.same_shape(seq.frames.front())) {
      throw InputError(path.string() + " is " + FrameSequence::dims(f) + ", expected " +
                       FrameSequence::dims(seq.frames.front()));
    }
    seq.frames.push_back(std::move(f));
  }
  return seq;
}

inline FrameSequence load_sequence(const std::string& spec) {
  return load_sequence(SequenceLocator::parse(spec));
}

/// Zero-padded file name, e.g. frame_0007.ppm.
inline std::string numbered_name(const std::string& prefix, std::size_t index,
                                 const std::string& ext, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*zu", digits, index);
  return prefix + buf + ext;
}

/// Writes frames as <dir>/<prefix>NNNN<ext>; returns the written paths.
inline std::vector<fs::path> write_sequence(const FrameSequence& seq, const fs::path& dir,
                                            const std::string& prefix = "frame_",
                                            const std::string& ext = ".ppm") {
  fs::create_directories(dir);
  std::vector<fs::path> paths;
  paths.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    paths.push_back(dir / numbered_name(prefix, i, ext));
    write_frame(seq[i], paths.back());
  }
  return paths;
}

}  // namespace flicker

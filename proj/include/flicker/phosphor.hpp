#pragma once

#include <cmath>
#include <cstddef>
#include <istream>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "flicker/errors.hpp"

namespace flicker {

/// A CRT phosphor and its luminance decay (persistence) time constant in seconds.
struct Phosphor {
  std::string name;
  double alpha = 0.0;
};

/// Display extent D and viewing distance V, both in millimeters.
struct DisplayGeometry {
  double extent_mm = 0.0;
  double viewing_distance_mm = 500.0;
};

/// Refresh rates f_min..f_max (inclusive) in hertz.
struct RefreshSweep {
  double f_min = 30.0;
  double f_max = 120.0;
  double step = 1.0;

  void validate() const {
    if (!(f_min >= 0.0) || !(f_max >= f_min) || !(step > 0.0) || !std::isfinite(f_max) ||
        !std::isfinite(step)) {
      throw InputError("refresh sweep requires 0 <= f_min <= f_max and step > 0");
    }
  }

  std::vector<double> rates() const {
    validate();
    std::vector<double> out;
    // Indexing from f_min avoids accumulating step error; the small slack keeps f_max.
    const double span = (f_max - f_min) / step;
    const auto n = static_cast<std::size_t>(std::floor(span + 1e-9));
    out.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) out.push_back(f_min + static_cast<double>(k) * step);
    return out;
  }
};

/// Header plus rows of numbers; written with 6 significant digits.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Fundamental-frequency modulation amplitude: 2 / sqrt(1 + (2*pi*f*alpha)^2).
inline double amp_coeff(double alpha, double f) {
  if (!(alpha >= 0.0) || !(f >= 0.0) || !std::isfinite(alpha) || !std::isfinite(f)) {
    throw InputError("amp_coeff requires finite alpha >= 0 and f >= 0");
  }
  const double alpha_omega = 2.0 * std::numbers::pi * f * alpha;
  return 2.0 / std::sqrt(1.0 + alpha_omega * alpha_omega);
}

inline double visual_angle_radians(const DisplayGeometry& g) {
  if (!(g.viewing_distance_mm > 0.0)) throw InputError("viewing distance must be positive");
  if (!(g.extent_mm >= 0.0)) throw InputError("display extent must be non-negative");
  return 2.0 * std::atan(g.extent_mm / (2.0 * g.viewing_distance_mm));
}

/// 2*atan(D / 2V) in degrees.
inline double visual_angle(const DisplayGeometry& g) {
  return visual_angle_radians(g) * 180.0 / std::numbers::pi;
}

inline double flicker_rate(double regression, double decay_time) {
  if (!(decay_time > 0.0)) throw SingularityError("flicker_rate: decay time must be positive");
  return regression / decay_time;
}

inline CsvTable emit_amp_curves(const std::vector<Phosphor>& phosphors, const RefreshSweep& sweep) {
  if (phosphors.empty()) throw InputError("emit_amp_curves: no phosphors");
  for (const auto& p : phosphors) {
    if (!(p.alpha >= 0.0)) throw InputError("phosphor " + p.name + " has negative alpha");
  }
  CsvTable t;
  t.header.push_back("refresh_hz");
  for (const auto& p : phosphors) t.header.push_back(p.name);
  for (double f : sweep.rates()) {
    std::vector<double> row{f};
    for (const auto& p : phosphors) row.push_back(amp_coeff(p.alpha, f));
    t.rows.push_back(std::move(row));
  }
  return t;
}

struct Resolution {
  std::size_t width = 0;
  std::size_t height = 0;
};

inline constexpr double kDefaultPixelPitchMm = 0.25;
inline constexpr double kDefaultViewingDistanceMm = 500.0;

/// Display extent D is the pixel diagonal times the pixel pitch.
inline CsvTable emit_visual_angle_curve(const std::vector<Resolution>& resolutions,
                                        double pitch_mm = kDefaultPixelPitchMm,
                                        double viewing_distance_mm = kDefaultViewingDistanceMm) {
  if (!(pitch_mm > 0.0) || !std::isfinite(pitch_mm)) throw InputError("pixel pitch must be positive");
  CsvTable t;
  t.header = {"width_px", "height_px", "diagonal_px", "extent_mm", "visual_angle_deg"};
  for (const auto& r : resolutions) {
    const double diag = std::hypot(static_cast<double>(r.width), static_cast<double>(r.height));
    const double extent = diag * pitch_mm;
    t.rows.push_back({static_cast<double>(r.width), static_cast<double>(r.height), diag, extent,
                      visual_angle({extent, viewing_distance_mm})});
  }
  return t;
}

// Placeholder decay constants. Only their ordering DP104 < P31 < D65_P4 is
// meaningful; no measured values are implied.
inline std::vector<Phosphor> default_phosphors() {
  return {{"DP104", 0.0002}, {"P31", 0.0005}, {"D65_P4", 0.0012}};
}

// Reads `name = alpha_seconds` lines. Blank lines and lines starting with '#'
// are skipped; a trailing '#' comment is allowed. Duplicate names are rejected.
inline std::vector<Phosphor> parse_phosphor_config(std::istream& in) {
  std::vector<Phosphor> out;
  std::string line;
  std::size_t line_no = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string{};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "phosphor config line " + std::to_string(line_no);
    if (eq == std::string::npos) throw InputError(where + ": expected name = alpha");
    std::string name = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (name.empty()) throw InputError(where + ": empty name");
    double alpha = 0.0;
    try {
      std::size_t used = 0;
      alpha = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw InputError(where + ": invalid alpha '" + value + "'");
    }
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw InputError(where + ": alpha must be >= 0");
    for (const auto& p : out) {
      if (p.name == name) throw InputError(where + ": duplicate phosphor " + name);
    }
    out.push_back({std::move(name), alpha});
  }
  if (out.empty()) throw InputError("phosphor config defines no phosphors");
  return out;
}

}  // namespace flicker

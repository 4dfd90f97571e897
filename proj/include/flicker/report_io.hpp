#pragma once

#include <cstddef>
#include <cstdio>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "flicker/detector.hpp"
#include "flicker/errors.hpp"
#include "flicker/image_io.hpp"
#include "flicker/palette.hpp"
#include "flicker/phosphor.hpp"
#include "flicker/reducer.hpp"
#include "flicker/stochastic.hpp"
#include "flicker/synth.hpp"

namespace flicker {

using ordered_json = nlohmann::ordered_json;

enum class ReportFormat { json, csv };

/// "%.6g" formatting used for every CSV number.
inline std::string format_g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Detection report
// ---------------------------------------------------------------------------

inline ordered_json to_json(const FlickerReport& r, bool with_locations) {
  ordered_json pairs = ordered_json::array();
  for (const auto& p : r.pairs) {
    ordered_json j;
    j["index"] = p.index;
    j["flagged"] = p.flagged;
    j["total"] = p.total;
    j["ratio"] = p.ratio;
    if (with_locations) j["locations"] = p.locations;
    pairs.push_back(std::move(j));
  }
  ordered_json out;
  out["pairs"] = std::move(pairs);
  out["aggregate_ratio"] = r.aggregate_ratio;
  return out;
}

inline std::string to_csv(const FlickerReport& r) {
  std::string out = "index,flagged,total,ratio\n";
  for (const auto& p : r.pairs) {
    out += std::to_string(p.index) + "," + std::to_string(p.flagged) + "," +
           std::to_string(p.total) + "," + format_g6(p.ratio) + "\n";
  }
  out += "aggregate,,," + format_g6(r.aggregate_ratio) + "\n";
  return out;
}

namespace detail {

inline ordered_json parse_json_file(const fs::path& path) {
  const std::string text = read_file_bytes(path);
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path.string() + ": invalid JSON", e.byte);
  }
}

template <typename T>
T field(const ordered_json& j, const char* key, const fs::path& path) {
  if (!j.contains(key)) throw FormatError(path.string() + ": missing field '" + key + "'", 0);
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError(path.string() + ": field '" + std::string(key) + "' has the wrong type", 0);
  }
}

}  // namespace detail

inline FlickerReport flicker_report_from_json(const ordered_json& j, const fs::path& origin = {}) {
  FlickerReport r;
  if (!j.is_object()) throw FormatError(origin.string() + ": report must be a JSON object", 0);
  const auto pairs = detail::field<ordered_json>(j, "pairs", origin);
  if (!pairs.is_array()) throw FormatError(origin.string() + ": 'pairs' must be an array", 0);
  for (const auto& p : pairs) {
    PairReport pr;
    pr.index = detail::field<std::size_t>(p, "index", origin);
    pr.flagged = detail::field<std::size_t>(p, "flagged", origin);
    pr.total = detail::field<std::size_t>(p, "total", origin);
    pr.ratio = detail::field<double>(p, "ratio", origin);
    if (p.contains("locations")) pr.locations = detail::field<std::vector<std::size_t>>(p, "locations", origin);
    r.pairs.push_back(std::move(pr));
  }
  r.aggregate_ratio = detail::field<double>(j, "aggregate_ratio", origin);
  return r;
}

inline void write_report(const FlickerReport& r, const fs::path& path,
                         ReportFormat format = ReportFormat::json, bool with_locations = false) {
  write_file_atomic(path, format == ReportFormat::json ? to_json(r, with_locations).dump(2) + "\n"
                                                       : to_csv(r));
}

inline FlickerReport read_flicker_report(const fs::path& path) {
  return flicker_report_from_json(detail::parse_json_file(path), path);
}

// ---------------------------------------------------------------------------
// Reduction report
// ---------------------------------------------------------------------------

inline ordered_json to_json(const ReductionReport& r) {
  ordered_json j;
  j["before_ratio"] = r.before_ratio;
  j["after_ratio"] = r.after_ratio;
  j["percent_reduction"] = r.percent_reduction;
  j["max_step_before"] = r.max_step_before;
  j["max_step_after"] = r.max_step_after;
  j["frames_before"] = r.frames_before;
  j["frames_after"] = r.frames_after;
  j["flagged_pairs"] = r.flagged_pairs;
  return j;
}

inline std::string to_csv(const ReductionReport& r) {
  std::string out = "metric,value\n";
  out += "before_ratio," + format_g6(r.before_ratio) + "\n";
  out += "after_ratio," + format_g6(r.after_ratio) + "\n";
  out += "percent_reduction," + format_g6(r.percent_reduction) + "\n";
  out += "max_step_before," + format_g6(r.max_step_before) + "\n";
  out += "max_step_after," + format_g6(r.max_step_after) + "\n";
  out += "frames_before," + std::to_string(r.frames_before) + "\n";
  out += "frames_after," + std::to_string(r.frames_after) + "\n";
  out += "flagged_pairs," + std::to_string(r.flagged_pairs) + "\n";
  return out;
}

inline void write_report(const ReductionReport& r, const fs::path& path,
                         ReportFormat format = ReportFormat::json) {
  write_file_atomic(path, format == ReportFormat::json ? to_json(r).dump(2) + "\n" : to_csv(r));
}

inline ReductionReport read_reduction_report(const fs::path& path) {
  const auto j = detail::parse_json_file(path);
  ReductionReport r;
  r.before_ratio = detail::field<double>(j, "before_ratio", path);
  r.after_ratio = detail::field<double>(j, "after_ratio", path);
  r.percent_reduction = detail::field<double>(j, "percent_reduction", path);
  r.max_step_before = detail::field<double>(j, "max_step_before", path);
  r.max_step_after = detail::field<double>(j, "max_step_after", path);
  r.frames_before = detail::field<std::size_t>(j, "frames_before", path);
  r.frames_after = detail::field<std::size_t>(j, "frames_after", path);
  r.flagged_pairs = detail::field<std::size_t>(j, "flagged_pairs", path);
  return r;
}

// ---------------------------------------------------------------------------
// Synthetic ground truth
// ---------------------------------------------------------------------------

inline ordered_json ground_truth_json(const InjectionSpec& spec, const SyntheticSequence& s) {
  ordered_json j;
  j["width"] = spec.width;
  j["height"] = spec.height;
  j["frame_count"] = spec.frame_count;
  j["fraction"] = spec.fraction;
  j["seed"] = spec.seed;
  j["base_color"] = color_name(spec.base_color);
  j["flicker_color"] = color_name(spec.flicker_color);
  j["injected"] = s.locations.size();
  j["expected_ratio"] = static_cast<double>(s.locations.size()) /
                        static_cast<double>(spec.width * spec.height);
  j["pairs"] = s.ground_truth.size();
  j["locations"] = s.locations;
  return j;
}

// ---------------------------------------------------------------------------
// CSV tables
// ---------------------------------------------------------------------------

inline std::string to_csv(const CsvTable& t) {
  std::string out;
  for (std::size_t k = 0; k < t.header.size(); ++k) out += (k ? "," : "") + t.header[k];
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out += (k ? "," : "") + format_g6(row[k]);
    out += "\n";
  }
  return out;
}

inline void write_csv(const CsvTable& t, const fs::path& path) { write_file_atomic(path, to_csv(t)); }

namespace detail {

inline std::string color_header(std::string_view corner) {
  std::string out(corner);
  for (auto c : kAllColors) out += "," + std::string(color_name(c));
  return out;
}

inline std::string matrix_rows(const Matrix8& m) {
  std::string out;
  for (auto c : kAllColors) {
    out += color_name(c);
    for (double v : m[index_of(c)]) out += "," + format_g6(v);
    out += "\n";
  }
  return out;
}

}  // namespace detail

/// CSV text of one 8x8 table with color-name header row and column.
inline std::string matrix_csv(const Matrix8& m, std::string_view corner = "") {
  return detail::color_header(corner) + "\n" + detail::matrix_rows(m);
}

/// Column-stochastic table followed by its per-column Sum/Mean/Variance/S.Dev rows.
inline std::string col_stochastic_csv(const StochasticTables& t) {
  std::string out = matrix_csv(t.col_stochastic);
  const std::pair<const char*, double Stats::*> rows[] = {
      {"Sum", &Stats::sum}, {"Mean", &Stats::mean}, {"Variance", &Stats::variance},
      {"S.Dev", &Stats::stddev}};
  for (const auto& [label, member] : rows) {
    out += label;
    for (const auto& s : t.col_stats) out += "," + format_g6(s.*member);
    out += "\n";
  }
  return out;
}

/// Column-stochastic rows with per-row Sum/Mean/Var./S.Dev. columns appended.
inline std::string row_stats_csv(const StochasticTables& t) {
  std::string out = detail::color_header("") + ",Sum,Mean,Var.,S.Dev.\n";
  for (auto c : kAllColors) {
    const auto i = index_of(c);
    out += color_name(c);
    for (double v : t.col_stochastic[i]) out += "," + format_g6(v);
    const auto& s = t.row_stats[i];
    out += "," + format_g6(s.sum) + "," + format_g6(s.mean) + "," + format_g6(s.variance) + "," +
           format_g6(s.stddev) + "\n";
  }
  return out;
}

/// File name -> CSV contents for every table.
inline std::map<std::string, std::string> table_files(const StochasticTables& t) {
  return {
      {"distance.csv", matrix_csv(t.distance)},
      {"col_stochastic.csv", col_stochastic_csv(t)},
      {"z_col.csv", matrix_csv(t.z_col)},
      {"prob_col.csv", matrix_csv(t.prob_col)},
      {"row_stats.csv", row_stats_csv(t)},
      {"prob_row.csv", matrix_csv(t.prob_row)},
  };
}

inline std::vector<fs::path> write_tables(const StochasticTables& t, const fs::path& dir) {
  fs::create_directories(dir);
  std::vector<fs::path> written;
  for (const auto& [name, text] : table_files(t)) {
    written.push_back(dir / name);
    write_file_atomic(written.back(), text);
  }
  return written;
}

}  // namespace flicker

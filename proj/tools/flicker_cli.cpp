// flicker: command-line front end for detection, reduction, phosphor curves,
// synthetic sequences and the probability tables.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "flicker/flicker.hpp"

namespace {

using namespace flicker;

struct DetectArgs {
  std::string input;
  double threshold = kDefaultThreshold;
  std::string source = "col_stochastic";
  std::string cdf = "precision";
  bool swap_lookup = false;
  unsigned workers = 1;
  std::string report;
  std::string format = "json";
  bool locations = false;
  std::string maps_dir;
};

struct ReduceArgs {
  std::string input;
  std::string out_dir;
  std::string mode = "insert";
  bool full_mean = false;
  std::string report;
  std::string format = "json";
  std::string ext = ".ppm";
};

struct PhosphorArgs {
  std::string sweep = "30:120:1";
  std::string config;
  std::string out = "curves.csv";
  std::string resolutions = "640x480,800x600,1024x768,1280x1024,1600x1200";
  double pitch = kDefaultPixelPitchMm;
  double distance = kDefaultViewingDistanceMm;
  std::string angle_out = "angles.csv";
};

struct SynthArgs {
  std::string size = "100x100";
  std::size_t frames = 10;
  double fraction = 0.06;
  std::string colors = "black:white";
  std::uint32_t seed = 42;
  std::string out_dir;
  std::string ext = ".ppm";
};

struct TablesArgs {
  std::string out_dir = ".";
  std::string cdf = "precision";
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError("invalid " + what + ": '" + s + "'");
}

Resolution parse_resolution(const std::string& s) {
  const auto parts = split(s, 'x');
  if (parts.size() != 2) throw InputError("resolution must be WxH, got '" + s + "'");
  const double w = parse_double(parts[0], "width");
  const double h = parse_double(parts[1], "height");
  if (w < 0 || h < 0) throw InputError("resolution must be non-negative: '" + s + "'");
  return {static_cast<std::size_t>(w), static_cast<std::size_t>(h)};
}

RefreshSweep parse_sweep(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw InputError("sweep must be min:max:step, got '" + s + "'");
  RefreshSweep sweep{parse_double(parts[0], "sweep min"), parse_double(parts[1], "sweep max"),
                     parse_double(parts[2], "sweep step")};
  sweep.validate();
  return sweep;
}

DetectorConfig detector_config(double threshold, const std::string& source, const std::string& cdf,
                               bool swap, unsigned workers) {
  DetectorConfig cfg;
  cfg.threshold = threshold;
  auto src = source_from_string(source);
  if (!src) throw InputError("unknown probability source '" + source + "'");
  cfg.source = *src;
  auto mode = cdf_mode_from_string(cdf);
  if (!mode) throw InputError("unknown cdf mode '" + cdf + "'");
  cfg.mode = *mode;
  cfg.swap_lookup = swap;
  cfg.workers = workers == 0 ? 1 : workers;
  cfg.validate();
  return cfg;
}

ReportFormat report_format(const std::string& f) {
  if (f == "json") return ReportFormat::json;
  if (f == "csv") return ReportFormat::csv;
  throw InputError("unknown report format '" + f + "'");
}

int run_detect(const DetectArgs& a) {
  const auto cfg = detector_config(a.threshold, a.source, a.cdf, a.swap_lookup, a.workers);
  const auto seq = load_sequence(a.input);
  const auto result = detect_sequence(seq, cfg);
  write_report(result.report, a.report, report_format(a.format), a.locations);
  if (!a.maps_dir.empty()) {
    fs::create_directories(a.maps_dir);
    for (const auto& m : result.maps) {
      write_file_atomic(fs::path(a.maps_dir) / numbered_name("map_", m.pair_index, ".pbm"),
                        encode_pbm(m));
    }
  }
  std::cout << "pairs: " << result.report.pairs.size()
            << "  aggregate_ratio: " << format_g6(result.report.aggregate_ratio) << "\n";
  return 0;
}

int run_reduce(const ReduceArgs& a, const DetectorConfig& cfg) {
  auto mode = reduce_mode_from_string(a.mode);
  if (!mode) throw InputError("unknown reduce mode '" + a.mode + "'");
  const auto before = load_sequence(a.input);
  const auto det = detect_sequence(before, cfg);
  const auto after = insert_frames(before, det.maps, {*mode, a.full_mean});
  const auto report = reduction_report(before, after, cfg, *mode);
  write_sequence(after, a.out_dir, "frame_", a.ext);
  write_report(report, a.report, report_format(a.format));
  std::cout << "frames: " << before.size() << " -> " << after.size()
            << "  ratio: " << format_g6(report.before_ratio) << " -> "
            << format_g6(report.after_ratio) << "\n";
  return 0;
}

int run_phosphor(const PhosphorArgs& a) {
  std::vector<Phosphor> phosphors = default_phosphors();
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw InputError("cannot open phosphor config " + a.config);
    phosphors = parse_phosphor_config(in);
  }
  write_csv(emit_amp_curves(phosphors, parse_sweep(a.sweep)), a.out);
  return 0;
}

int run_angle(const PhosphorArgs& a) {
  std::vector<Resolution> res;
  for (const auto& r : split(a.resolutions, ',')) res.push_back(parse_resolution(r));
  write_csv(emit_visual_angle_curve(res, a.pitch, a.distance), a.angle_out);
  return 0;
}

int run_synth(const SynthArgs& a) {
  InjectionSpec spec;
  const auto dims = parse_resolution(a.size);
  spec.width = dims.width;
  spec.height = dims.height;
  spec.frame_count = a.frames;
  spec.fraction = a.fraction;
  spec.seed = a.seed;
  const auto colors = split(a.colors, ':');
  if (colors.size() != 2) throw InputError("colors must be base:flicker, got '" + a.colors + "'");
  auto base = color_from_name(colors[0]);
  auto flick = color_from_name(colors[1]);
  if (!base || !flick) throw InputError("unknown color in '" + a.colors + "'");
  spec.base_color = *base;
  spec.flicker_color = *flick;

  const auto synth = generate(spec);
  write_sequence(synth.sequence, a.out_dir, "frame_", a.ext);
  write_file_atomic(fs::path(a.out_dir) / "ground_truth.json",
                    ground_truth_json(spec, synth).dump(2) + "\n");
  std::cout << "frames: " << spec.frame_count << "  injected: " << synth.locations.size() << "\n";
  return 0;
}

int run_tables(const TablesArgs& a) {
  auto mode = cdf_mode_from_string(a.cdf);
  if (!mode) throw InputError("unknown cdf mode '" + a.cdf + "'");
  for (const auto& p : write_tables(tables(*mode), a.out_dir)) std::cout << p.string() << "\n";
  return 0;
}

nlohmann::ordered_json describe(const CLI::App& app) {
  nlohmann::ordered_json j;
  j["name"] = app.get_name();
  j["description"] = app.get_description();
  auto opts = nlohmann::ordered_json::array();
  for (const CLI::Option* o : app.get_options()) {
    nlohmann::ordered_json oj;
    oj["name"] = o->get_name();
    oj["description"] = o->get_description();
    oj["required"] = o->get_required();
    oj["flag"] = o->get_expected_min() == 0;
    if (!o->get_default_str().empty()) oj["default"] = o->get_default_str();
    opts.push_back(std::move(oj));
  }
  j["options"] = std::move(opts);
  auto subs = nlohmann::ordered_json::array();
  for (const CLI::App* s : app.get_subcommands([](const CLI::App*) { return true; })) {
    subs.push_back(describe(*s));
  }
  j["subcommands"] = std::move(subs);
  return j;
}

double env_threshold() {
  if (const char* v = std::getenv("FLICKER_THRESHOLD"); v && *v) {
    return parse_double(v, "FLICKER_THRESHOLD");
  }
  return kDefaultThreshold;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inter-frame flicker detection, reduction and CRT phosphor modeling", "flicker"};
  app.set_version_flag("--version", FLICKER_VERSION_STRING);
  bool help_json = false;
  app.add_flag("--help-json", help_json, "Print the command/option tree as JSON and exit");

  DetectArgs detect;
  ReduceArgs reduce;
  PhosphorArgs phos;
  SynthArgs synth;
  TablesArgs tabs;
  double reduce_threshold = kDefaultThreshold;
  std::string reduce_source = "col_stochastic";
  std::string reduce_cdf = "precision";

  try {
    detect.threshold = reduce_threshold = env_threshold();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kInputError);
  }

  auto* cmd_detect = app.add_subcommand("detect", "Flag flickering pixels between consecutive frames");
  cmd_detect->add_option("--in", detect.input, "Frame directory or pattern (e.g. dir/f%04d.ppm)")->required();
  cmd_detect->add_option("--threshold", detect.threshold, "Probability threshold (flag when >=)")
      ->capture_default_str();
  cmd_detect->add_option("--source", detect.source, "col_stochastic | prob_col | prob_row")
      ->capture_default_str();
  cmd_detect->add_option("--cdf", detect.cdf, "precision | paper_parity")->capture_default_str();
  cmd_detect->add_flag("--swap-lookup", detect.swap_lookup, "Later frame selects the table row");
  cmd_detect->add_option("--workers", detect.workers, "Worker threads over frame pairs")
      ->capture_default_str();
  cmd_detect->add_option("--report", detect.report, "Report output path")->required();
  cmd_detect->add_option("--format", detect.format, "json | csv")->capture_default_str();
  cmd_detect->add_flag("--locations", detect.locations, "Include flagged pixel indices in the report");
  cmd_detect->add_option("--maps", detect.maps_dir, "Directory for per-pair PBM masks");

  auto* cmd_reduce = app.add_subcommand("reduce", "Insert mean-reconstructed frames between flagged pairs");
  cmd_reduce->add_option("--in", reduce.input, "Frame directory or pattern")->required();
  cmd_reduce->add_option("--out", reduce.out_dir, "Output directory for numbered frames")->required();
  cmd_reduce->add_option("--mode", reduce.mode, "insert | replace")->capture_default_str();
  cmd_reduce->add_flag("--full-mean", reduce.full_mean, "Average every pixel of inserted frames");
  cmd_reduce->add_option("--report", reduce.report, "Reduction report path")->required();
  cmd_reduce->add_option("--format", reduce.format, "json | csv")->capture_default_str();
  cmd_reduce->add_option("--ext", reduce.ext, "Output frame extension (.ppm or .png)")->capture_default_str();
  cmd_reduce->add_option("--threshold", reduce_threshold, "Probability threshold")->capture_default_str();
  cmd_reduce->add_option("--source", reduce_source, "col_stochastic | prob_col | prob_row")
      ->capture_default_str();
  cmd_reduce->add_option("--cdf", reduce_cdf, "precision | paper_parity")->capture_default_str();

  auto* cmd_phos = app.add_subcommand("phosphor", "Amplitude-coefficient curves over a refresh sweep");
  cmd_phos->add_option("--sweep", phos.sweep, "min:max:step in Hz")->capture_default_str();
  cmd_phos->add_option("--config", phos.config, "Phosphor file of 'name = alpha_seconds' lines");
  cmd_phos->add_option("--out", phos.out, "CSV output path")->capture_default_str();
  auto* cmd_angle = cmd_phos->add_subcommand("angle", "Visual angle versus monitor resolution");
  cmd_angle->add_option("--resolutions", phos.resolutions, "Comma-separated WxH list")
      ->capture_default_str();
  cmd_angle->add_option("--pitch", phos.pitch, "Pixel pitch, mm/pixel")->capture_default_str();
  cmd_angle->add_option("--distance", phos.distance, "Viewing distance, mm")->capture_default_str();
  cmd_angle->add_option("--out", phos.angle_out, "CSV output path")->capture_default_str();

  auto* cmd_synth = app.add_subcommand("synth", "Generate a sequence with flicker at known pixels");
  cmd_synth->add_option("--size", synth.size, "WxH")->capture_default_str();
  cmd_synth->add_option("--frames", synth.frames, "Frame count")->capture_default_str();
  cmd_synth->add_option("--fraction", synth.fraction, "Fraction of pixels flickering")->capture_default_str();
  cmd_synth->add_option("--colors", synth.colors, "base:flicker color names")->capture_default_str();
  cmd_synth->add_option("--seed", synth.seed, "Location picker seed")->capture_default_str();
  cmd_synth->add_option("--out", synth.out_dir, "Output directory")->required();
  cmd_synth->add_option("--ext", synth.ext, "Frame extension (.ppm or .png)")->capture_default_str();

  auto* cmd_tables = app.add_subcommand("tables", "Write the color-pair probability tables as CSV");
  cmd_tables->add_option("--out", tabs.out_dir, "Output directory")->capture_default_str();
  cmd_tables->add_option("--cdf", tabs.cdf, "precision | paper_parity")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (help_json) {
      std::cout << describe(app).dump(2) << "\n";
      return 0;
    }
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::kInputError);
  }
  if (help_json) {
    std::cout << describe(app).dump(2) << "\n";
    return 0;
  }

  try {
    if (*cmd_detect) return run_detect(detect);
    if (*cmd_reduce) {
      return run_reduce(reduce, detector_config(reduce_threshold, reduce_source, reduce_cdf, false, 1));
    }
    if (*cmd_angle) return run_angle(phos);
    if (*cmd_phos) return run_phosphor(phos);
    if (*cmd_synth) return run_synth(synth);
    if (*cmd_tables) return run_tables(tabs);
    std::cout << app.help();
    return static_cast<int>(ExitCode::kInputError);
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kFormatError);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kInputError);
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kInputError);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kInvariantViolation);
  }
}

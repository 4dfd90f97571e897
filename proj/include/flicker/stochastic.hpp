#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "flicker/errors.hpp"
#include "flicker/palette.hpp"

namespace flicker {

/// How the standard normal CDF is evaluated.
enum class CdfMode {
  precision,     ///< continuous CDF
  paper_parity,  ///< z rounded to 2 decimals first, as with a printed z-table
};

/// Which table the detector reads a color-pair probability from.
enum class ProbabilitySource {
  col_stochastic,
  prob_col,
  prob_row,
};

inline std::string_view to_string(CdfMode m) {
  return m == CdfMode::precision ? "precision" : "paper_parity";
}

inline std::string_view to_string(ProbabilitySource s) {
  switch (s) {
    case ProbabilitySource::col_stochastic: return "col_stochastic";
    case ProbabilitySource::prob_col: return "prob_col";
    case ProbabilitySource::prob_row: return "prob_row";
  }
  return "col_stochastic";
}

inline std::optional<CdfMode> cdf_mode_from_string(std::string_view s) {
  if (s == "precision") return CdfMode::precision;
  if (s == "paper_parity") return CdfMode::paper_parity;
  return std::nullopt;
}

inline std::optional<ProbabilitySource> source_from_string(std::string_view s) {
  if (s == "col_stochastic") return ProbabilitySource::col_stochastic;
  if (s == "prob_col") return ProbabilitySource::prob_col;
  if (s == "prob_row") return ProbabilitySource::prob_row;
  return std::nullopt;
}

/// Population statistics (variance divides by N) of one row or column.
struct Stats {
  double sum = 0.0;
  double mean = 0.0;
  double variance = 0.0;
  double stddev = 0.0;
};

template <std::size_t N>
using StatsVector = std::array<Stats, N>;

namespace detail {

template <std::size_t N, typename Get>
Stats line_stats(Get get) {
  Stats s;
  for (std::size_t k = 0; k < N; ++k) s.sum += get(k);
  s.mean = s.sum / static_cast<double>(N);
  double ss = 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    const double d = get(k) - s.mean;
    ss += d * d;
  }
  s.variance = ss / static_cast<double>(N);
  s.stddev = std::sqrt(s.variance);
  return s;
}

}  // namespace detail

template <std::size_t N>
StatsVector<N> column_stats(const SquareMatrix<N>& m) {
  StatsVector<N> out;
  for (std::size_t j = 0; j < N; ++j) {
    out[j] = detail::line_stats<N>([&](std::size_t i) { return m[i][j]; });
  }
  return out;
}

template <std::size_t N>
StatsVector<N> row_stats(const SquareMatrix<N>& m) {
  StatsVector<N> out;
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = detail::line_stats<N>([&](std::size_t j) { return m[i][j]; });
  }
  return out;
}

/// Divides every entry by its column sum. Throws DegenerateInputError on a zero-sum column.
template <std::size_t N>
SquareMatrix<N> column_normalize(const SquareMatrix<N>& d) {
  SquareMatrix<N> out{};
  for (std::size_t j = 0; j < N; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < N; ++i) sum += d[i][j];
    if (!(sum > 0.0)) {
      throw DegenerateInputError("column " + std::to_string(j) + " has non-positive sum");
    }
    for (std::size_t i = 0; i < N; ++i) out[i][j] = d[i][j] / sum;
  }
  return out;
}

template <std::size_t N>
SquareMatrix<N> z_score_columns(const SquareMatrix<N>& m) {
  const auto stats = column_stats(m);
  SquareMatrix<N> z{};
  for (std::size_t j = 0; j < N; ++j) {
    if (!(stats[j].stddev > 0.0)) {
      throw DegenerateInputError("column " + std::to_string(j) + " has zero standard deviation");
    }
    for (std::size_t i = 0; i < N; ++i) z[i][j] = (m[i][j] - stats[j].mean) / stats[j].stddev;
  }
  return z;
}

template <std::size_t N>
SquareMatrix<N> z_score_rows(const SquareMatrix<N>& m) {
  const auto stats = row_stats(m);
  SquareMatrix<N> z{};
  for (std::size_t i = 0; i < N; ++i) {
    if (!(stats[i].stddev > 0.0)) {
      throw DegenerateInputError("row " + std::to_string(i) + " has zero standard deviation");
    }
    for (std::size_t j = 0; j < N; ++j) z[i][j] = (m[i][j] - stats[i].mean) / stats[i].stddev;
  }
  return z;
}

/// Rounds to 2 decimal places, halves away from zero.
inline double round_to_hundredths(double z) { return std::round(z * 100.0) / 100.0; }

/// Standard normal CDF. Throws InputError for non-finite z.
inline double normal_cdf(double z, CdfMode mode = CdfMode::precision) {
  if (!std::isfinite(z)) throw InputError("normal_cdf: z must be finite");
  if (mode == CdfMode::paper_parity) z = round_to_hundredths(z);
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

template <std::size_t N>
SquareMatrix<N> apply_cdf(const SquareMatrix<N>& z, CdfMode mode) {
  SquareMatrix<N> p{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) p[i][j] = normal_cdf(z[i][j], mode);
  return p;
}

/// Every table derived from the color distance matrix.
struct StochasticTables {
  Matrix8 distance{};
  Matrix8 col_stochastic{};
  StatsVector<kPaletteSize> col_stats{};
  Matrix8 z_col{};
  Matrix8 prob_col{};
  StatsVector<kPaletteSize> row_stats{};
  Matrix8 z_row{};
  Matrix8 prob_row{};
  CdfMode mode = CdfMode::precision;

  static StochasticTables build(CdfMode mode = CdfMode::precision) {
    StochasticTables t;
    t.mode = mode;
    t.distance = distance_matrix();
    t.col_stochastic = column_normalize(t.distance);
    t.col_stats = flicker::column_stats(t.col_stochastic);
    t.z_col = z_score_columns(t.col_stochastic);
    t.prob_col = apply_cdf(t.z_col, mode);
    t.row_stats = flicker::row_stats(t.col_stochastic);
    t.z_row = z_score_rows(t.col_stochastic);
    t.prob_row = apply_cdf(t.z_row, mode);
    return t;
  }

  const Matrix8& table(ProbabilitySource s) const noexcept {
    switch (s) {
      case ProbabilitySource::prob_col: return prob_col;
      case ProbabilitySource::prob_row: return prob_row;
      case ProbabilitySource::col_stochastic: break;
    }
    return col_stochastic;
  }

  /// Entry (a, b) of the selected table; `a` selects the row.
  double pair_probability(PaletteColor a, PaletteColor b,
                          ProbabilitySource s = ProbabilitySource::col_stochastic) const noexcept {
    return table(s)[index_of(a)][index_of(b)];
  }
};

/// Process-wide immutable tables, built on first use.
inline const StochasticTables& tables(CdfMode mode = CdfMode::precision) {
  static const StochasticTables precise = StochasticTables::build(CdfMode::precision);
  static const StochasticTables parity = StochasticTables::build(CdfMode::paper_parity);
  return mode == CdfMode::precision ? precise : parity;
}

inline double pair_probability(PaletteColor a, PaletteColor b,
                               ProbabilitySource s = ProbabilitySource::col_stochastic,
                               CdfMode mode = CdfMode::precision) {
  return tables(mode).pair_probability(a, b, s);
}

}  // namespace flicker

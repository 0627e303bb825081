#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "decomp/errors.hpp"

namespace decomp {

// One tool's raw metric values on one benchmark. `micro` (service count) is
// informational and never scored.
struct MetricRow {
  std::string tool;
  double sm = 0.0;
  double ifn = 0.0;
  double icp = 0.0;
  double ned = 0.0;
  std::optional<std::int64_t> micro;

  std::array<double, 4> values() const { return {sm, ifn, icp, ned}; }

  friend bool operator==(const MetricRow&, const MetricRow&) = default;
};

inline constexpr std::array<const char*, 4> kMetricNames = {"sm", "ifn", "icp",
                                                            "ned"};

// Composite weights. SM is a benefit, the other three are costs, hence the
// default signs. At least one component must be non-zero.
struct WeightVector {
  double sm = 3.0;
  double ifn = -1.0;
  double icp = -1.0;
  double ned = -1.0;

  std::array<double, 4> values() const { return {sm, ifn, icp, ned}; }

  double abs_sum() const {
    return std::abs(sm) + std::abs(ifn) + std::abs(icp) + std::abs(ned);
  }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

enum class StdConvention { population, sample };

inline const char* to_string(StdConvention c) {
  return c == StdConvention::population ? "population" : "sample";
}

struct ScoreEntry {
  std::string tool;
  std::array<double, 4> raw{};  // sm, ifn, icp, ned
  std::array<double, 4> z{};
  std::optional<std::int64_t> micro;
  double score = 0.0;
  std::size_t rank = 0;  // 1-based, assigned after sorting
};

struct ScoreTable {
  std::string benchmark;
  WeightVector weights;
  StdConvention convention = StdConvention::population;
  std::array<double, 4> mean{};
  std::array<double, 4> stddev{};
  // Sorted by score descending, ties broken by tool name ascending. Ranks are
  // positions in this order, so tied scores still get distinct ranks.
  std::vector<ScoreEntry> entries;
  // Tools that arrived without a complete metric set and were left out.
  std::vector<std::string> not_scored;
};

// Column-wise z-scores over the rows, metric order sm, ifn, icp, ned. A column
// with zero spread z-scores to 0 for every row. Requires at least two rows.
inline std::vector<std::array<double, 4>> zscore_columns(
    const std::vector<MetricRow>& rows,
    StdConvention convention = StdConvention::population,
    std::array<double, 4>* mean_out = nullptr,
    std::array<double, 4>* stddev_out = nullptr) {
  const std::size_t n = rows.size();
  if (n < 2)
    throw DomainError(ErrorKind::too_few_rows,
                      "normalization needs at least 2 rows, got " +
                          std::to_string(n));
  // An exactly constant column must z-score to exactly zero. Detect that
  // before averaging: the computed mean of n identical values can differ from
  // them by rounding, which would otherwise turn zero spread into a tiny
  // nonzero stddev and garbage z-scores.
  std::array<bool, 4> constant;
  const auto first = rows.front().values();
  for (std::size_t m = 0; m < 4; ++m)
    constant[m] = std::all_of(rows.begin(), rows.end(),
                              [&](const MetricRow& r) {
                                return r.values()[m] == first[m];
                              });
  std::array<double, 4> mean{};
  for (const MetricRow& r : rows) {
    const auto v = r.values();
    for (std::size_t m = 0; m < 4; ++m) mean[m] += v[m];
  }
  for (double& v : mean) v /= static_cast<double>(n);
  std::array<double, 4> var{};
  for (const MetricRow& r : rows) {
    const auto v = r.values();
    for (std::size_t m = 0; m < 4; ++m) {
      const double d = v[m] - mean[m];
      var[m] += d * d;
    }
  }
  const double denom = convention == StdConvention::population
                           ? static_cast<double>(n)
                           : static_cast<double>(n - 1);
  std::array<double, 4> stddev{};
  for (std::size_t m = 0; m < 4; ++m) {
    if (constant[m]) {
      mean[m] = first[m];
      stddev[m] = 0.0;
    } else {
      stddev[m] = std::sqrt(var[m] / denom);
    }
  }
  std::vector<std::array<double, 4>> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = rows[i].values();
    for (std::size_t m = 0; m < 4; ++m)
      z[i][m] = stddev[m] > 0.0 ? (v[m] - mean[m]) / stddev[m] : 0.0;
  }
  if (mean_out) *mean_out = mean;
  if (stddev_out) *stddev_out = stddev;
  return z;
}

// Weighted z-score composite:
//
//   score_t = sum_m w_m * z_{m,t} / sum_m |w_m|
//
// computed per benchmark so tools are only compared on the same system.
inline ScoreTable composite_scores(
    std::string benchmark, const std::vector<MetricRow>& rows,
    const WeightVector& weights = {},
    StdConvention convention = StdConvention::population) {
  if (weights.abs_sum() == 0.0)
    throw DomainError(ErrorKind::bad_spec,
                      "weight vector must have a non-zero component");
  ScoreTable table;
  table.benchmark = std::move(benchmark);
  table.weights = weights;
  table.convention = convention;
  const auto z = zscore_columns(rows, convention, &table.mean, &table.stddev);
  const auto w = weights.values();
  table.entries.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ScoreEntry e;
    e.tool = rows[i].tool;
    e.raw = rows[i].values();
    e.z = z[i];
    e.micro = rows[i].micro;
    double s = 0.0;
    for (std::size_t m = 0; m < 4; ++m) s += w[m] * z[i][m];
    e.score = s / weights.abs_sum();
    table.entries.push_back(std::move(e));
  }
  std::stable_sort(table.entries.begin(), table.entries.end(),
                   [](const ScoreEntry& a, const ScoreEntry& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.tool < b.tool;
                   });
  for (std::size_t i = 0; i < table.entries.size(); ++i)
    table.entries[i].rank = i + 1;
  return table;
}

struct RankedTool {
  std::string tool;
  double score = 0.0;
  std::size_t rank = 0;

  friend bool operator==(const RankedTool&, const RankedTool&) = default;
};

inline std::vector<RankedTool> rank_order(const ScoreTable& table) {
  std::vector<RankedTool> out;
  out.reserve(table.entries.size());
  for (const ScoreEntry& e : table.entries)
    out.push_back({e.tool, e.score, e.rank});
  return out;
}

}  // namespace decomp

// Copyright 2026 The p2v authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "p2v/stats.hpp"

#include <gsl/gsl_cdf.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "p2v/errors.hpp"
#include "util.hpp"

namespace p2v {

ScoreGrid ScoreGrid::from_csv(std::string_view text) {
  ScoreGrid grid;
  std::vector<std::string> lines;
  for (const std::string& raw : util::split_lines(text))
    if (!util::trim(raw).empty()) lines.push_back(raw);
  if (lines.empty())
    throw P2vError(ErrorCode::FormatError, "empty scores csv");
  std::vector<std::string> header = util::split_csv_row(lines[0]);
  if (header.size() < 2 || header[0] != "dataset")
    throw P2vError(ErrorCode::FormatError,
                   "scores csv header must be 'dataset,<method>,...'");
  grid.methods.assign(header.begin() + 1, header.end());
  for (std::size_t r = 1; r < lines.size(); ++r) {
    std::vector<std::string> fields = util::split_csv_row(lines[r]);
    if (fields.size() != header.size())
      throw P2vError(ErrorCode::FormatError,
                     "scores csv row " + std::to_string(r + 1) +
                         ": wrong field count");
    grid.datasets.push_back(fields[0]);
    std::vector<double> row;
    for (std::size_t c = 1; c < fields.size(); ++c) {
      char* end = nullptr;
      double v = std::strtod(fields[c].c_str(), &end);
      if (end == fields[c].c_str() || *end != '\0')
        throw P2vError(ErrorCode::FormatError,
                       "scores csv: bad value '" + fields[c] + "'");
      row.push_back(v);
    }
    grid.values.push_back(std::move(row));
  }
  grid.validate();
  return grid;
}

void ScoreGrid::validate() const {
  if (methods.size() < 2)
    throw P2vError(ErrorCode::TooFewMethods,
                   "need at least 2 methods, got " +
                       std::to_string(methods.size()));
  if (datasets.size() < 2)
    throw P2vError(ErrorCode::FormatError,
                   "need at least 2 datasets, got " +
                       std::to_string(datasets.size()));
  if (values.size() != datasets.size())
    throw P2vError(ErrorCode::FormatError, "grid row count mismatch");
  for (const auto& row : values)
    if (row.size() != methods.size())
      throw P2vError(ErrorCode::FormatError, "grid has missing cells");
}

RankTable rank_scores(const ScoreGrid& grid) {
  grid.validate();
  const std::size_t k = grid.methods.size();
  RankTable table;
  table.mean_ranks.assign(k, 0.0);
  for (const std::vector<double>& row : grid.values) {
    // Sort column indices by descending score; average ranks over ties.
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                     std::size_t b) {
      return row[a] > row[b];
    });
    std::vector<double> ranks(k, 0.0);
    std::size_t i = 0;
    while (i < k) {
      std::size_t j = i;
      while (j + 1 < k && row[order[j + 1]] == row[order[i]]) ++j;
      double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
      for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
      i = j + 1;
    }
    for (std::size_t c = 0; c < k; ++c) table.mean_ranks[c] += ranks[c];
    table.ranks.push_back(std::move(ranks));
  }
  for (double& r : table.mean_ranks)
    r /= static_cast<double>(table.ranks.size());
  return table;
}

FriedmanResult friedman(const RankTable& table) {
  const std::size_t k = table.mean_ranks.size();
  const std::size_t n = table.ranks.size();
  if (k < 2)
    throw P2vError(ErrorCode::TooFewMethods,
                   "Friedman test needs at least 2 methods");
  if (n < 2)
    throw P2vError(ErrorCode::FormatError,
                   "Friedman test needs at least 2 datasets");
  double sum_sq = 0.0;
  for (double r : table.mean_ranks) sum_sq += r * r;
  double kd = static_cast<double>(k);
  double nd = static_cast<double>(n);
  double statistic =
      12.0 * nd / (kd * (kd + 1.0)) * (sum_sq - kd * (kd + 1.0) * (kd + 1.0) / 4.0);
  if (statistic < 0.0 && statistic > -1e-12) statistic = 0.0;
  FriedmanResult result;
  result.statistic = statistic;
  result.p_value =
      statistic <= 0.0 ? 1.0 : gsl_cdf_chisq_Q(statistic, kd - 1.0);
  return result;
}

namespace {

// Critical values q_alpha(k) for the Nemenyi test: two-tailed studentized
// range at infinite degrees of freedom divided by sqrt(2), k = 2..20, as
// tabulated in Demsar, "Statistical Comparisons of Classifiers over
// Multiple Data Sets", JMLR 7 (2006).
constexpr int kQTableMinK = 2;
constexpr int kQTableMaxK = 20;
constexpr double kQ05[] = {1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031,
                           3.102, 3.164, 3.219, 3.268, 3.313, 3.354, 3.391,
                           3.426, 3.458, 3.489, 3.517, 3.544};
constexpr double kQ10[] = {1.645, 2.052, 2.291, 2.459, 2.589, 2.693, 2.780,
                           2.855, 2.920, 2.978, 3.030, 3.077, 3.120, 3.159,
                           3.196, 3.230, 3.261, 3.291, 3.319};

}  // namespace

double nemenyi_cd(int k, int n_datasets, double alpha) {
  if (k < kQTableMinK || k > kQTableMaxK)
    throw P2vError(ErrorCode::UnsupportedK,
                   "k=" + std::to_string(k) + " outside the bundled q-table " +
                       "(2..20)");
  if (n_datasets < 1)
    throw P2vError(ErrorCode::FormatError, "need at least one dataset");
  const double* table;
  if (alpha == 0.05) table = kQ05;
  else if (alpha == 0.10) table = kQ10;
  else
    throw P2vError(ErrorCode::UnsupportedAlpha,
                   "alpha must be 0.05 or 0.10");
  double q = table[k - kQTableMinK];
  double kd = static_cast<double>(k);
  return q * std::sqrt(kd * (kd + 1.0) / (6.0 * static_cast<double>(n_datasets)));
}

MeanSe mean_se(std::span<const double> values) {
  if (values.size() < 2)
    throw P2vError(ErrorCode::TooFewSamples,
                   "mean/se needs at least 2 values, got " +
                       std::to_string(values.size()));
  double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  double sd = std::sqrt(ss / (n - 1.0));
  return {mean, sd / std::sqrt(n)};
}

std::vector<std::vector<std::string>> ComparisonReport::groups() const {
  // Sort methods by mean rank, then emit maximal windows whose rank spread
  // stays within CD; drop windows contained in an earlier one.
  const std::size_t k = methods.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return mean_ranks[a] < mean_ranks[b];
  });
  std::vector<std::vector<std::string>> out;
  std::size_t last_end = 0;
  for (std::size_t start = 0; start < k; ++start) {
    std::size_t end = start;
    while (end + 1 < k && mean_ranks[order[end + 1]] -
                                  mean_ranks[order[start]] <=
                              critical_difference + 1e-12)
      ++end;
    if (out.empty() || end > last_end) {
      std::vector<std::string> group;
      for (std::size_t i = start; i <= end; ++i)
        group.push_back(methods[order[i]]);
      out.push_back(std::move(group));
      last_end = end;
    }
  }
  return out;
}

ComparisonReport compare_methods(const ScoreGrid& grid, double alpha) {
  RankTable table = rank_scores(grid);
  FriedmanResult fr = friedman(table);
  ComparisonReport report;
  report.methods = grid.methods;
  report.mean_ranks = table.mean_ranks;
  report.statistic = fr.statistic;
  report.p_value = fr.p_value;
  report.alpha = alpha;
  report.critical_difference = nemenyi_cd(static_cast<int>(grid.methods.size()),
                                          static_cast<int>(grid.datasets.size()),
                                          alpha);
  const std::size_t k = grid.methods.size();
  report.indistinguishable.assign(k, std::vector<bool>(k, false));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      report.indistinguishable[a][b] =
          std::fabs(table.mean_ranks[a] - table.mean_ranks[b]) <=
          report.critical_difference + 1e-12;
  return report;
}

}  // namespace p2v

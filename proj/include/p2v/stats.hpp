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

#ifndef P2V_STATS_HPP
#define P2V_STATS_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace p2v {

// N datasets (rows) by k methods (columns) of correctness scores.
struct ScoreGrid {
  std::vector<std::string> methods;
  std::vector<std::string> datasets;
  std::vector<std::vector<double>> values;

  // CSV with header "dataset,<method1>,...,<methodk>".
  static ScoreGrid from_csv(std::string_view text);
  void validate() const;  // no missing cells, k >= 2, N >= 2
};

// Per-row descending ranks (rank 1 = best score); ties carry average ranks.
struct RankTable {
  std::vector<std::vector<double>> ranks;  // N x k
  std::vector<double> mean_ranks;          // length k
};

RankTable rank_scores(const ScoreGrid& grid);

struct FriedmanResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Friedman chi-square over the rank table with a chi-square tail
// probability at k-1 degrees of freedom.
FriedmanResult friedman(const RankTable& ranks);

// Nemenyi critical difference q_alpha(k) * sqrt(k(k+1)/(6N)) for
// alpha in {0.05, 0.10} and 2 <= k <= 20 (the bundled q-table range).
double nemenyi_cd(int k, int n_datasets, double alpha);

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;  // sample standard deviation / sqrt(n)
};

MeanSe mean_se(std::span<const double> values);

// Everything the compare report needs: mean ranks, the Friedman test, the
// critical difference and the pairwise indistinguishability relation
// (|mean-rank difference| <= CD).
struct ComparisonReport {
  std::vector<std::string> methods;
  std::vector<double> mean_ranks;
  double statistic = 0.0;
  double p_value = 1.0;
  double critical_difference = 0.0;
  double alpha = 0.05;
  std::vector<std::vector<bool>> indistinguishable;  // k x k, reflexive

  // Fig-5-style bars: maximal groups of methods, in mean-rank order, whose
  // rank spread stays within the critical difference.
  std::vector<std::vector<std::string>> groups() const;
};

ComparisonReport compare_methods(const ScoreGrid& grid, double alpha);

}  // namespace p2v

#endif  // P2V_STATS_HPP

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

#ifndef P2V_ALIGNMENT_HPP
#define P2V_ALIGNMENT_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace p2v {

// Edit costs for the dynamic-programming aligner. Matches always cost 0.
struct AlignCosts {
  int substitution = 10;
  int insertion = 7;
  int deletion = 7;
  enum class Mode { htk, unit } mode = Mode::htk;

  // HTK HResults constants.
  static AlignCosts htk() { return {10, 7, 7, Mode::htk}; }
  static AlignCosts unit() { return {1, 1, 1, Mode::unit}; }
};

enum class OpKind { hit, sub, del, ins };

struct AlignOp {
  OpKind kind;
  std::string ref;  // empty for insertions
  std::string hyp;  // empty for deletions
};

struct Alignment {
  std::vector<AlignOp> ops;
  long long cost = 0;

  long long hits() const;
  long long substitutions() const;
  long long deletions() const;
  long long insertions() const;
};

// Minimal-cost alignment of hyp against ref. Ties in the backtrace prefer
// hit/sub, then deletion, then insertion, so results are deterministic.
Alignment align(std::span<const std::string> ref,
                std::span<const std::string> hyp, const AlignCosts& costs);

// Summed counts over utterances with correctness (N-D-S)/N and accuracy
// (N-D-S-I)/N. Internally exact integer ratios; the doubles are derived.
struct AlignmentStats {
  long long n = 0;
  long long hits = 0;
  long long substitutions = 0;
  long long deletions = 0;
  long long insertions = 0;

  double correctness() const;
  double accuracy() const;
};

AlignmentStats score(std::span<const Alignment> alignments);

// Square true-by-predicted counts over a fixed label list, with deletion
// and insertion margins kept outside the square counts.
class ConfusionMatrix {
 public:
  ConfusionMatrix() = default;
  explicit ConfusionMatrix(std::vector<std::string> labels);

  static ConfusionMatrix from_csv(std::string_view text);
  std::string to_csv() const;

  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  bool has_label(std::string_view label) const;
  std::size_t index_of(std::string_view label) const;

  long long at(std::size_t true_idx, std::size_t pred_idx) const;
  long long& at(std::size_t true_idx, std::size_t pred_idx);
  long long deletions_of(std::size_t true_idx) const;
  long long& deletions_of(std::size_t true_idx);
  long long insertions_of(std::size_t pred_idx) const;
  long long& insertions_of(std::size_t pred_idx);

  long long row_sum(std::size_t true_idx) const;     // square counts only
  long long column_sum(std::size_t pred_idx) const;  // square counts only
  long long total() const;                           // square counts only

 private:
  std::vector<std::string> labels_;
  std::vector<long long> counts_;  // row-major labels x labels
  std::vector<long long> del_margin_;
  std::vector<long long> ins_margin_;
};

// Hits and substitutions go into the square counts; deletions and
// insertions only into the margins.
ConfusionMatrix confusion_from_alignments(std::span<const Alignment> alignments,
                                          std::span<const std::string> labels);

ConfusionMatrix sum_confusions(std::span<const ConfusionMatrix> matrices);

// Per-class precision Pr{v|v-hat}: diagonal over column sum. Labels whose
// column is empty are absent from the result, not reported as zero.
std::vector<std::pair<std::string, double>> per_class_precision(
    const ConfusionMatrix& m);

}  // namespace p2v

#endif  // P2V_ALIGNMENT_HPP

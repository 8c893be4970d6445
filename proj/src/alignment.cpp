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

#include "p2v/alignment.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include "p2v/errors.hpp"
#include "util.hpp"

namespace p2v {

long long Alignment::hits() const {
  return std::count_if(ops.begin(), ops.end(),
                       [](const AlignOp& op) { return op.kind == OpKind::hit; });
}
long long Alignment::substitutions() const {
  return std::count_if(ops.begin(), ops.end(),
                       [](const AlignOp& op) { return op.kind == OpKind::sub; });
}
long long Alignment::deletions() const {
  return std::count_if(ops.begin(), ops.end(),
                       [](const AlignOp& op) { return op.kind == OpKind::del; });
}
long long Alignment::insertions() const {
  return std::count_if(ops.begin(), ops.end(),
                       [](const AlignOp& op) { return op.kind == OpKind::ins; });
}

Alignment align(std::span<const std::string> ref,
                std::span<const std::string> hyp, const AlignCosts& costs) {
  const std::size_t m = ref.size();
  const std::size_t n = hyp.size();
  if (m == 0 && n == 0)
    throw P2vError(ErrorCode::EmptyPair, "both sequences empty");

  // D[i][j]: minimal cost of aligning ref[0..i) with hyp[0..j).
  std::vector<long long> dp((m + 1) * (n + 1));
  auto d = [&](std::size_t i, std::size_t j) -> long long& {
    return dp[i * (n + 1) + j];
  };
  for (std::size_t j = 1; j <= n; ++j) d(0, j) = d(0, j - 1) + costs.insertion;
  for (std::size_t i = 1; i <= m; ++i) d(i, 0) = d(i - 1, 0) + costs.deletion;
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      long long diag =
          d(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : costs.substitution);
      long long del = d(i - 1, j) + costs.deletion;
      long long ins = d(i, j - 1) + costs.insertion;
      d(i, j) = std::min({diag, del, ins});
    }
  }

  // Backtrace; on equal cost prefer hit/sub, then deletion, then insertion.
  Alignment out;
  out.cost = d(m, n);
  std::size_t i = m, j = n;
  std::vector<AlignOp> rev;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      long long step =
          ref[i - 1] == hyp[j - 1] ? 0 : costs.substitution;
      if (d(i, j) == d(i - 1, j - 1) + step) {
        rev.push_back({step == 0 ? OpKind::hit : OpKind::sub, ref[i - 1],
                       hyp[j - 1]});
        --i, --j;
        continue;
      }
    }
    if (i > 0 && d(i, j) == d(i - 1, j) + costs.deletion) {
      rev.push_back({OpKind::del, ref[i - 1], ""});
      --i;
      continue;
    }
    rev.push_back({OpKind::ins, "", hyp[j - 1]});
    --j;
  }
  out.ops.assign(rev.rbegin(), rev.rend());
  return out;
}

double AlignmentStats::correctness() const {
  return static_cast<double>(n - deletions - substitutions) /
         static_cast<double>(n);
}

double AlignmentStats::accuracy() const {
  return static_cast<double>(n - deletions - substitutions - insertions) /
         static_cast<double>(n);
}

AlignmentStats score(std::span<const Alignment> alignments) {
  if (alignments.empty())
    throw P2vError(ErrorCode::EmptyReference, "no alignments to score");
  AlignmentStats stats;
  for (const Alignment& a : alignments) {
    stats.hits += a.hits();
    stats.substitutions += a.substitutions();
    stats.deletions += a.deletions();
    stats.insertions += a.insertions();
  }
  stats.n = stats.hits + stats.substitutions + stats.deletions;
  if (stats.n == 0)
    throw P2vError(ErrorCode::EmptyReference, "reference label count is zero");
  return stats;
}

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> labels)
    : labels_(std::move(labels)),
      counts_(labels_.size() * labels_.size(), 0),
      del_margin_(labels_.size(), 0),
      ins_margin_(labels_.size(), 0) {
  std::map<std::string, int> seen;
  for (const std::string& l : labels_)
    if (++seen[l] > 1)
      throw P2vError(ErrorCode::DuplicateSymbol, "confusion label " + l);
}

bool ConfusionMatrix::has_label(std::string_view label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t ConfusionMatrix::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end())
    throw P2vError(ErrorCode::UnknownLabel, std::string(label));
  return static_cast<std::size_t>(it - labels_.begin());
}

long long ConfusionMatrix::at(std::size_t t, std::size_t p) const {
  return counts_[t * labels_.size() + p];
}
long long& ConfusionMatrix::at(std::size_t t, std::size_t p) {
  return counts_[t * labels_.size() + p];
}
long long ConfusionMatrix::deletions_of(std::size_t t) const {
  return del_margin_[t];
}
long long& ConfusionMatrix::deletions_of(std::size_t t) {
  return del_margin_[t];
}
long long ConfusionMatrix::insertions_of(std::size_t p) const {
  return ins_margin_[p];
}
long long& ConfusionMatrix::insertions_of(std::size_t p) {
  return ins_margin_[p];
}

long long ConfusionMatrix::row_sum(std::size_t t) const {
  long long sum = 0;
  for (std::size_t p = 0; p < labels_.size(); ++p) sum += at(t, p);
  return sum;
}

long long ConfusionMatrix::column_sum(std::size_t p) const {
  long long sum = 0;
  for (std::size_t t = 0; t < labels_.size(); ++t) sum += at(t, p);
  return sum;
}

long long ConfusionMatrix::total() const {
  long long sum = 0;
  for (long long c : counts_) sum += c;
  return sum;
}

static long long parse_count(const std::string& field, int line_no) {
  if (field.empty())
    throw P2vError(ErrorCode::FormatError,
                   "confusion csv line " + std::to_string(line_no) +
                       ": empty count");
  for (char c : field)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw P2vError(ErrorCode::FormatError,
                     "confusion csv line " + std::to_string(line_no) +
                         ": bad count '" + field + "'");
  return std::stoll(field);
}

ConfusionMatrix ConfusionMatrix::from_csv(std::string_view text) {
  std::vector<std::string> lines;
  for (const std::string& raw : util::split_lines(text))
    if (!util::trim(raw).empty()) lines.push_back(raw);
  if (lines.empty())
    throw P2vError(ErrorCode::FormatError, "empty confusion csv");

  std::vector<std::string> header = util::split_csv_row(lines[0]);
  if (header.size() < 3 || !header[0].empty() || header.back() != "<DEL>")
    throw P2vError(ErrorCode::FormatError,
                   "confusion csv header must be ',PRED...,<DEL>'");
  std::vector<std::string> labels(header.begin() + 1, header.end() - 1);
  ConfusionMatrix m(labels);

  const std::size_t k = labels.size();
  if (lines.size() != k + 2)
    throw P2vError(ErrorCode::FormatError,
                   "confusion csv needs one row per label plus <INS>");
  for (std::size_t r = 0; r < k; ++r) {
    std::vector<std::string> fields = util::split_csv_row(lines[1 + r]);
    if (fields.size() != k + 2)
      throw P2vError(ErrorCode::FormatError,
                     "confusion csv row " + std::to_string(r + 2) +
                         ": wrong field count");
    if (fields[0] != labels[r])
      throw P2vError(ErrorCode::FormatError,
                     "confusion csv row order must match header (got '" +
                         fields[0] + "', expected '" + labels[r] + "')");
    for (std::size_t c = 0; c < k; ++c)
      m.at(r, c) = parse_count(fields[1 + c], static_cast<int>(r + 2));
    m.deletions_of(r) = parse_count(fields[k + 1], static_cast<int>(r + 2));
  }
  std::vector<std::string> ins_row = util::split_csv_row(lines[k + 1]);
  if (ins_row.size() != k + 2 || ins_row[0] != "<INS>")
    throw P2vError(ErrorCode::FormatError, "confusion csv missing <INS> row");
  for (std::size_t c = 0; c < k; ++c)
    m.insertions_of(c) = parse_count(ins_row[1 + c], static_cast<int>(k + 2));
  return m;
}

std::string ConfusionMatrix::to_csv() const {
  std::ostringstream out;
  for (const std::string& l : labels_) out << ',' << l;
  out << ",<DEL>\n";
  for (std::size_t t = 0; t < labels_.size(); ++t) {
    out << labels_[t];
    for (std::size_t p = 0; p < labels_.size(); ++p) out << ',' << at(t, p);
    out << ',' << del_margin_[t] << '\n';
  }
  out << "<INS>";
  for (std::size_t p = 0; p < labels_.size(); ++p) out << ',' << ins_margin_[p];
  out << ",0\n";
  return out.str();
}

ConfusionMatrix confusion_from_alignments(
    std::span<const Alignment> alignments,
    std::span<const std::string> labels) {
  ConfusionMatrix m(std::vector<std::string>(labels.begin(), labels.end()));
  for (const Alignment& a : alignments) {
    for (const AlignOp& op : a.ops) {
      switch (op.kind) {
        case OpKind::hit:
        case OpKind::sub:
          m.at(m.index_of(op.ref), m.index_of(op.hyp)) += 1;
          break;
        case OpKind::del:
          m.deletions_of(m.index_of(op.ref)) += 1;
          break;
        case OpKind::ins:
          m.insertions_of(m.index_of(op.hyp)) += 1;
          break;
      }
    }
  }
  return m;
}

ConfusionMatrix sum_confusions(std::span<const ConfusionMatrix> matrices) {
  if (matrices.empty())
    throw P2vError(ErrorCode::EmptyConfusion, "no matrices to sum");
  ConfusionMatrix out(matrices.front().labels());
  for (const ConfusionMatrix& m : matrices) {
    if (m.labels() != out.labels())
      throw P2vError(ErrorCode::LabelMismatch,
                     "confusion matrices have different label lists");
    for (std::size_t t = 0; t < out.size(); ++t) {
      for (std::size_t p = 0; p < out.size(); ++p) out.at(t, p) += m.at(t, p);
      out.deletions_of(t) += m.deletions_of(t);
      out.insertions_of(t) += m.insertions_of(t);
    }
  }
  return out;
}

std::vector<std::pair<std::string, double>> per_class_precision(
    const ConfusionMatrix& m) {
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t p = 0; p < m.size(); ++p) {
    long long col = m.column_sum(p);
    if (col == 0) continue;  // undefined, reported as absent
    out.emplace_back(m.labels()[p],
                     static_cast<double>(m.at(p, p)) / static_cast<double>(col));
  }
  return out;
}

}  // namespace p2v

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

#ifndef P2V_DERIVATION_HPP
#define P2V_DERIVATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "p2v/alignment.hpp"
#include "p2v/transcript.hpp"
#include "p2v/viseme_map.hpp"

namespace p2v {

// The four speaker-dependent derivation variants:
//   B1 mixed + strict, B2 split + strict,
//   B3 mixed + strict-then-relaxed, B4 split + strict-then-relaxed.
enum class Variant { B1, B2, B3, B4 };

const char* variant_name(Variant v);
std::optional<Variant> variant_from_name(std::string_view name);
bool variant_is_split(Variant v);
bool variant_is_relaxed(Variant v);

struct DerivationConfig {
  Variant variant = Variant::B1;
  PhonemeInventory inventory;
  long long min_confusion = 1;  // edge threshold; 1 means "greater than zero"
};

// Symmetric confusion graph over the matrix's non-silence labels:
// w(a,b) = counts[a][b] + counts[b][a], an edge iff w >= min_confusion.
class ConfusionGraph {
 public:
  static ConfusionGraph build(const ConfusionMatrix& m,
                              const DerivationConfig& cfg);

  const std::vector<std::string>& nodes() const { return nodes_; }
  bool has_node(std::string_view name) const;
  long long weight(std::string_view a, std::string_view b) const;
  bool has_edge(std::string_view a, std::string_view b) const;

 private:
  std::vector<std::string> nodes_;
  std::vector<long long> weights_;  // dense, nodes x nodes
  long long min_confusion_ = 1;
  std::size_t index(std::string_view name) const;
};

// True iff every unordered pair in `group` has an edge (the group is a
// clique). Requires |group| >= 2 and group within the graph's nodes.
bool mutually_confusable(const ConfusionGraph& g,
                         std::span<const std::string> group);

// One relaxation decision: which viseme absorbed a leftover singleton and
// with what confusion scores.
struct MergeRecord {
  std::string phoneme;
  std::string target_label;
  long long target_score = 0;
  std::string runner_up_label;  // empty when there was no competitor
  long long runner_up_score = 0;
};

struct DerivationLog {
  std::vector<MergeRecord> merges;
};

// Strict pass: pure-diagonal labels become singletons; then repeatedly the
// best clique (largest, then most total pairwise confusion, then
// lexicographically smallest member list) is emitted until only singles
// remain. Inventory phonemes missing from the matrix land in GAR.
VisemeMap derive_strict(const ConfusionMatrix& m, const DerivationConfig& cfg);

// Relaxed pass over a strict result: leftover singletons (not the
// pure-diagonal ones) join the existing viseme they are most confused
// with; ties go to the earliest-created viseme.
VisemeMap relax(const VisemeMap& strict_map, const ConfusionMatrix& m,
                const DerivationConfig& cfg, DerivationLog* log = nullptr);

VisemeMap derive(const ConfusionMatrix& m, const DerivationConfig& cfg,
                 DerivationLog* log = nullptr);

// FNV-1a digest of the canonical matrix CSV; recorded in derived map
// headers so a map can be traced back to its confusion data.
std::string confusion_digest(const ConfusionMatrix& m);

}  // namespace p2v

#endif  // P2V_DERIVATION_HPP

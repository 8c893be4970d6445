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

#ifndef P2V_VISEME_MAP_HPP
#define P2V_VISEME_MAP_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "p2v/transcript.hpp"

namespace p2v {

enum class MapKind { vowel, consonant, combined };

const char* map_kind_name(MapKind kind);
std::optional<MapKind> map_kind_from_name(std::string_view name);

struct VisemeClass {
  std::string label;
  std::vector<std::string> phonemes;
};

inline constexpr std::string_view kGarbageLabel = "GAR";
inline constexpr std::string_view kSilenceLabel = "SIL";

// A named partition of (a subset of) an inventory into viseme classes,
// with distinguished garbage and silence classes. Immutable after
// construction; the constructor enforces the partition invariants.
class VisemeMap {
 public:
  VisemeMap() = default;
  VisemeMap(std::string name, MapKind kind, bool split,
            std::vector<VisemeClass> classes, std::vector<std::string> garbage,
            std::vector<std::string> silence, PhonemeInventory inventory);

  // Map file format:
  //   name: lee-consonants
  //   kind: vowel|consonant|combined
  //   split: yes|no
  //   LABEL: PH1 PH2 ...
  // GAR and SIL are reserved labels; '#' starts a comment.
  static VisemeMap parse(std::string_view text,
                         const PhonemeInventory& inventory);
  std::string serialize() const;

  const std::string& name() const { return name_; }
  MapKind kind() const { return kind_; }
  bool split() const { return split_; }
  const std::vector<VisemeClass>& classes() const { return classes_; }
  const std::vector<std::string>& garbage() const { return garbage_; }
  const std::vector<std::string>& silence() const { return silence_; }
  const PhonemeInventory& inventory() const { return inventory_; }

  // Class label for a phoneme, GAR/SIL included; nullopt when the phoneme
  // is not covered by the map at all.
  std::optional<std::string_view> label_of(std::string_view phoneme) const;

  // Counts excluding the garbage and silence classes.
  std::size_t viseme_count() const { return classes_.size(); }
  std::size_t phoneme_count() const;

 private:
  std::string name_;
  MapKind kind_ = MapKind::combined;
  bool split_ = false;
  std::vector<VisemeClass> classes_;
  std::vector<std::string> garbage_;
  std::vector<std::string> silence_;
  PhonemeInventory inventory_;
  std::map<std::string, std::string, std::less<>> label_index_;
};

struct ValidationIssue {
  enum class Kind { partition, empty_class, mixed_class, uncovered };
  Kind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  std::vector<std::string> uncovered;  // inventory symbols outside the map
  bool clean() const { return issues.empty(); }
};

// Report-only check of the partition, non-empty-class and (for split maps)
// class-purity rules, plus the list of uncovered inventory symbols.
ValidationReport validate_map(const VisemeMap& map);

// Unions a vowel-only and a consonant-only map over `inventory`. Class
// labels get a V-/C- prefix; uncovered phonemes land in GAR, silence
// tokens in SIL.
VisemeMap pair_maps(const VisemeMap& vowels, const VisemeMap& consonants,
                    const PhonemeInventory& inventory);

// Phoneme transcript -> viseme transcript. Sequence lengths are preserved;
// adjacent identical visemes are not merged.
Transcript apply_map(const VisemeMap& map, const Transcript& phonemes);

// NV / NP over the non-garbage, non-silence classes.
double compression_factor(const VisemeMap& map);

// The bundled literature catalog: an index file (catalog.tsv) plus one map
// file per entry.
class MapCatalog {
 public:
  struct Entry {
    std::string name;
    std::string role;  // "vowel" or "consonant" (catalog grouping)
    std::string year;
    std::string inspiration;
    std::string description;
    std::string subjects;
    VisemeMap map;
  };

  static MapCatalog load(const std::string& maps_dir,
                         const PhonemeInventory& inventory);

  const std::vector<Entry>& entries() const { return entries_; }
  std::vector<const Entry*> vowel_entries() const;
  std::vector<const Entry*> consonant_entries() const;
  const Entry* find(std::string_view name) const;

 private:
  std::vector<Entry> entries_;
};

}  // namespace p2v

#endif  // P2V_VISEME_MAP_HPP

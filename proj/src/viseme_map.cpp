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

#include "p2v/viseme_map.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "p2v/errors.hpp"
#include "util.hpp"

namespace p2v {

const char* map_kind_name(MapKind kind) {
  switch (kind) {
    case MapKind::vowel: return "vowel";
    case MapKind::consonant: return "consonant";
    case MapKind::combined: return "combined";
  }
  return "?";
}

std::optional<MapKind> map_kind_from_name(std::string_view name) {
  if (name == "vowel") return MapKind::vowel;
  if (name == "consonant") return MapKind::consonant;
  if (name == "combined") return MapKind::combined;
  return std::nullopt;
}

VisemeMap::VisemeMap(std::string name, MapKind kind, bool split,
                     std::vector<VisemeClass> classes,
                     std::vector<std::string> garbage,
                     std::vector<std::string> silence,
                     PhonemeInventory inventory)
    : name_(std::move(name)),
      kind_(kind),
      split_(split),
      classes_(std::move(classes)),
      garbage_(std::move(garbage)),
      silence_(std::move(silence)),
      inventory_(std::move(inventory)) {
  // Structural problems are rejected here; partition, emptiness and
  // split-purity violations are left for validate_map to report.
  std::set<std::string> labels;
  for (const VisemeClass& c : classes_) {
    if (c.label == kGarbageLabel || c.label == kSilenceLabel)
      throw P2vError(ErrorCode::FormatError,
                     c.label + " is a reserved class label");
    if (!labels.insert(c.label).second)
      throw P2vError(ErrorCode::FormatError, "duplicate label " + c.label);
    for (const std::string& ph : c.phonemes) {
      if (!inventory_.contains(ph))
        throw P2vError(ErrorCode::UnknownPhoneme,
                       ph + " in class " + c.label + " of map " + name_);
      label_index_.emplace(ph, c.label);  // first listed class wins
    }
  }
  for (const std::string& ph : garbage_) {
    if (!inventory_.contains(ph))
      throw P2vError(ErrorCode::UnknownPhoneme, ph + " in GAR");
    label_index_.emplace(ph, std::string(kGarbageLabel));
  }
  for (const std::string& ph : silence_)
    label_index_.emplace(ph, std::string(kSilenceLabel));
}

VisemeMap VisemeMap::parse(std::string_view text,
                           const PhonemeInventory& inventory) {
  std::string name;
  std::optional<MapKind> kind;
  std::optional<bool> split;
  std::vector<VisemeClass> classes;
  std::vector<std::string> garbage;
  std::vector<std::string> silence;

  int line_no = 0;
  for (const std::string& raw : util::split_lines(text)) {
    ++line_no;
    std::string line = util::trim(util::strip_comment(raw));
    if (line.empty()) continue;
    std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw P2vError(ErrorCode::FormatError,
                     "map line " + std::to_string(line_no) + ": missing ':'");
    std::string key = util::trim(line.substr(0, colon));
    std::string value = util::trim(line.substr(colon + 1));
    if (key == "name") {
      name = value;
    } else if (key == "kind") {
      kind = map_kind_from_name(value);
      if (!kind)
        throw P2vError(ErrorCode::FormatError, "bad kind '" + value + "'");
    } else if (key == "split") {
      if (value == "yes") split = true;
      else if (value == "no") split = false;
      else
        throw P2vError(ErrorCode::FormatError, "bad split '" + value + "'");
    } else {
      std::vector<std::string> phonemes = util::split_ws(value);
      for (std::string& ph : phonemes) ph = util::to_upper(ph);
      if (key == kGarbageLabel) {
        garbage = std::move(phonemes);
      } else if (key == kSilenceLabel) {
        silence = std::move(phonemes);
      } else {
        if (phonemes.empty())
          throw P2vError(ErrorCode::FormatError, "empty class " + key);
        classes.push_back({key, std::move(phonemes)});
      }
    }
  }
  if (name.empty())
    throw P2vError(ErrorCode::FormatError, "map file missing 'name:'");
  if (!kind)
    throw P2vError(ErrorCode::FormatError, "map file missing 'kind:'");
  return VisemeMap(name, *kind, split.value_or(false), std::move(classes),
                   std::move(garbage), std::move(silence), inventory);
}

std::string VisemeMap::serialize() const {
  std::ostringstream out;
  out << "name: " << name_ << '\n';
  out << "kind: " << map_kind_name(kind_) << '\n';
  out << "split: " << (split_ ? "yes" : "no") << '\n';
  for (const VisemeClass& c : classes_) {
    out << c.label << ':';
    for (const std::string& ph : c.phonemes) out << ' ' << ph;
    out << '\n';
  }
  if (!garbage_.empty()) {
    out << kGarbageLabel << ':';
    for (const std::string& ph : garbage_) out << ' ' << ph;
    out << '\n';
  }
  if (!silence_.empty()) {
    out << kSilenceLabel << ':';
    for (const std::string& ph : silence_) out << ' ' << ph;
    out << '\n';
  }
  return out.str();
}

std::optional<std::string_view> VisemeMap::label_of(
    std::string_view phoneme) const {
  auto it = label_index_.find(phoneme);
  if (it == label_index_.end()) return std::nullopt;
  return std::string_view(it->second);
}

std::size_t VisemeMap::phoneme_count() const {
  std::size_t n = 0;
  for (const VisemeClass& c : classes_) n += c.phonemes.size();
  return n;
}

ValidationReport validate_map(const VisemeMap& map) {
  ValidationReport report;
  std::map<std::string, std::string> seen;
  auto check = [&](const std::string& ph, const std::string& label) {
    auto [it, inserted] = seen.emplace(ph, label);
    if (!inserted)
      report.issues.push_back({ValidationIssue::Kind::partition,
                               ph + " in both " + it->second + " and " + label});
  };
  for (const VisemeClass& c : map.classes()) {
    if (c.phonemes.empty())
      report.issues.push_back(
          {ValidationIssue::Kind::empty_class, c.label});
    for (const std::string& ph : c.phonemes) check(ph, c.label);
    if (map.split()) {
      bool has_vowel = false, has_consonant = false;
      for (const std::string& ph : c.phonemes) {
        auto cls = map.inventory().class_of(ph);
        if (cls == PhonemeClass::vowel) has_vowel = true;
        if (cls == PhonemeClass::consonant) has_consonant = true;
      }
      if (has_vowel && has_consonant)
        report.issues.push_back(
            {ValidationIssue::Kind::mixed_class, c.label});
    }
  }
  for (const std::string& ph : map.garbage()) check(ph, std::string(kGarbageLabel));
  for (const std::string& ph : map.silence()) check(ph, std::string(kSilenceLabel));
  for (const PhonemeSymbol& s : map.inventory().symbols()) {
    if (!seen.count(s.name)) report.uncovered.push_back(s.name);
  }
  return report;
}

VisemeMap pair_maps(const VisemeMap& vowels, const VisemeMap& consonants,
                    const PhonemeInventory& inventory) {
  for (const VisemeClass& c : vowels.classes())
    for (const std::string& ph : c.phonemes)
      if (!inventory.class_of(ph))
        throw P2vError(ErrorCode::UnknownPhoneme, ph + " in " + vowels.name());
  for (const VisemeClass& c : consonants.classes())
    for (const std::string& ph : c.phonemes)
      if (!inventory.class_of(ph))
        throw P2vError(ErrorCode::UnknownPhoneme,
                       ph + " in " + consonants.name());

  std::set<std::string> covered;
  std::vector<VisemeClass> classes;
  for (const VisemeClass& c : vowels.classes()) {
    VisemeClass nc{"V-" + c.label, c.phonemes};
    for (const std::string& ph : c.phonemes)
      if (!covered.insert(ph).second)
        throw P2vError(ErrorCode::OverlapError, ph);
    classes.push_back(std::move(nc));
  }
  for (const VisemeClass& c : consonants.classes()) {
    VisemeClass nc{"C-" + c.label, c.phonemes};
    for (const std::string& ph : c.phonemes)
      if (!covered.insert(ph).second)
        throw P2vError(ErrorCode::OverlapError, ph);
    classes.push_back(std::move(nc));
  }

  std::vector<std::string> garbage;
  std::vector<std::string> silence;
  for (const PhonemeSymbol& s : inventory.symbols()) {
    if (s.cls == PhonemeClass::silence) {
      silence.push_back(s.name);
    } else if (!covered.count(s.name)) {
      garbage.push_back(s.name);
    }
  }
  return VisemeMap(vowels.name() + "+" + consonants.name(), MapKind::combined,
                   /*split=*/true, std::move(classes), std::move(garbage),
                   std::move(silence), inventory);
}

Transcript apply_map(const VisemeMap& map, const Transcript& phonemes) {
  if (phonemes.level != Level::phoneme)
    throw PreconditionError("apply_map needs a phoneme-level transcript");
  Transcript out;
  out.level = Level::viseme;
  out.utterances.reserve(phonemes.utterances.size());
  for (const auto& utt : phonemes.utterances) {
    std::vector<std::string> visemes;
    visemes.reserve(utt.size());
    for (const std::string& ph : utt) {
      auto label = map.label_of(ph);
      if (!label) {
        // In-inventory but unmapped phonemes fall into the garbage class.
        if (map.inventory().contains(ph))
          label = kGarbageLabel;
        else
          throw P2vError(ErrorCode::UnknownPhoneme, ph);
      }
      visemes.emplace_back(*label);
    }
    out.utterances.push_back(std::move(visemes));
  }
  return out;
}

double compression_factor(const VisemeMap& map) {
  std::size_t nv = map.viseme_count();
  std::size_t np = map.phoneme_count();
  if (nv == 0 || np == 0)
    throw P2vError(ErrorCode::DegenerateMap, map.name());
  return static_cast<double>(nv) / static_cast<double>(np);
}

MapCatalog MapCatalog::load(const std::string& maps_dir,
                            const PhonemeInventory& inventory) {
  MapCatalog catalog;
  std::string index = util::read_file(maps_dir + "/catalog.tsv");
  int line_no = 0;
  for (const std::string& raw : util::split_lines(index)) {
    ++line_no;
    if (!raw.empty() && raw[0] == '#') continue;
    std::string line = util::trim(raw);
    if (line.empty()) continue;
    // name \t role \t file \t year \t inspiration \t description \t subjects
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos) {
        fields.push_back(util::trim(line.substr(start)));
        break;
      }
      fields.push_back(util::trim(line.substr(start, tab - start)));
      start = tab + 1;
    }
    if (fields.size() != 7)
      throw P2vError(ErrorCode::FormatError,
                     "catalog.tsv line " + std::to_string(line_no) +
                         ": expected 7 tab-separated fields");
    Entry entry;
    entry.name = fields[0];
    entry.role = fields[1];
    if (entry.role != "vowel" && entry.role != "consonant")
      throw P2vError(ErrorCode::FormatError,
                     "catalog role must be vowel or consonant, got " +
                         entry.role);
    entry.year = fields[3];
    entry.inspiration = fields[4];
    entry.description = fields[5];
    entry.subjects = fields[6];
    entry.map =
        VisemeMap::parse(util::read_file(maps_dir + "/" + fields[2]), inventory);
    if (entry.map.name() != entry.name)
      throw P2vError(ErrorCode::FormatError,
                     "catalog name " + entry.name + " != map file name " +
                         entry.map.name());
    catalog.entries_.push_back(std::move(entry));
  }
  return catalog;
}

std::vector<const MapCatalog::Entry*> MapCatalog::vowel_entries() const {
  std::vector<const Entry*> out;
  for (const Entry& e : entries_)
    if (e.role == "vowel") out.push_back(&e);
  return out;
}

std::vector<const MapCatalog::Entry*> MapCatalog::consonant_entries() const {
  std::vector<const Entry*> out;
  for (const Entry& e : entries_)
    if (e.role == "consonant") out.push_back(&e);
  return out;
}

const MapCatalog::Entry* MapCatalog::find(std::string_view name) const {
  for (const Entry& e : entries_)
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace p2v

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

#ifndef P2V_TRANSCRIPT_HPP
#define P2V_TRANSCRIPT_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace p2v {

enum class PhonemeClass { vowel, consonant, silence };

// Token names are stored uppercase; "SIL" and "SP" are the designated
// silence tokens and the only ones that may carry the silence class.
struct PhonemeSymbol {
  std::string name;
  PhonemeClass cls = PhonemeClass::consonant;
};

bool is_silence_token(std::string_view name);

// Ordered set of phoneme symbols. Iteration order is file declaration
// order; downstream tie-breaking relies on it being stable.
class PhonemeInventory {
 public:
  PhonemeInventory() = default;
  explicit PhonemeInventory(std::vector<PhonemeSymbol> symbols);

  // Inventory file format: one "SYMBOL CLASS" per line, CLASS in {v,c,s};
  // '#' starts a comment.
  static PhonemeInventory parse(std::string_view text);

  const std::vector<PhonemeSymbol>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  bool contains(std::string_view name) const;
  std::optional<PhonemeClass> class_of(std::string_view name) const;

  std::string serialize() const;

 private:
  std::vector<PhonemeSymbol> symbols_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// Word -> ordered pronunciations (each a phoneme-name sequence).
// Multiple lines for one word accumulate in file order.
class PronunciationDict {
 public:
  using Pronunciation = std::vector<std::string>;

  // Dictionary format: "WORD PH1 PH2 ..." per line; lines starting with
  // '#' are ignored. Every phoneme must exist in `inventory`.
  static PronunciationDict parse(std::string_view text,
                                 const PhonemeInventory& inventory);

  const std::vector<Pronunciation>* lookup(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, std::vector<Pronunciation>, std::less<>>&
  entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::vector<Pronunciation>, std::less<>> entries_;
};

enum class Level { word, phoneme, viseme };

const char* level_name(Level level);
std::optional<Level> level_from_name(std::string_view name);

// A list of utterances, each a sequence of uppercase labels.
struct Transcript {
  Level level = Level::word;
  std::vector<std::vector<std::string>> utterances;

  // One utterance per line, whitespace separated; empty lines skipped.
  static Transcript parse(std::string_view text, Level level);

  // Canonical form: single spaces, one utterance per line, trailing newline.
  std::string serialize() const;

  std::size_t label_count() const;
};

// Replaces every word by its first listed pronunciation. Utterance
// boundaries are preserved and no silence is inserted.
Transcript words_to_phonemes(const Transcript& words,
                             const PronunciationDict& dict);

}  // namespace p2v

#endif  // P2V_TRANSCRIPT_HPP

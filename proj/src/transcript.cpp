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

#include "p2v/transcript.hpp"

#include <sstream>

#include "p2v/errors.hpp"
#include "util.hpp"

namespace p2v {

bool is_silence_token(std::string_view name) {
  return name == "SIL" || name == "SP";
}

static void check_symbol_name(const std::string& name) {
  if (name.empty())
    throw P2vError(ErrorCode::FormatError, "empty phoneme name");
  if (name.find('/') != std::string::npos)
    throw P2vError(ErrorCode::FormatError,
                   "phoneme name may not contain '/': " + name);
}

PhonemeInventory::PhonemeInventory(std::vector<PhonemeSymbol> symbols)
    : symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    check_symbol_name(symbols_[i].name);
    auto [it, inserted] = index_.emplace(symbols_[i].name, i);
    if (!inserted)
      throw P2vError(ErrorCode::DuplicateSymbol, symbols_[i].name);
  }
}

PhonemeInventory PhonemeInventory::parse(std::string_view text) {
  std::vector<PhonemeSymbol> symbols;
  int line_no = 0;
  for (const std::string& raw : util::split_lines(text)) {
    ++line_no;
    std::string line = util::trim(util::strip_comment(raw));
    if (line.empty()) continue;
    std::vector<std::string> fields = util::split_ws(line);
    if (fields.size() != 2)
      throw P2vError(ErrorCode::FormatError,
                     "inventory line " + std::to_string(line_no) +
                         ": expected 'SYMBOL CLASS', got '" + line + "'");
    std::string name = util::to_upper(fields[0]);
    std::string cls_token = util::to_upper(fields[1]);
    PhonemeClass cls;
    if (cls_token == "V") cls = PhonemeClass::vowel;
    else if (cls_token == "C") cls = PhonemeClass::consonant;
    else if (cls_token == "S") cls = PhonemeClass::silence;
    else
      throw P2vError(ErrorCode::BadClass,
                     "line " + std::to_string(line_no) + ": '" + fields[1] +
                         "' (expected v, c or s)");
    // Only the designated silence tokens may carry the silence class.
    if (cls == PhonemeClass::silence && !is_silence_token(name))
      throw P2vError(ErrorCode::BadClass,
                     "silence class is reserved for SIL/SP, got " + name);
    if (is_silence_token(name) && cls != PhonemeClass::silence)
      throw P2vError(ErrorCode::BadClass, name + " must have class s");
    symbols.push_back({std::move(name), cls});
  }
  if (symbols.empty())
    throw P2vError(ErrorCode::EmptyInventory, "no symbols in inventory");
  return PhonemeInventory(std::move(symbols));
}

bool PhonemeInventory::contains(std::string_view name) const {
  return class_of(name).has_value();
}

std::optional<PhonemeClass> PhonemeInventory::class_of(
    std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) {
    // Names are case-insensitive; the index stores them uppercase.
    it = index_.find(util::to_upper(name));
    if (it == index_.end()) return std::nullopt;
  }
  return symbols_[it->second].cls;
}

std::string PhonemeInventory::serialize() const {
  std::ostringstream out;
  for (const PhonemeSymbol& s : symbols_) {
    char cls = s.cls == PhonemeClass::vowel ? 'v'
               : s.cls == PhonemeClass::consonant ? 'c'
                                                  : 's';
    out << s.name << ' ' << cls << '\n';
  }
  return out.str();
}

PronunciationDict PronunciationDict::parse(std::string_view text,
                                           const PhonemeInventory& inventory) {
  PronunciationDict dict;
  int line_no = 0;
  for (const std::string& raw : util::split_lines(text)) {
    ++line_no;
    if (!raw.empty() && raw[0] == '#') continue;
    std::string line = util::trim(raw);
    if (line.empty()) continue;
    std::vector<std::string> fields = util::split_ws(line);
    std::string word = util::to_upper(fields[0]);
    if (fields.size() < 2)
      throw P2vError(ErrorCode::EmptyPronunciation,
                     word + " (line " + std::to_string(line_no) + ")");
    Pronunciation pron;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      std::string ph = util::to_upper(fields[i]);
      if (!inventory.contains(ph))
        throw P2vError(ErrorCode::UnknownPhoneme, word + ": " + ph);
      pron.push_back(std::move(ph));
    }
    dict.entries_[word].push_back(std::move(pron));
  }
  return dict;
}

const std::vector<PronunciationDict::Pronunciation>* PronunciationDict::lookup(
    std::string_view word) const {
  auto it = entries_.find(word);
  return it == entries_.end() ? nullptr : &it->second;
}

const char* level_name(Level level) {
  switch (level) {
    case Level::word: return "word";
    case Level::phoneme: return "phoneme";
    case Level::viseme: return "viseme";
  }
  return "?";
}

std::optional<Level> level_from_name(std::string_view name) {
  if (name == "word") return Level::word;
  if (name == "phoneme") return Level::phoneme;
  if (name == "viseme") return Level::viseme;
  return std::nullopt;
}

Transcript Transcript::parse(std::string_view text, Level level) {
  Transcript t;
  t.level = level;
  for (const std::string& raw : util::split_lines(text)) {
    std::vector<std::string> labels = util::split_ws(raw);
    if (labels.empty()) continue;
    for (std::string& l : labels) l = util::to_upper(l);
    t.utterances.push_back(std::move(labels));
  }
  if (t.utterances.empty())
    throw P2vError(ErrorCode::EmptyTranscript, "no utterances");
  return t;
}

std::string Transcript::serialize() const {
  std::ostringstream out;
  for (const auto& utt : utterances) {
    for (std::size_t i = 0; i < utt.size(); ++i) {
      if (i) out << ' ';
      out << utt[i];
    }
    out << '\n';
  }
  return out.str();
}

std::size_t Transcript::label_count() const {
  std::size_t n = 0;
  for (const auto& utt : utterances) n += utt.size();
  return n;
}

Transcript words_to_phonemes(const Transcript& words,
                             const PronunciationDict& dict) {
  if (words.level != Level::word)
    throw PreconditionError("words_to_phonemes needs a word-level transcript");
  Transcript out;
  out.level = Level::phoneme;
  out.utterances.reserve(words.utterances.size());
  for (std::size_t u = 0; u < words.utterances.size(); ++u) {
    std::vector<std::string> phonemes;
    for (const std::string& word : words.utterances[u]) {
      const auto* prons = dict.lookup(word);
      if (!prons)
        throw P2vError(ErrorCode::OovWord,
                       word + " (utterance " + std::to_string(u + 1) + ")");
      // First listed pronunciation wins.
      const auto& first = prons->front();
      phonemes.insert(phonemes.end(), first.begin(), first.end());
    }
    out.utterances.push_back(std::move(phonemes));
  }
  return out;
}

}  // namespace p2v

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

#include <doctest.h>

#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "p2v/errors.hpp"
#include "p2v/transcript.hpp"

using namespace p2v;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("inventory parses symbols in file order with classes") {
  PhonemeInventory inv = PhonemeInventory::parse("AH v\nB c\nSIL s");
  REQUIRE(inv.size() == 3);
  CHECK(inv.symbols()[0].name == "AH");
  CHECK(inv.symbols()[0].cls == PhonemeClass::vowel);
  CHECK(inv.symbols()[1].name == "B");
  CHECK(inv.symbols()[1].cls == PhonemeClass::consonant);
  CHECK(inv.symbols()[2].name == "SIL");
  CHECK(inv.symbols()[2].cls == PhonemeClass::silence);
  CHECK(inv.contains("ah"));  // lookups are by uppercase name
  CHECK(inv.class_of("B") == PhonemeClass::consonant);
}

TEST_CASE("inventory rejects duplicates, bad classes and empty files") {
  CHECK_THROWS_WITH_AS(PhonemeInventory::parse("B c\nB c"),
                       doctest::Contains("DuplicateSymbol"), P2vError);
  CHECK_THROWS_WITH_AS(PhonemeInventory::parse("B q"),
                       doctest::Contains("BadClass"), P2vError);
  CHECK_THROWS_WITH_AS(PhonemeInventory::parse("# only a comment\n"),
                       doctest::Contains("EmptyInventory"), P2vError);
  // The silence class is reserved for SIL/SP and mandatory for them.
  CHECK_THROWS_AS(PhonemeInventory::parse("B s"), P2vError);
  CHECK_THROWS_AS(PhonemeInventory::parse("SIL v"), P2vError);
}

TEST_CASE("inventory comments and blank lines are skipped") {
  PhonemeInventory inv =
      PhonemeInventory::parse("# header\nAH v  # open vowel\n\nB c\n");
  CHECK(inv.size() == 2);
}

TEST_CASE("seven-symbol demo inventory has seven consonants") {
  PhonemeInventory inv =
      PhonemeInventory::parse(read_file(std::string(P2V_DATA_DIR) +
                                        "/inventories/demo7.inv"));
  REQUIRE(inv.size() == 7);
  for (const PhonemeSymbol& s : inv.symbols())
    CHECK(s.cls == PhonemeClass::consonant);
}

TEST_CASE("dictionary accumulates pronunciations in file order") {
  PhonemeInventory inv = PhonemeInventory::parse("AH v\nEY v\nAE v\nB c\nD c");
  PronunciationDict dict =
      PronunciationDict::parse("A  AH\nA  EY\nBAD  B AE D", inv);
  REQUIRE(dict.lookup("A") != nullptr);
  CHECK(dict.lookup("A")->size() == 2);
  CHECK(dict.lookup("A")->front() == PronunciationDict::Pronunciation{"AH"});
  REQUIRE(dict.lookup("BAD") != nullptr);
  CHECK(dict.lookup("BAD")->size() == 1);
  CHECK(dict.lookup("MISSING") == nullptr);
}

TEST_CASE("dictionary rejects unknown phonemes and blank pronunciations") {
  PhonemeInventory inv = PhonemeInventory::parse("AE v\nB c\nD c");
  CHECK_THROWS_WITH_AS(PronunciationDict::parse("BAD  B AE QX", inv),
                       doctest::Contains("UnknownPhoneme"), P2vError);
  CHECK_THROWS_WITH_AS(PronunciationDict::parse("BAD", inv),
                       doctest::Contains("EmptyPronunciation"), P2vError);
}

TEST_CASE("visually-merged words stay distinct at the phoneme level") {
  PhonemeInventory inv = PhonemeInventory::parse("AE v\nB c\nP c\nM c\nD c");
  PronunciationDict dict = PronunciationDict::parse(
      "BAD  B AE D\nPAD  P AE D\nMAD  M AE D", inv);
  auto bad = dict.lookup("BAD")->front();
  auto pad = dict.lookup("PAD")->front();
  auto mad = dict.lookup("MAD")->front();
  CHECK(bad != pad);
  CHECK(pad != mad);
  CHECK(bad != mad);
}

TEST_CASE("words_to_phonemes uses the first pronunciation and keeps boundaries") {
  PhonemeInventory inv = PhonemeInventory::parse("AH v\nEY v\nAE v\nB c\nD c");
  PronunciationDict dict =
      PronunciationDict::parse("A  AH\nA  EY\nBAD  B AE D", inv);

  Transcript words = Transcript::parse("BAD", Level::word);
  CHECK(words_to_phonemes(words, dict).utterances[0] ==
        std::vector<std::string>{"B", "AE", "D"});

  Transcript just_a = Transcript::parse("A", Level::word);
  CHECK(words_to_phonemes(just_a, dict).utterances[0] ==
        std::vector<std::string>{"AH"});

  Transcript both = Transcript::parse("BAD A", Level::word);
  Transcript phonemes = words_to_phonemes(both, dict);
  REQUIRE(phonemes.utterances.size() == 1);
  CHECK(phonemes.utterances[0] ==
        std::vector<std::string>{"B", "AE", "D", "AH"});
  CHECK(phonemes.level == Level::phoneme);
}

TEST_CASE("words_to_phonemes reports out-of-vocabulary words") {
  PhonemeInventory inv = PhonemeInventory::parse("AE v\nB c\nD c");
  PronunciationDict dict = PronunciationDict::parse("BAD  B AE D", inv);
  Transcript words = Transcript::parse("BAD\nZZZ BAD", Level::word);
  CHECK_THROWS_WITH_AS(words_to_phonemes(words, dict),
                       doctest::Contains("ZZZ (utterance 2)"), P2vError);
}

TEST_CASE("transcript parsing splits utterances by line") {
  Transcript t = Transcript::parse("B AE D\nP AE D", Level::phoneme);
  REQUIRE(t.utterances.size() == 2);
  CHECK(t.utterances[1][0] == "P");
  CHECK_THROWS_WITH_AS(Transcript::parse("", Level::phoneme),
                       doctest::Contains("EmptyTranscript"), P2vError);
  CHECK_THROWS_AS(Transcript::parse("\n \n\t\n", Level::phoneme), P2vError);
}

TEST_CASE("a 28-line file gives 28 utterances") {
  std::string text;
  for (int i = 0; i < 28; ++i) text += "A B\n";
  CHECK(Transcript::parse(text, Level::word).utterances.size() == 28);
}

TEST_CASE("transcript round-trip canonicalizes whitespace and case") {
  testing::TestRng rng(2024);
  const char* tokens[] = {"a", "B", "ch", "D2"};
  for (int iter = 0; iter < 200; ++iter) {
    std::string messy;
    int lines = static_cast<int>(rng.next_int(1, 4));
    for (int l = 0; l < lines; ++l) {
      int n = static_cast<int>(rng.next_int(1, 5));
      for (int i = 0; i < n; ++i) {
        messy += std::string(static_cast<std::size_t>(rng.next_int(0, 2)), ' ');
        messy += tokens[rng.next_int(0, 3)];
        messy += std::string(static_cast<std::size_t>(rng.next_int(1, 3)), ' ');
      }
      messy += rng.next_int(0, 1) ? "\n" : "\n\n";
    }
    Transcript t = Transcript::parse(messy, Level::word);
    // Canonical form: uppercase, single spaces, no blank lines.
    Transcript again = Transcript::parse(t.serialize(), Level::word);
    CHECK(again.utterances == t.utterances);
    CHECK(again.serialize() == t.serialize());
  }
}

TEST_CASE("words_to_phonemes output length is the sum of pronunciation lengths") {
  PhonemeInventory inv = PhonemeInventory::parse("AH v\nAE v\nB c\nD c\nS c");
  PronunciationDict dict = PronunciationDict::parse(
      "ONE  AH\nTWO  B AE\nTHREE  B AE D\nFOUR  B AE D S", inv);
  const char* words[] = {"ONE", "TWO", "THREE", "FOUR"};
  std::size_t lens[] = {1, 2, 3, 4};
  testing::TestRng rng(7);
  for (int iter = 0; iter < 100; ++iter) {
    std::string line;
    std::size_t expected = 0;
    int n = static_cast<int>(rng.next_int(1, 6));
    for (int i = 0; i < n; ++i) {
      int w = static_cast<int>(rng.next_int(0, 3));
      line += words[w];
      line += ' ';
      expected += lens[w];
    }
    Transcript t = Transcript::parse(line, Level::word);
    CHECK(words_to_phonemes(t, dict).utterances[0].size() == expected);
  }
}

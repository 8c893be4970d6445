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

#include <set>

#include "oracles.hpp"
#include "p2v/derivation.hpp"
#include "p2v/errors.hpp"
#include "util_test.hpp"

using namespace p2v;

namespace {

ConfusionMatrix demo_matrix() {
  return ConfusionMatrix::from_csv(
      testing::read_data_file("confusions/demo7.csv"));
}

PhonemeInventory demo_inventory() {
  return PhonemeInventory::parse(
      testing::read_data_file("inventories/demo7.inv"));
}

std::vector<std::vector<std::string>> class_lists(const VisemeMap& map) {
  std::vector<std::vector<std::string>> out;
  for (const VisemeClass& c : map.classes()) out.push_back(c.phonemes);
  return out;
}

// Random confusion matrix over n labels; diag_bias controls how much of
// the mass stays on the diagonal.
ConfusionMatrix random_matrix(testing::TestRng& rng, int n, int max_count,
                              int zero_chance_pct,
                              const std::vector<std::string>& labels) {
  ConfusionMatrix m(labels);
  for (int t = 0; t < n; ++t)
    for (int p = 0; p < n; ++p) {
      if (rng.next_int(0, 99) < zero_chance_pct) continue;
      m.at(t, p) = rng.next_int(0, max_count);
    }
  return m;
}

}  // namespace

TEST_CASE("mutual confusability is the clique test on the demo graph") {
  ConfusionMatrix m = demo_matrix();
  DerivationConfig cfg{Variant::B1, demo_inventory(), 1};
  ConfusionGraph g = ConfusionGraph::build(m, cfg);

  CHECK(g.weight("P1", "P7") == 5);  // 4 + 1
  CHECK(g.weight("P3", "P7") == 4);  // 1 + 3
  CHECK(g.weight("P1", "P3") == 1);  // 0 + 1

  std::vector<std::string> trio = {"P1", "P3", "P7"};
  CHECK(mutually_confusable(g, trio));
  std::vector<std::string> pair = {"P2", "P5"};
  CHECK_FALSE(mutually_confusable(g, pair));

  std::vector<std::string> single = {"P1"};
  CHECK_THROWS_AS(mutually_confusable(g, single), PreconditionError);
  std::vector<std::string> self_pair = {"P1", "P1"};
  CHECK_THROWS_AS(mutually_confusable(g, self_pair), PreconditionError);
}

TEST_CASE("strict derivation reproduces the worked demo partition") {
  DerivationConfig cfg{Variant::B1, demo_inventory(), 1};
  VisemeMap map = derive_strict(demo_matrix(), cfg);
  std::vector<std::vector<std::string>> expected = {
      {"P6"}, {"P1", "P3", "P7"}, {"P2", "P4"}, {"P5"}};
  CHECK(class_lists(map) == expected);
  CHECK(map.garbage().empty());
  CHECK(map.classes()[0].label == "v01");
  CHECK(map.classes()[3].label == "v04");
}

TEST_CASE("a diagonal-only matrix derives to singletons with empty garbage") {
  PhonemeInventory inv = PhonemeInventory::parse("Q1 c\nQ2 c\nQ3 c\nQ4 c");
  std::vector<std::string> labels = {"Q1", "Q2", "Q3", "Q4"};
  ConfusionMatrix m(labels);
  for (int i = 0; i < 4; ++i) m.at(i, i) = 3;
  DerivationConfig cfg{Variant::B1, inv, 1};
  VisemeMap map = derive_strict(m, cfg);
  CHECK(map.classes().size() == 4);
  for (const VisemeClass& c : map.classes()) CHECK(c.phonemes.size() == 1);
  CHECK(map.garbage().empty());
}

TEST_CASE("inventory phonemes absent from the matrix land in GAR") {
  PhonemeInventory inv =
      PhonemeInventory::parse("P1 c\nP2 c\nEXTRA1 c\nEXTRA2 v\nSIL s\nSP s");
  std::vector<std::string> labels = {"P1", "P2"};
  ConfusionMatrix m(labels);
  m.at(0, 1) = 2;
  m.at(1, 0) = 1;
  DerivationConfig cfg{Variant::B1, inv, 1};
  VisemeMap map = derive(m, cfg);
  CHECK(class_lists(map) ==
        std::vector<std::vector<std::string>>{{"P1", "P2"}});
  CHECK(map.garbage() == std::vector<std::string>{"EXTRA1", "EXTRA2"});
  CHECK(map.silence() == std::vector<std::string>{"SIL", "SP"});
}

TEST_CASE("silence labels in the matrix are excluded from clustering") {
  PhonemeInventory inv = PhonemeInventory::parse("P1 c\nP2 c\nSIL s\nSP s");
  std::vector<std::string> labels = {"P1", "P2", "SIL"};
  ConfusionMatrix m(labels);
  m.at(0, 2) = 5;  // P1 confused with silence only
  m.at(1, 1) = 1;
  DerivationConfig cfg{Variant::B3, inv, 1};
  VisemeMap map = derive(m, cfg);
  // P1's only confusion partner is silence, so it stays a singleton even
  // under relaxation, and SIL never becomes a class member.
  CHECK(class_lists(map) ==
        std::vector<std::vector<std::string>>{{"P2"}, {"P1"}});
  CHECK(map.silence() == std::vector<std::string>{"SIL", "SP"});
}

TEST_CASE("matrix labels must be inventory members") {
  PhonemeInventory inv = PhonemeInventory::parse("P1 c");
  std::vector<std::string> labels = {"P1", "QX"};
  ConfusionMatrix m(labels);
  DerivationConfig cfg{Variant::B1, inv, 1};
  CHECK_THROWS_WITH_AS(derive_strict(m, cfg),
                       doctest::Contains("UnknownLabel"), P2vError);
}

TEST_CASE("an empty matrix cannot be derived from") {
  DerivationConfig cfg{Variant::B1, demo_inventory(), 1};
  CHECK_THROWS_WITH_AS(derive_strict(ConfusionMatrix{}, cfg),
                       doctest::Contains("EmptyConfusion"), P2vError);
}

TEST_CASE("relaxation merges the demo leftover by total confusion 4 vs 3") {
  DerivationConfig cfg{Variant::B3, demo_inventory(), 1};
  ConfusionMatrix m = demo_matrix();
  VisemeMap strict = derive_strict(m, cfg);
  DerivationLog log;
  VisemeMap relaxed = relax(strict, m, cfg, &log);

  std::vector<std::vector<std::string>> expected = {
      {"P6"}, {"P1", "P3", "P5", "P7"}, {"P2", "P4"}};
  CHECK(class_lists(relaxed) == expected);
  REQUIRE(log.merges.size() == 1);
  CHECK(log.merges[0].phoneme == "P5");
  CHECK(log.merges[0].target_score == 4);
  CHECK(log.merges[0].runner_up_score == 3);

  // Labels renumber in surviving creation order.
  CHECK(relaxed.classes()[0].label == "v01");
  CHECK(relaxed.classes()[1].label == "v02");
  CHECK(relaxed.classes()[2].label == "v03");
}

TEST_CASE("relaxation leaves maps without confusable singletons unchanged") {
  PhonemeInventory inv = PhonemeInventory::parse("Q1 c\nQ2 c\nQ3 c");
  std::vector<std::string> labels = {"Q1", "Q2", "Q3"};
  ConfusionMatrix m(labels);
  m.at(0, 1) = 1;
  m.at(1, 0) = 2;
  m.at(2, 2) = 5;  // pure diagonal singleton
  DerivationConfig cfg{Variant::B3, inv, 1};
  VisemeMap strict = derive_strict(m, cfg);
  DerivationLog log;
  VisemeMap relaxed = relax(strict, m, cfg, &log);
  CHECK(class_lists(relaxed) == class_lists(strict));
  CHECK(log.merges.empty());
}

TEST_CASE("relax rejects a map that does not match the matrix") {
  PhonemeInventory inv = PhonemeInventory::parse("Q1 c\nQ2 c\nQ3 c");
  std::vector<std::string> labels = {"Q1", "Q2"};
  ConfusionMatrix m(labels);
  m.at(0, 1) = 1;
  VisemeMap wrong("w", MapKind::combined, false, {{"v01", {"Q1", "Q3"}}}, {},
                  {}, inv);
  DerivationConfig cfg{Variant::B3, inv, 1};
  CHECK_THROWS_WITH_AS(relax(wrong, m, cfg),
                       doctest::Contains("LabelMismatch"), P2vError);
}

TEST_CASE("derive dispatches strict and relaxed variants") {
  DerivationConfig b1{Variant::B1, demo_inventory(), 1};
  DerivationConfig b3{Variant::B3, demo_inventory(), 1};
  CHECK(class_lists(derive(demo_matrix(), b1)) ==
        std::vector<std::vector<std::string>>{
            {"P6"}, {"P1", "P3", "P7"}, {"P2", "P4"}, {"P5"}});
  CHECK(class_lists(derive(demo_matrix(), b3)) ==
        std::vector<std::vector<std::string>>{
            {"P6"}, {"P1", "P3", "P5", "P7"}, {"P2", "P4"}});
}

TEST_CASE("split is vacuous when every label has the same class") {
  DerivationConfig b1{Variant::B1, demo_inventory(), 1};
  DerivationConfig b2{Variant::B2, demo_inventory(), 1};
  VisemeMap m1 = derive(demo_matrix(), b1);
  VisemeMap m2 = derive(demo_matrix(), b2);
  CHECK(class_lists(m1) == class_lists(m2));
  CHECK_FALSE(m1.split());
  CHECK(m2.split());
}

TEST_CASE("split variants never mix vowels and consonants") {
  PhonemeInventory inv = PhonemeInventory::parse(
      "AA v\nEE v\nII v\nB c\nC c\nD c");
  std::vector<std::string> labels = {"AA", "EE", "II", "B", "C", "D"};
  testing::TestRng rng(4242);
  for (int iter = 0; iter < 200; ++iter) {
    ConfusionMatrix m = random_matrix(rng, 6, 4, 55, labels);
    for (Variant v : {Variant::B2, Variant::B4}) {
      DerivationConfig cfg{v, inv, 1};
      VisemeMap map = derive(m, cfg);
      CHECK(validate_map(map).clean());  // includes the mixed-class check
    }
  }
}

TEST_CASE("strict derivation matches the exhaustive subset oracle") {
  PhonemeInventory inv = PhonemeInventory::parse(
      "L1 c\nL2 c\nL3 c\nL4 c\nL5 c\nL6 c");
  std::vector<std::string> labels = {"L1", "L2", "L3", "L4", "L5", "L6"};
  testing::TestRng rng(777);
  for (int iter = 0; iter < 150; ++iter) {
    ConfusionMatrix m = random_matrix(rng, 6, 5, 50, labels);
    DerivationConfig cfg{Variant::B1, inv, 1};
    VisemeMap map = derive_strict(m, cfg);
    CHECK(class_lists(map) == testing::subset_enumeration_strict(m, cfg));
  }
}

TEST_CASE("derived maps are partitions whose multi-classes are cliques") {
  PhonemeInventory inv = PhonemeInventory::parse(
      "A1 v\nA2 v\nA3 v\nB1 c\nB2 c\nB3 c\nB4 c\nSIL s\nSP s");
  std::vector<std::string> labels = {"A1", "A2", "A3", "B1",
                                     "B2", "B3", "B4"};
  testing::TestRng rng(12345);
  for (int iter = 0; iter < 150; ++iter) {
    ConfusionMatrix m = random_matrix(rng, 7, 4, 60, labels);
    Variant variant = static_cast<Variant>(rng.next_int(0, 3));
    DerivationConfig cfg{variant, inv, 1};
    VisemeMap map = derive(m, cfg);

    // Partition: every inventory phoneme in exactly one place.
    std::set<std::string> seen;
    std::size_t total = 0;
    for (const VisemeClass& c : map.classes()) {
      for (const std::string& ph : c.phonemes) {
        CHECK(seen.insert(ph).second);
        ++total;
      }
    }
    for (const std::string& ph : map.garbage()) {
      CHECK(seen.insert(ph).second);
      ++total;
    }
    for (const std::string& ph : map.silence()) {
      CHECK(seen.insert(ph).second);
      ++total;
    }
    CHECK(total == inv.size());

    // Multi-phoneme classes of the strict pass are cliques.
    if (!variant_is_relaxed(variant)) {
      ConfusionGraph g = ConfusionGraph::build(m, cfg);
      for (const VisemeClass& c : map.classes())
        if (c.phonemes.size() >= 2) CHECK(mutually_confusable(g, c.phonemes));
    }
  }
}

TEST_CASE("relax only ever shrinks the class count and grows multis") {
  PhonemeInventory inv = PhonemeInventory::parse(
      "A1 v\nA2 v\nB1 c\nB2 c\nB3 c\nB4 c");
  std::vector<std::string> labels = {"A1", "A2", "B1", "B2", "B3", "B4"};
  testing::TestRng rng(2718);
  for (int iter = 0; iter < 200; ++iter) {
    ConfusionMatrix m = random_matrix(rng, 6, 4, 55, labels);
    Variant variant = rng.next_int(0, 1) ? Variant::B3 : Variant::B4;
    DerivationConfig cfg{variant, inv, 1};
    VisemeMap strict = derive_strict(m, cfg);
    VisemeMap relaxed = relax(strict, m, cfg);
    CHECK(relaxed.classes().size() <= strict.classes().size());
    // Every multi-phoneme strict class survives intact inside some
    // relaxed class.
    for (const VisemeClass& c : strict.classes()) {
      if (c.phonemes.size() < 2) continue;
      bool contained = false;
      for (const VisemeClass& rc : relaxed.classes()) {
        std::set<std::string> members(rc.phonemes.begin(), rc.phonemes.end());
        bool all = true;
        for (const std::string& ph : c.phonemes)
          if (!members.count(ph)) all = false;
        if (all) contained = true;
      }
      CHECK(contained);
    }
  }
}

TEST_CASE("scaling all counts leaves the derived partition unchanged") {
  PhonemeInventory inv = PhonemeInventory::parse(
      "A1 v\nA2 v\nB1 c\nB2 c\nB3 c\nB4 c");
  std::vector<std::string> labels = {"A1", "A2", "B1", "B2", "B3", "B4"};
  testing::TestRng rng(1618);
  for (int iter = 0; iter < 100; ++iter) {
    ConfusionMatrix m = random_matrix(rng, 6, 4, 55, labels);
    ConfusionMatrix scaled(labels);
    for (std::size_t t = 0; t < 6; ++t)
      for (std::size_t p = 0; p < 6; ++p) scaled.at(t, p) = 3 * m.at(t, p);
    for (int v = 0; v < 4; ++v) {
      DerivationConfig cfg{static_cast<Variant>(v), inv, 1};
      CHECK(class_lists(derive(m, cfg)) == class_lists(derive(scaled, cfg)));
    }
  }
}

TEST_CASE("derivation is deterministic across repeated runs") {
  DerivationConfig cfg{Variant::B3, demo_inventory(), 1};
  VisemeMap first = derive(demo_matrix(), cfg);
  for (int i = 0; i < 5; ++i) {
    VisemeMap again = derive(demo_matrix(), cfg);
    CHECK(again.serialize() == first.serialize());
  }
}

TEST_CASE("min_confusion raises the edge threshold for the strict pass") {
  PhonemeInventory inv = PhonemeInventory::parse("Q1 c\nQ2 c\nQ3 c");
  std::vector<std::string> labels = {"Q1", "Q2", "Q3"};
  ConfusionMatrix m(labels);
  m.at(0, 1) = 1;  // w(Q1,Q2) = 1
  m.at(1, 2) = 3;  // w(Q2,Q3) = 3
  DerivationConfig loose{Variant::B1, inv, 1};
  DerivationConfig tight{Variant::B1, inv, 2};
  CHECK(class_lists(derive_strict(m, loose)) ==
        std::vector<std::vector<std::string>>{{"Q2", "Q3"}, {"Q1"}});
  CHECK(class_lists(derive_strict(m, tight)) ==
        std::vector<std::vector<std::string>>{{"Q2", "Q3"}, {"Q1"}});
  DerivationConfig very_tight{Variant::B1, inv, 4};
  CHECK(class_lists(derive_strict(m, very_tight)) ==
        std::vector<std::vector<std::string>>{{"Q1"}, {"Q2"}, {"Q3"}});
}

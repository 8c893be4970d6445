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

#include "p2v/derivation.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "p2v/errors.hpp"

namespace p2v {

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::B1: return "B1";
    case Variant::B2: return "B2";
    case Variant::B3: return "B3";
    case Variant::B4: return "B4";
  }
  return "?";
}

std::optional<Variant> variant_from_name(std::string_view name) {
  if (name == "B1" || name == "b1") return Variant::B1;
  if (name == "B2" || name == "b2") return Variant::B2;
  if (name == "B3" || name == "b3") return Variant::B3;
  if (name == "B4" || name == "b4") return Variant::B4;
  return std::nullopt;
}

bool variant_is_split(Variant v) {
  return v == Variant::B2 || v == Variant::B4;
}

bool variant_is_relaxed(Variant v) {
  return v == Variant::B3 || v == Variant::B4;
}

ConfusionGraph ConfusionGraph::build(const ConfusionMatrix& m,
                                     const DerivationConfig& cfg) {
  ConfusionGraph g;
  g.min_confusion_ = cfg.min_confusion;
  for (const std::string& label : m.labels()) {
    if (is_silence_token(label)) continue;
    g.nodes_.push_back(label);
  }
  const std::size_t k = g.nodes_.size();
  g.weights_.assign(k * k, 0);
  for (std::size_t a = 0; a < k; ++a) {
    std::size_t ia = m.index_of(g.nodes_[a]);
    for (std::size_t b = a + 1; b < k; ++b) {
      std::size_t ib = m.index_of(g.nodes_[b]);
      long long w = m.at(ia, ib) + m.at(ib, ia);
      g.weights_[a * k + b] = w;
      g.weights_[b * k + a] = w;
    }
  }
  return g;
}

std::size_t ConfusionGraph::index(std::string_view name) const {
  auto it = std::find(nodes_.begin(), nodes_.end(), name);
  if (it == nodes_.end())
    throw PreconditionError("not a graph node: " + std::string(name));
  return static_cast<std::size_t>(it - nodes_.begin());
}

bool ConfusionGraph::has_node(std::string_view name) const {
  return std::find(nodes_.begin(), nodes_.end(), name) != nodes_.end();
}

long long ConfusionGraph::weight(std::string_view a, std::string_view b) const {
  return weights_[index(a) * nodes_.size() + index(b)];
}

bool ConfusionGraph::has_edge(std::string_view a, std::string_view b) const {
  return weight(a, b) >= min_confusion_;
}

bool mutually_confusable(const ConfusionGraph& g,
                         std::span<const std::string> group) {
  std::set<std::string_view> unique(group.begin(), group.end());
  if (unique.size() < 2)
    throw PreconditionError("mutually_confusable needs a group of >= 2");
  for (std::string_view name : unique)
    if (!g.has_node(name))
      throw PreconditionError("group member outside graph: " +
                              std::string(name));
  for (auto a = unique.begin(); a != unique.end(); ++a) {
    auto b = a;
    for (++b; b != unique.end(); ++b)
      if (!g.has_edge(*a, *b)) return false;
  }
  return true;
}

namespace {

// Adjacency view used during the clique search: graph edges restricted to
// same-class pairs when the variant is split.
struct EdgeView {
  const ConfusionGraph& graph;
  const DerivationConfig& cfg;
  bool split;

  bool connected(const std::string& a, const std::string& b) const {
    if (!graph.has_edge(a, b)) return false;
    if (!split) return true;
    return cfg.inventory.class_of(a) == cfg.inventory.class_of(b);
  }
};

// Bron-Kerbosch with pivoting over vertex index sets.
void bron_kerbosch(const std::vector<std::vector<bool>>& adj,
                   std::vector<int>& r, std::vector<int> p, std::vector<int> x,
                   std::vector<std::vector<int>>& out) {
  if (p.empty() && x.empty()) {
    out.push_back(r);
    return;
  }
  int pivot = -1;
  std::size_t best = 0;
  for (int u : p) {
    std::size_t deg = 0;
    for (int v : p)
      if (adj[u][v]) ++deg;
    if (pivot < 0 || deg > best) pivot = u, best = deg;
  }
  for (int u : x) {
    std::size_t deg = 0;
    for (int v : p)
      if (adj[u][v]) ++deg;
    if (pivot < 0 || deg > best) pivot = u, best = deg;
  }
  std::vector<int> candidates;
  for (int v : p)
    if (pivot < 0 || !adj[pivot][v]) candidates.push_back(v);
  for (int v : candidates) {
    std::vector<int> p2, x2;
    for (int w : p)
      if (adj[v][w]) p2.push_back(w);
    for (int w : x)
      if (adj[v][w]) x2.push_back(w);
    r.push_back(v);
    bron_kerbosch(adj, r, std::move(p2), std::move(x2), out);
    r.pop_back();
    p.erase(std::find(p.begin(), p.end(), v));
    x.push_back(v);
  }
}

long long clique_mass(const ConfusionGraph& g,
                      const std::vector<std::string>& members) {
  long long mass = 0;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      mass += g.weight(members[i], members[j]);
  return mass;
}

std::string class_label(std::size_t n) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "v%02zu", n);
  return std::string(buf);
}

// A label is a pure-diagonal singleton when it was only ever recognized as
// itself: positive diagonal and no off-diagonal mass in row or column
// (silence labels excluded).
std::vector<std::string> pure_diagonal_labels(const ConfusionMatrix& m) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const std::string& label = m.labels()[i];
    if (is_silence_token(label)) continue;
    if (m.at(i, i) <= 0) continue;
    long long off = 0;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j == i || is_silence_token(m.labels()[j])) continue;
      off += m.at(i, j) + m.at(j, i);
    }
    if (off == 0) out.push_back(label);
  }
  return out;
}

}  // namespace

VisemeMap derive_strict(const ConfusionMatrix& m, const DerivationConfig& cfg) {
  if (m.size() == 0)
    throw P2vError(ErrorCode::EmptyConfusion, "confusion matrix has no labels");
  for (const std::string& label : m.labels())
    if (!cfg.inventory.contains(label))
      throw P2vError(ErrorCode::UnknownLabel,
                     label + " not in the inventory");

  ConfusionGraph graph = ConfusionGraph::build(m, cfg);
  const bool split = variant_is_split(cfg.variant);
  EdgeView edges{graph, cfg, split};

  std::vector<VisemeClass> classes;
  std::set<std::string> assigned;

  // Step 1: pure-diagonal labels become single-phoneme visemes.
  for (const std::string& label : pure_diagonal_labels(m)) {
    classes.push_back({class_label(classes.size() + 1), {label}});
    assigned.insert(label);
  }

  // Step 2: repeatedly emit the winning clique of the unassigned nodes.
  std::vector<std::string> remaining;
  for (const std::string& node : graph.nodes())
    if (!assigned.count(node)) remaining.push_back(node);

  while (remaining.size() >= 2) {
    const std::size_t k = remaining.size();
    std::vector<std::vector<bool>> adj(k, std::vector<bool>(k, false));
    bool any_edge = false;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (edges.connected(remaining[i], remaining[j])) {
          adj[i][j] = adj[j][i] = true;
          any_edge = true;
        }
    if (!any_edge) break;

    std::vector<std::vector<int>> cliques;
    std::vector<int> r, p(k), x;
    for (std::size_t i = 0; i < k; ++i) p[i] = static_cast<int>(i);
    bron_kerbosch(adj, r, std::move(p), x, cliques);

    // Winner: largest size, then largest total pairwise confusion, then
    // lexicographically smallest sorted member list.
    std::vector<std::string> winner;
    long long winner_mass = -1;
    std::vector<std::string> winner_sorted;
    for (const std::vector<int>& clique : cliques) {
      if (clique.size() < 2) continue;
      std::vector<std::string> members;
      for (int idx : clique) members.push_back(remaining[idx]);
      std::vector<std::string> sorted = members;
      std::sort(sorted.begin(), sorted.end());
      long long mass = clique_mass(graph, members);
      bool better = false;
      if (members.size() != winner.size())
        better = members.size() > winner.size();
      else if (mass != winner_mass)
        better = mass > winner_mass;
      else
        better = sorted < winner_sorted;
      if (winner.empty() || better) {
        winner = std::move(members);
        winner_mass = mass;
        winner_sorted = std::move(sorted);
      }
    }
    if (winner.empty()) break;

    // Keep members in matrix label order.
    std::vector<std::string> ordered;
    for (const std::string& node : remaining)
      if (std::find(winner.begin(), winner.end(), node) != winner.end())
        ordered.push_back(node);
    classes.push_back({class_label(classes.size() + 1), ordered});
    for (const std::string& node : ordered) assigned.insert(node);
    std::erase_if(remaining, [&](const std::string& node) {
      return assigned.count(node) > 0;
    });
  }

  // Step 3: whatever is left becomes singleton visemes.
  for (const std::string& node : remaining)
    classes.push_back({class_label(classes.size() + 1), {node}});

  // Step 4: inventory phonemes absent from the matrix go to GAR; silence
  // tokens form the silence class.
  std::set<std::string> matrix_labels(m.labels().begin(), m.labels().end());
  std::vector<std::string> garbage;
  std::vector<std::string> silence;
  for (const PhonemeSymbol& s : cfg.inventory.symbols()) {
    if (s.cls == PhonemeClass::silence)
      silence.push_back(s.name);
    else if (!matrix_labels.count(s.name))
      garbage.push_back(s.name);
  }

  std::string name = cfg.variant == Variant::B1   ? "derived-b1"
                     : cfg.variant == Variant::B2 ? "derived-b2"
                     : cfg.variant == Variant::B3 ? "derived-b3"
                                                  : "derived-b4";
  return VisemeMap(name, MapKind::combined, split, std::move(classes),
                   std::move(garbage), std::move(silence), cfg.inventory);
}

VisemeMap relax(const VisemeMap& strict_map, const ConfusionMatrix& m,
                const DerivationConfig& cfg, DerivationLog* log) {
  // The strict map must cover exactly the matrix's non-silence labels.
  std::set<std::string> mapped;
  for (const VisemeClass& c : strict_map.classes())
    mapped.insert(c.phonemes.begin(), c.phonemes.end());
  std::set<std::string> expected;
  for (const std::string& label : m.labels())
    if (!is_silence_token(label)) expected.insert(label);
  if (mapped != expected)
    throw P2vError(ErrorCode::LabelMismatch,
                   "strict map does not cover the matrix labels");

  ConfusionGraph graph = ConfusionGraph::build(m, cfg);
  const bool split = variant_is_split(cfg.variant);

  std::vector<std::string> pure = pure_diagonal_labels(m);
  auto is_pure = [&](const std::string& ph) {
    return std::find(pure.begin(), pure.end(), ph) != pure.end();
  };

  // Work on mutable copies in creation order.
  std::vector<VisemeClass> classes = strict_map.classes();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].phonemes.size() != 1) continue;
    const std::string ph = classes[i].phonemes.front();
    if (is_pure(ph)) continue;

    // Total confusion against every other (non-empty) viseme, recomputed
    // against the map as already updated by earlier merges.
    long long best_score = 0, second_score = 0;
    std::size_t best_idx = classes.size();
    std::string second_label;
    for (std::size_t j = 0; j < classes.size(); ++j) {
      if (j == i || classes[j].phonemes.empty()) continue;
      if (split) {
        auto pc = cfg.inventory.class_of(ph);
        auto jc = cfg.inventory.class_of(classes[j].phonemes.front());
        if (pc != jc) continue;
      }
      long long score = 0;
      for (const std::string& q : classes[j].phonemes)
        score += graph.weight(ph, q);
      if (score > best_score) {
        second_score = best_score;
        second_label = best_idx < classes.size() ? classes[best_idx].label : "";
        best_score = score;
        best_idx = j;
      } else if (score > second_score) {
        second_score = score;
        second_label = classes[j].label;
      }
    }
    if (best_score <= 0) continue;  // no confusion anywhere, stays alone

    classes[best_idx].phonemes.push_back(ph);
    classes[i].phonemes.clear();
    if (log)
      log->merges.push_back({ph, classes[best_idx].label, best_score,
                             second_label, second_score});
  }

  // Drop emptied classes, restore matrix label order inside each class and
  // renumber in surviving creation order.
  std::vector<VisemeClass> survivors;
  for (VisemeClass& c : classes) {
    if (c.phonemes.empty()) continue;
    std::vector<std::string> ordered;
    for (const std::string& label : m.labels())
      if (std::find(c.phonemes.begin(), c.phonemes.end(), label) !=
          c.phonemes.end())
        ordered.push_back(label);
    survivors.push_back({class_label(survivors.size() + 1), ordered});
  }

  std::string name = strict_map.name();
  if (name.rfind("derived-b", 0) == 0) {
    name = cfg.variant == Variant::B4 ? "derived-b4" : "derived-b3";
  }
  return VisemeMap(name, strict_map.kind(), strict_map.split(),
                   std::move(survivors), strict_map.garbage(),
                   strict_map.silence(), strict_map.inventory());
}

VisemeMap derive(const ConfusionMatrix& m, const DerivationConfig& cfg,
                 DerivationLog* log) {
  VisemeMap strict = derive_strict(m, cfg);
  if (!variant_is_relaxed(cfg.variant)) return strict;
  return relax(strict, m, cfg, log);
}

std::string confusion_digest(const ConfusionMatrix& m) {
  std::string csv = m.to_csv();
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : csv) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a:%016llx",
                static_cast<unsigned long long>(hash));
  return std::string(buf);
}

}  // namespace p2v

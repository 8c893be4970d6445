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

#include "p2v/channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "p2v/errors.hpp"
#include "util.hpp"

namespace p2v {

namespace rng {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double to_unit_interval(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

}  // namespace rng

std::size_t ChannelModel::index_of(std::string_view label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end())
    throw P2vError(ErrorCode::UnknownLabel, std::string(label));
  return static_cast<std::size_t>(it - labels.begin());
}

static double parse_prob(const std::string& token) {
  char* end = nullptr;
  double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0' || v < 0.0 || v > 1.0)
    throw P2vError(ErrorCode::FormatError,
                   "bad probability '" + token + "'");
  return v;
}

ChannelModel ChannelModel::parse(std::string_view text) {
  ChannelModel model;
  bool have_labels = false;
  int line_no = 0;
  for (const std::string& raw : util::split_lines(text)) {
    ++line_no;
    std::string line = util::trim(util::strip_comment(raw));
    if (line.empty()) continue;
    std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw P2vError(ErrorCode::FormatError,
                     "channel line " + std::to_string(line_no) +
                         ": missing ':'");
    std::string key = util::trim(line.substr(0, colon));
    std::vector<std::string> args = util::split_ws(line.substr(colon + 1));
    if (key == "labels") {
      for (std::string& l : args) l = util::to_upper(l);
      model.labels = args;
      const std::size_t k = model.labels.size();
      model.sub_probs.assign(k, std::vector<double>(k, 0.0));
      model.p_del.assign(k, 0.0);
      model.ins_dist.assign(k, 0.0);
      have_labels = true;
    } else if (key == "sub") {
      if (!have_labels || args.size() != 3)
        throw P2vError(ErrorCode::FormatError,
                       "sub needs 'sub: IN OUT P' after labels");
      model.sub_probs[model.index_of(util::to_upper(args[0]))]
                     [model.index_of(util::to_upper(args[1]))] =
          parse_prob(args[2]);
    } else if (key == "del") {
      if (!have_labels || args.size() != 2)
        throw P2vError(ErrorCode::FormatError,
                       "del needs 'del: IN P' after labels");
      model.p_del[model.index_of(util::to_upper(args[0]))] =
          parse_prob(args[1]);
    } else if (key == "ins") {
      if (!have_labels || args.size() != 2)
        throw P2vError(ErrorCode::FormatError,
                       "ins needs 'ins: OUT P' after labels");
      model.ins_dist[model.index_of(util::to_upper(args[0]))] =
          parse_prob(args[1]);
    } else if (key == "p_ins") {
      if (args.size() != 1)
        throw P2vError(ErrorCode::FormatError, "p_ins needs one value");
      model.p_ins = parse_prob(args[0]);
    } else if (key == "seed") {
      if (args.size() != 1)
        throw P2vError(ErrorCode::FormatError, "seed needs one value");
      model.seed = std::strtoull(args[0].c_str(), nullptr, 10);
    } else {
      throw P2vError(ErrorCode::FormatError,
                     "unknown channel key '" + key + "'");
    }
  }
  if (!have_labels)
    throw P2vError(ErrorCode::FormatError, "channel file missing 'labels:'");
  model.validate();
  return model;
}

void ChannelModel::validate() const {
  const std::size_t k = labels.size();
  if (k == 0) throw P2vError(ErrorCode::FormatError, "channel has no labels");
  if (sub_probs.size() != k || p_del.size() != k || ins_dist.size() != k)
    throw P2vError(ErrorCode::FormatError, "channel table size mismatch");
  for (std::size_t i = 0; i < k; ++i) {
    double row = p_del[i];
    for (double p : sub_probs[i]) row += p;
    if (std::fabs(row - 1.0) > 1e-9)
      throw P2vError(ErrorCode::FormatError,
                     "sub row for " + labels[i] + " plus p_del sums to " +
                         std::to_string(row));
  }
  if (p_ins < 0.0 || p_ins > 0.5)
    throw P2vError(ErrorCode::FormatError, "p_ins must be in [0, 0.5]");
  if (p_ins > 0.0) {
    double sum = 0.0;
    for (double p : ins_dist) sum += p;
    if (std::fabs(sum - 1.0) > 1e-9)
      throw P2vError(ErrorCode::FormatError,
                     "ins distribution sums to " + std::to_string(sum));
  }
}

namespace {

// Draws an index from `dist` (plus an implicit tail that means "none").
// Returns dist.size() when the tail is hit.
std::size_t draw_categorical(const std::vector<double>& dist, double u) {
  double cum = 0.0;
  for (std::size_t j = 0; j < dist.size(); ++j) {
    cum += dist[j];
    if (u < cum) return j;
  }
  return dist.size();
}

}  // namespace

Transcript simulate(const Transcript& input, const ChannelModel& model) {
  model.validate();
  Transcript out;
  out.level = input.level;
  out.utterances.reserve(input.utterances.size());
  for (std::size_t u = 0; u < input.utterances.size(); ++u) {
    std::uint64_t state = model.seed ^ static_cast<std::uint64_t>(u);
    std::vector<std::string> emitted;
    const auto& utt = input.utterances[u];
    for (std::size_t t = 0; t <= utt.size(); ++t) {
      // Gap before position t (and after the last token): at most one
      // insertion.
      if (model.p_ins > 0.0) {
        double gap = rng::to_unit_interval(rng::splitmix64(state));
        if (gap < model.p_ins) {
          double pick = rng::to_unit_interval(rng::splitmix64(state));
          std::size_t j = draw_categorical(model.ins_dist, pick);
          if (j < model.labels.size()) emitted.push_back(model.labels[j]);
        }
      }
      if (t == utt.size()) break;
      std::size_t i = model.index_of(utt[t]);
      double pick = rng::to_unit_interval(rng::splitmix64(state));
      std::size_t j = draw_categorical(model.sub_probs[i], pick);
      if (j < model.labels.size()) emitted.push_back(model.labels[j]);
      // falling into the tail means the token was deleted
    }
    out.utterances.push_back(std::move(emitted));
  }
  return out;
}

}  // namespace p2v

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

#ifndef P2V_CHANNEL_HPP
#define P2V_CHANNEL_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "p2v/transcript.hpp"

namespace p2v {

// A memoryless noisy-recognizer channel. For each input token the channel
// deletes it with the per-label deletion probability or emits a label drawn
// from the token's substitution row; before each position and after the
// last one it inserts at most one label with probability p_ins.
//
// Randomness comes from a counter-based splitmix64 stream, so a given
// (seed, input) pair produces the same output on every platform. Utterance
// u uses the substream seeded with seed XOR u.
struct ChannelModel {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> sub_probs;  // row i: P(out=j | in=i)
  std::vector<double> p_del;                   // per input label
  double p_ins = 0.0;                          // per gap, at most one
  std::vector<double> ins_dist;                // label distribution
  std::uint64_t seed = 0;

  // Channel file format:
  //   labels: A B C
  //   sub: A A 0.9
  //   del: A 0.1
  //   ins: B 1.0
  //   p_ins: 0.05
  //   seed: 42
  // Unlisted sub/del/ins entries are zero.
  static ChannelModel parse(std::string_view text);

  // Row sums (sub row plus deletion) and the insertion distribution must
  // be 1 within 1e-9; p_ins must lie in [0, 0.5].
  void validate() const;

  std::size_t index_of(std::string_view label) const;
};

Transcript simulate(const Transcript& input, const ChannelModel& model);

namespace rng {

// splitmix64: the documented, platform-independent generator behind
// simulate(). Output i of stream s is mix(s + (i+1) * 0x9e3779b97f4a7c15).
std::uint64_t splitmix64(std::uint64_t& state);

// Uniform double in [0, 1) using the top 53 bits.
double to_unit_interval(std::uint64_t x);

}  // namespace rng

}  // namespace p2v

#endif  // P2V_CHANNEL_HPP

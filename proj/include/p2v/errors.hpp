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

#ifndef P2V_ERRORS_HPP
#define P2V_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace p2v {

// Every recoverable data/format failure carries one of these codes so that
// callers (and the CLI exit-code mapping) can react without string matching.
enum class ErrorCode {
  // transcript / dictionary / inventory
  DuplicateSymbol,
  BadClass,
  EmptyInventory,
  UnknownPhoneme,
  EmptyPronunciation,
  OovWord,
  EmptyTranscript,
  // viseme maps
  OverlapError,
  DegenerateMap,
  // alignment and scoring
  EmptyPair,
  EmptyReference,
  UnknownLabel,
  LabelMismatch,
  // derivation
  EmptyConfusion,
  // statistics
  TooFewMethods,
  TooFewSamples,
  UnsupportedK,
  UnsupportedAlpha,
  // generic I/O and format problems
  FormatError,
  IoError,
};

const char* error_code_name(ErrorCode code);

// Data-dependent failure: malformed input, unknown symbol, degenerate value.
// Exit code 3 territory in the CLI.
class P2vError : public std::runtime_error {
 public:
  P2vError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Caller broke a documented precondition; a bug, not bad data.
// Exit code 4 territory in the CLI.
class PreconditionError : public std::logic_error {
 public:
  explicit PreconditionError(const std::string& message)
      : std::logic_error(message) {}
};

}  // namespace p2v

#endif  // P2V_ERRORS_HPP

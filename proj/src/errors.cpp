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

#include "p2v/errors.hpp"

namespace p2v {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateSymbol: return "DuplicateSymbol";
    case ErrorCode::BadClass: return "BadClass";
    case ErrorCode::EmptyInventory: return "EmptyInventory";
    case ErrorCode::UnknownPhoneme: return "UnknownPhoneme";
    case ErrorCode::EmptyPronunciation: return "EmptyPronunciation";
    case ErrorCode::OovWord: return "OovWord";
    case ErrorCode::EmptyTranscript: return "EmptyTranscript";
    case ErrorCode::OverlapError: return "OverlapError";
    case ErrorCode::DegenerateMap: return "DegenerateMap";
    case ErrorCode::EmptyPair: return "EmptyPair";
    case ErrorCode::EmptyReference: return "EmptyReference";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::EmptyConfusion: return "EmptyConfusion";
    case ErrorCode::TooFewMethods: return "TooFewMethods";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::UnsupportedK: return "UnsupportedK";
    case ErrorCode::UnsupportedAlpha: return "UnsupportedAlpha";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace p2v

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

#ifndef P2V_VERSION_HPP
#define P2V_VERSION_HPP

namespace p2v {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kCatalogVersion = "1";
inline constexpr const char* kQTableVersion = "nemenyi-k2-20-demsar2006";
inline constexpr const char* kTieBreakVersion = "size-confusion-lex/1";

}  // namespace p2v

#endif  // P2V_VERSION_HPP

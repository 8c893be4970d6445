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

#ifndef P2V_SRC_UTIL_HPP
#define P2V_SRC_UTIL_HPP

#include <string>
#include <string_view>
#include <vector>

namespace p2v::util {

std::string to_upper(std::string_view s);
std::string trim(std::string_view s);
std::vector<std::string> split_ws(std::string_view s);
std::vector<std::string> split_lines(std::string_view text);
std::vector<std::string> split_csv_row(std::string_view line);

// Strips a trailing "# ..." comment (used by inventory and map files).
std::string_view strip_comment(std::string_view line);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

std::string format_fixed(double value, int decimals);

}  // namespace p2v::util

#endif  // P2V_SRC_UTIL_HPP

// Copyright 2026 The Formality Transfer Authors.
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

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace formality::unicode {

inline constexpr std::string_view kZwnj = "‌";

// Number of code points in a UTF-8 string.
std::size_t length(std::string_view utf8);

// Byte offsets of every code point boundary strictly inside the string.
std::vector<std::size_t> interior_boundaries(std::string_view utf8);

// Removes ZWNJ from both ends.
std::string trim_zwnj(std::string_view utf8);

bool ends_with(std::string_view s, std::string_view suffix);
bool starts_with(std::string_view s, std::string_view prefix);

std::vector<std::string> split(std::string_view s, std::string_view delim);
std::string join(const std::vector<std::string>& parts, std::string_view delim);

}  // namespace formality::unicode

// Copyright 2026 The opdist Authors.
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

#ifndef OPDIST_TEXT_UTIL_HPP_
#define OPDIST_TEXT_UTIL_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace opdist {

// Decodes one UTF-8 code point starting at `pos` and advances `pos`.
// Returns nullopt (and advances by one byte) on an invalid sequence.
std::optional<char32_t> decode_utf8(std::string_view text, std::size_t& pos);

bool is_valid_utf8(std::string_view text);

// Lowercases ASCII and the Latin-1 supplement; other code points are copied.
std::string to_lower(std::string_view text);

std::string_view trim(std::string_view text);

std::vector<std::string_view> split(std::string_view text, char delimiter);

// Splits on runs of ASCII whitespace, dropping empty fields.
std::vector<std::string_view> split_whitespace(std::string_view text);

std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_int(std::string_view text);

// Shortest representation that round-trips through parse_double.
std::string format_double(double value);

// Reads a whole file; throws ResourceError when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

}  // namespace opdist

#endif  // OPDIST_TEXT_UTIL_HPP_

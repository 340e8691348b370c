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

#ifndef OPDIST_POS_PATTERN_HPP_
#define OPDIST_POS_PATTERN_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <regex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opdist/corpus.hpp"

namespace opdist {

// Regular expression over token streams in the TokensRegex style used for
// noun-phrase chunking:
//
//   (<NN.*><POS>?)+<(OF|THE|IN)>?((<NN.*><POS>?))+
//
// `<...>` matches one token. Its body is one alternative or a parenthesized
// `A|B|...` list. An alternative that is a Penn Treebank tag or contains a
// regex metacharacter is matched (fully) against the POS tag; any other
// alternative is a case-insensitive literal word. `(...)` groups; `?`, `+`
// and `*` quantify the preceding element or group.
class PosPattern {
 public:
  struct Alternative {
    bool is_tag = true;
    std::string text;
    std::regex regex;
  };
  struct Item {
    enum class Quantifier { kOne, kOptional, kPlus, kStar };
    // Exactly one of `alternatives` (token matcher) or `group` is used.
    std::vector<Alternative> alternatives;
    std::vector<Item> group;
    bool is_group = false;
    Quantifier quantifier = Quantifier::kOne;
  };

  // Throws DataError with a 1-based column on syntax errors.
  static PosPattern compile(std::string_view source);

  // End (exclusive) of the longest non-empty match starting at `start`.
  std::optional<std::size_t> longest_match(
      std::span<const ParsedToken> tokens, std::size_t start) const;

  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::vector<Item> items_;
};

struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive

  std::size_t size() const { return end - begin; }
  bool contains(std::size_t i) const { return i >= begin && i < end; }
  bool overlaps(const TokenSpan& other) const {
    return begin < other.end && other.begin < end;
  }
  friend auto operator<=>(const TokenSpan&, const TokenSpan&) = default;
};

// The chunking rule above plus a bare noun run, so single-word
// nouns are subjects too.
const std::vector<PosPattern>& default_noun_phrase_patterns();

// Maximal non-overlapping matches of every pattern, unioned with contiguous
// named-entity spans; overlaps go to the longer span (then the earlier one).
// Result is sorted and pairwise disjoint.
std::vector<TokenSpan> extract_noun_phrases(
    const ParsedSentence& sentence,
    std::span<const PosPattern> patterns = default_noun_phrase_patterns());

}  // namespace opdist

#endif  // OPDIST_POS_PATTERN_HPP_

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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "opdist/corpus.hpp"
#include "opdist/text_util.hpp"

namespace opdist {
namespace {

enum class CharClass { kSpace, kPunct, kApostrophe, kHyphen, kWord };

CharClass classify(char32_t c) {
  if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
      c == '\v' || c == 0x85 || c == 0xA0 || c == 0x1680 ||
      (c >= 0x2000 && c <= 0x200A) || c == 0x2028 || c == 0x2029 ||
      c == 0x202F || c == 0x205F || c == 0x3000) {
    return CharClass::kSpace;
  }
  if (c == '\'' || c == 0x2019) return CharClass::kApostrophe;
  if (c == '-') return CharClass::kHyphen;
  if (c < 0x80) {
    const bool punct = (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) ||
                       (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E);
    return punct ? CharClass::kPunct : CharClass::kWord;
  }
  if (c == 0xA1 || c == 0xA7 || c == 0xAB || c == 0xB6 || c == 0xB7 ||
      c == 0xBB || c == 0xBF || (c >= 0x2010 && c <= 0x2027) ||
      (c >= 0x2030 && c <= 0x205E) || (c >= 0x3001 && c <= 0x3003) ||
      (c >= 0x3008 && c <= 0x3011)) {
    return CharClass::kPunct;
  }
  return CharClass::kWord;
}

struct CodePoint {
  char32_t value;
  std::size_t start;
  std::size_t end;
  CharClass cls;
};

std::vector<CodePoint> decode(std::string_view text) {
  std::vector<CodePoint> cps;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t start = pos;
    // Invalid bytes are treated as word characters so spans stay exact.
    const char32_t value = decode_utf8(text, pos).value_or(0xFFFD);
    cps.push_back({value, start, pos, classify(value)});
  }
  return cps;
}

std::string normalize(std::string_view surface) {
  std::string lowered = to_lower(surface);
  std::string out;
  out.reserve(lowered.size());
  for (std::size_t i = 0; i < lowered.size(); ++i) {
    // U+2019 RIGHT SINGLE QUOTATION MARK -> ASCII apostrophe.
    if (lowered.compare(i, 3, "\xE2\x80\x99") == 0) {
      out.push_back('\'');
      i += 2;
    } else {
      out.push_back(lowered[i]);
    }
  }
  return out;
}

char32_t ascii_lower(char32_t c) {
  return (c >= 'A' && c <= 'Z') ? c + ('a' - 'A') : c;
}

// Index in [first, last) where an apostrophe suffix begins, or `last`.
std::size_t contraction_split(const std::vector<CodePoint>& cps,
                              std::size_t first, std::size_t last) {
  const std::size_t length = last - first;
  if (length > 3 && ascii_lower(cps[last - 3].value) == 'n' &&
      cps[last - 2].cls == CharClass::kApostrophe &&
      ascii_lower(cps[last - 1].value) == 't') {
    return last - 3;
  }
  static constexpr std::u32string_view kSuffixes[] = {U"s",  U"m",  U"d",
                                                     U"ll", U"re", U"ve"};
  for (std::size_t k = first + 1; k < last; ++k) {
    if (cps[k].cls != CharClass::kApostrophe) continue;
    std::u32string suffix;
    for (std::size_t i = k + 1; i < last; ++i) {
      suffix.push_back(ascii_lower(cps[i].value));
    }
    for (const auto candidate : kSuffixes) {
      if (suffix == candidate) return k;
    }
  }
  return last;
}

}  // namespace

std::vector<Sentence> tokenize(std::string_view text) {
  const std::vector<CodePoint> cps = decode(text);
  std::vector<Sentence> sentences;
  Sentence current;

  const auto emit = [&](std::size_t first, std::size_t last) {
    Token token;
    token.start = cps[first].start;
    token.end = cps[last - 1].end;
    token.surface = std::string(text.substr(token.start, token.end - token.start));
    token.normalized = normalize(token.surface);
    current.tokens.push_back(std::move(token));
  };
  const auto close_sentence = [&]() {
    if (current.tokens.empty()) return;
    current.index = sentences.size();
    sentences.push_back(std::move(current));
    current = Sentence{};
  };

  std::size_t i = 0;
  while (i < cps.size()) {
    const CharClass cls = cps[i].cls;
    if (cls == CharClass::kSpace) {
      ++i;
      continue;
    }
    if (cls != CharClass::kWord) {
      emit(i, i + 1);
      const char32_t c = cps[i].value;
      ++i;
      const bool terminal = c == '.' || c == '!' || c == '?';
      if (terminal && (i == cps.size() || cps[i].cls == CharClass::kSpace)) {
        close_sentence();
      }
      continue;
    }
    // Word chunk: word characters plus apostrophes/hyphens that sit between
    // two word characters.
    std::size_t j = i + 1;
    while (j < cps.size()) {
      const CharClass c = cps[j].cls;
      if (c == CharClass::kWord) {
        ++j;
      } else if ((c == CharClass::kApostrophe || c == CharClass::kHyphen) &&
                 j + 1 < cps.size() && cps[j + 1].cls == CharClass::kWord) {
        j += 2;
      } else {
        break;
      }
    }
    const std::size_t split = contraction_split(cps, i, j);
    if (split > i && split < j) {
      emit(i, split);
      emit(split, j);
    } else {
      emit(i, j);
    }
    i = j;
  }
  close_sentence();
  return sentences;
}

}  // namespace opdist

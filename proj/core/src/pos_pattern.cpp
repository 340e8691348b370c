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

#include "opdist/pos_pattern.hpp"

#include <algorithm>
#include <set>

#include "opdist/error.hpp"
#include "opdist/text_util.hpp"

namespace opdist {
namespace {

using Item = PosPattern::Item;
using Positions = std::set<std::size_t>;

bool is_penn_tag(std::string_view s) {
  static constexpr std::string_view kTags[] = {
      "CC",  "CD",  "DT",   "EX",  "FW",  "IN",   "JJ",  "JJR", "JJS",
      "LS",  "MD",  "NN",   "NNS", "NNP", "NNPS", "PDT", "POS", "PRP",
      "PRP$", "RB", "RBR",  "RBS", "RP",  "SYM",  "TO",  "UH",  "VB",
      "VBD", "VBG", "VBN",  "VBP", "VBZ", "WDT",  "WP",  "WP$", "WRB",
      "HYPH", "NFP", "ADD", "AFX", "GW",  "XX"};
  return std::find(std::begin(kTags), std::end(kTags), s) != std::end(kTags);
}

bool has_regex_meta(std::string_view s) {
  return s.find_first_of(".*+?[]{}\\^$") != std::string_view::npos;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  std::vector<Item> parse() {
    auto items = parse_sequence();
    if (pos_ < src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    if (items.empty()) fail("empty pattern");
    return items;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw DataError("POS pattern column " + std::to_string(pos_ + 1) + ": " +
                    message);
  }

  void skip_space() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) {
      ++pos_;
    }
  }

  std::vector<Item> parse_sequence() {
    std::vector<Item> items;
    while (true) {
      skip_space();
      if (pos_ >= src_.size() || src_[pos_] == ')') return items;
      Item item;
      if (src_[pos_] == '<') {
        item.alternatives = parse_token_matcher();
      } else if (src_[pos_] == '(') {
        ++pos_;
        item.is_group = true;
        item.group = parse_sequence();
        if (pos_ >= src_.size() || src_[pos_] != ')') fail("expected ')'");
        if (item.group.empty()) fail("empty group");
        ++pos_;
      } else {
        fail("expected '<' or '('");
      }
      if (pos_ < src_.size()) {
        switch (src_[pos_]) {
          case '?': item.quantifier = Item::Quantifier::kOptional; ++pos_; break;
          case '+': item.quantifier = Item::Quantifier::kPlus; ++pos_; break;
          case '*': item.quantifier = Item::Quantifier::kStar; ++pos_; break;
          default: break;
        }
      }
      items.push_back(std::move(item));
    }
  }

  std::vector<PosPattern::Alternative> parse_token_matcher() {
    ++pos_;  // '<'
    const std::size_t close = src_.find('>', pos_);
    if (close == std::string_view::npos) fail("unterminated '<'");
    std::string_view body = trim(src_.substr(pos_, close - pos_));
    if (body.empty()) fail("empty token matcher");
    if (body.size() >= 2 && body.front() == '(' && body.back() == ')') {
      body = body.substr(1, body.size() - 2);
    }
    std::vector<PosPattern::Alternative> alternatives;
    for (const auto part : split(body, '|')) {
      const auto text = trim(part);
      if (text.empty()) fail("empty alternative");
      PosPattern::Alternative alt;
      alt.text = std::string(text);
      alt.is_tag = is_penn_tag(text) || has_regex_meta(text);
      try {
        alt.regex = alt.is_tag
                        ? std::regex(alt.text)
                        : std::regex(to_lower(alt.text), std::regex::icase);
      } catch (const std::regex_error&) {
        fail("invalid regex \"" + alt.text + "\"");
      }
      alternatives.push_back(std::move(alt));
    }
    pos_ = close + 1;
    return alternatives;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

bool token_matches(const Item& item, const ParsedToken& token) {
  for (const auto& alt : item.alternatives) {
    if (alt.is_tag) {
      if (std::regex_match(token.tag(), alt.regex)) return true;
    } else if (to_lower(token.form) == to_lower(alt.text)) {
      return true;
    }
  }
  return false;
}

Positions match_sequence(const std::vector<Item>& items,
                         std::span<const ParsedToken> tokens, Positions starts);

Positions match_once(const Item& item, std::span<const ParsedToken> tokens,
                     const Positions& starts) {
  if (item.is_group) return match_sequence(item.group, tokens, starts);
  Positions ends;
  for (const std::size_t p : starts) {
    if (p < tokens.size() && token_matches(item, tokens[p])) ends.insert(p + 1);
  }
  return ends;
}

Positions match_item(const Item& item, std::span<const ParsedToken> tokens,
                     const Positions& starts) {
  using Q = Item::Quantifier;
  if (item.quantifier == Q::kOne) return match_once(item, tokens, starts);
  if (item.quantifier == Q::kOptional) {
    Positions ends = match_once(item, tokens, starts);
    ends.insert(starts.begin(), starts.end());
    return ends;
  }
  // One-or-more: iterate to a fixpoint; positions are bounded so this ends.
  Positions reached = match_once(item, tokens, starts);
  Positions frontier = reached;
  while (!frontier.empty()) {
    Positions next;
    for (const std::size_t p : match_once(item, tokens, frontier)) {
      if (reached.insert(p).second) next.insert(p);
    }
    frontier = std::move(next);
  }
  if (item.quantifier == Q::kStar) reached.insert(starts.begin(), starts.end());
  return reached;
}

Positions match_sequence(const std::vector<Item>& items,
                         std::span<const ParsedToken> tokens,
                         Positions starts) {
  for (const auto& item : items) {
    starts = match_item(item, tokens, starts);
    if (starts.empty()) break;
  }
  return starts;
}

std::vector<TokenSpan> ner_spans(const ParsedSentence& sentence) {
  std::vector<TokenSpan> spans;
  std::string current;
  std::size_t begin = 0;
  const auto close = [&](std::size_t end) {
    if (!current.empty()) spans.push_back({begin, end});
    current.clear();
  };
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    const auto& ner = sentence.tokens[i].ner;
    if (!ner) {
      close(i);
      continue;
    }
    std::string type = *ner;
    bool starts_new = false;
    if (type.size() > 2 && (type[0] == 'B' || type[0] == 'I') && type[1] == '-') {
      starts_new = type[0] == 'B';
      type = type.substr(2);
    }
    if (current.empty() || type != current || starts_new) {
      close(i);
      current = type;
      begin = i;
    }
  }
  close(sentence.size());
  return spans;
}

}  // namespace

PosPattern PosPattern::compile(std::string_view source) {
  PosPattern pattern;
  pattern.source_ = std::string(source);
  pattern.items_ = Parser(source).parse();
  return pattern;
}

std::optional<std::size_t> PosPattern::longest_match(
    std::span<const ParsedToken> tokens, std::size_t start) const {
  const Positions ends = match_sequence(items_, tokens, {start});
  if (ends.empty() || *ends.rbegin() <= start) return std::nullopt;
  return *ends.rbegin();
}

const std::vector<PosPattern>& default_noun_phrase_patterns() {
  static const std::vector<PosPattern> kPatterns = {
      PosPattern::compile("(<NN.*><POS>?)+<(OF|THE|IN)>?((<NN.*><POS>?))+"),
      PosPattern::compile("(<NN.*><POS>?)+"),
  };
  return kPatterns;
}

std::vector<TokenSpan> extract_noun_phrases(const ParsedSentence& sentence,
                                            std::span<const PosPattern> patterns) {
  std::vector<TokenSpan> candidates;
  for (const auto& pattern : patterns) {
    std::size_t i = 0;
    while (i < sentence.size()) {
      const auto end = pattern.longest_match(sentence.tokens, i);
      if (end) {
        candidates.push_back({i, *end});
        i = *end;
      } else {
        ++i;
      }
    }
  }
  const auto named = ner_spans(sentence);
  candidates.insert(candidates.end(), named.begin(), named.end());

  std::sort(candidates.begin(), candidates.end(),
            [](const TokenSpan& a, const TokenSpan& b) {
              if (a.size() != b.size()) return a.size() > b.size();
              return a.begin < b.begin;
            });
  std::vector<TokenSpan> chosen;
  for (const auto& span : candidates) {
    const bool clash = std::any_of(chosen.begin(), chosen.end(),
                                   [&](const auto& c) { return c.overlaps(span); });
    if (!clash) chosen.push_back(span);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace opdist

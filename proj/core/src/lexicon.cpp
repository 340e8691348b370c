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

#include "opdist/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <string>

#include "opdist/error.hpp"
#include "opdist/text_util.hpp"

namespace opdist {
namespace {

std::vector<std::string> phrase_tokens(std::string_view phrase) {
  std::vector<std::string> out;
  for (const auto& sentence : tokenize(phrase)) {
    for (const auto& token : sentence.tokens) out.push_back(token.normalized);
  }
  return out;
}

}  // namespace

void SentimentLexicon::set(std::string_view word, double score) {
  if (!(score >= -1.0 && score <= 1.0)) {
    throw DataError("sentiment score out of [-1, 1] for \"" +
                    std::string(word) + "\"");
  }
  const auto [it, inserted] = scores_.insert_or_assign(to_lower(word), score);
  if (!inserted) ++overrides_;
}

std::optional<double> SentimentLexicon::score(
    std::string_view normalized) const {
  const auto it = scores_.find(std::string(normalized));
  if (it == scores_.end()) return std::nullopt;
  return it->second;
}

SentimentLexicon read_sentiment_lexicon(std::istream& in) {
  SentimentLexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = split(body, '\t');
    const auto where = "lexicon line " + std::to_string(line_no) + ": ";
    if (fields.size() != 2) throw DataError(where + "expected word<TAB>score");
    const auto word = trim(fields[0]);
    const auto score = parse_double(fields[1]);
    if (word.empty() || !score) throw DataError(where + "malformed entry");
    if (!(*score >= -1.0 && *score <= 1.0)) {
      throw DataError(where + "score " + std::string(trim(fields[1])) +
                      " outside [-1, 1]");
    }
    lexicon.set(word, *score);
  }
  return lexicon;
}

SentimentLexicon load_sentiment_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open lexicon: " + path.string());
  return read_sentiment_lexicon(in);
}

std::optional<double> word_polarity(const SentimentLexicon& lexicon,
                                    const Token& token) {
  return lexicon.score(token.normalized);
}

bool ShifterSet::add(std::string_view phrase) {
  auto tokens = phrase_tokens(phrase);
  if (tokens.empty()) return false;
  if (std::find(phrases_.begin(), phrases_.end(), tokens) != phrases_.end()) {
    return false;
  }
  max_length_ = std::max(max_length_, tokens.size());
  phrases_.push_back(std::move(tokens));
  return true;
}

bool ShifterSet::contains(std::string_view phrase) const {
  const auto tokens = phrase_tokens(phrase);
  return std::find(phrases_.begin(), phrases_.end(), tokens) != phrases_.end();
}

ShifterSet read_shifters(std::istream& in) {
  ShifterSet shifters;
  std::string line;
  while (std::getline(in, line)) shifters.add(trim(line));
  return shifters;
}

ShifterSet load_shifters(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open shifter list: " + path.string());
  return read_shifters(in);
}

const std::vector<std::string>& default_shifter_phrases() {
  static const std::vector<std::string> kPhrases = {
      "no",          "not",         "negation",   "none",      "n't",
      "inconclusive", "without",    "excluded",   "incompatible",
      "prevent",     "exacerbate",  "reduce",     "less",      "rarely",
      "displaced",   "relocation",  "dislocation", "higher than",
      "relocate",    "resettled",   "re-housed",  "cannot",    "limit",
      "outweigh",    "unless",      "little act", "get even"};
  return kPhrases;
}

ShifterSet default_shifters() {
  ShifterSet shifters;
  for (const auto& phrase : default_shifter_phrases()) shifters.add(phrase);
  return shifters;
}

std::vector<std::size_t> shifter_hits(
    const ShifterSet& shifters, const std::vector<std::string>& normalized) {
  std::vector<std::size_t> hits;
  std::size_t i = 0;
  while (i < normalized.size()) {
    std::size_t matched = 0;
    for (const auto& phrase : shifters.phrases()) {
      if (phrase.size() <= matched || i + phrase.size() > normalized.size()) {
        continue;
      }
      if (std::equal(phrase.begin(), phrase.end(), normalized.begin() + i)) {
        matched = phrase.size();
      }
    }
    if (matched > 0) {
      hits.push_back(i);
      i += matched;
    } else {
      ++i;
    }
  }
  return hits;
}

std::vector<std::size_t> shifter_hits(const ShifterSet& shifters,
                                      const Sentence& sentence) {
  std::vector<std::string> normalized;
  normalized.reserve(sentence.tokens.size());
  for (const auto& token : sentence.tokens) {
    normalized.push_back(token.normalized);
  }
  return shifter_hits(shifters, normalized);
}

}  // namespace opdist

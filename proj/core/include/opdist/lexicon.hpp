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

#ifndef OPDIST_LEXICON_HPP_
#define OPDIST_LEXICON_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "opdist/corpus.hpp"

namespace opdist {

// Word-level sentiment scores in [-1, 1], keyed by lowercased word.
class SentimentLexicon {
 public:
  // Inserts or overrides; throws DataError for scores outside [-1, 1].
  void set(std::string_view word, double score);

  std::optional<double> score(std::string_view normalized) const;

  std::size_t size() const { return scores_.size(); }
  // Number of entries replaced by a later duplicate while loading.
  std::size_t overrides() const { return overrides_; }

 private:
  std::unordered_map<std::string, double> scores_;
  std::size_t overrides_ = 0;
};

// TSV "word<TAB>score". Blank lines and lines starting with '#' are skipped.
SentimentLexicon read_sentiment_lexicon(std::istream& in);
SentimentLexicon load_sentiment_lexicon(const std::filesystem::path& path);

std::optional<double> word_polarity(const SentimentLexicon& lexicon,
                                    const Token& token);

// Polarity-shifter phrases stored as normalized token sequences.
class ShifterSet {
 public:
  // Tokenizes `phrase`; empty phrases are ignored. Returns true if new.
  bool add(std::string_view phrase);

  bool contains(std::string_view phrase) const;
  std::size_t size() const { return phrases_.size(); }
  bool empty() const { return phrases_.empty(); }
  std::size_t max_length() const { return max_length_; }
  const std::vector<std::vector<std::string>>& phrases() const {
    return phrases_;
  }

 private:
  std::vector<std::vector<std::string>> phrases_;
  std::size_t max_length_ = 0;
};

// One phrase per line.
ShifterSet read_shifters(std::istream& in);
ShifterSet load_shifters(const std::filesystem::path& path);

// The 27 shifters used across all of the reference datasets.
ShifterSet default_shifters();
const std::vector<std::string>& default_shifter_phrases();

// Token positions where a shifter phrase starts, longest phrase first,
// non-overlapping, ascending.
std::vector<std::size_t> shifter_hits(const ShifterSet& shifters,
                                      const Sentence& sentence);
std::vector<std::size_t> shifter_hits(
    const ShifterSet& shifters, const std::vector<std::string>& normalized);

}  // namespace opdist

#endif  // OPDIST_LEXICON_HPP_

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

#ifndef OPDIST_SPOTTER_HPP_
#define OPDIST_SPOTTER_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "opdist/corpus.hpp"

namespace opdist {

inline constexpr double kDefaultLinkProbabilityThreshold = 0.03;
inline constexpr std::size_t kMaxSurfaceTokens = 6;

struct ConceptCandidate {
  std::string concept_id;
  double link_probability = 0.0;

  friend bool operator==(const ConceptCandidate&,
                         const ConceptCandidate&) = default;
};

// Surface phrase -> candidate concepts, best candidate first (descending
// link probability, ties by concept id).
class Gazetteer {
 public:
  // `surface` is tokenized and lowercased; it must have 1..6 tokens.
  void add(std::string_view surface, std::string concept_id,
           double link_probability);

  // Candidates for a normalized token sequence joined by single spaces.
  const std::vector<ConceptCandidate>* lookup(const std::string& key) const;

  std::size_t size() const { return entries_.size(); }
  std::size_t max_tokens() const { return max_tokens_; }

 private:
  std::map<std::string, std::vector<ConceptCandidate>> entries_;
  std::size_t max_tokens_ = 0;
};

// TSV "surface<TAB>concept_id<TAB>link_probability".
Gazetteer read_gazetteer(std::istream& in);
Gazetteer load_gazetteer(const std::filesystem::path& path);

struct SubjectMention {
  std::string opinion_id;
  std::size_t sentence = 0;
  // Token span within the sentence, half open.
  std::size_t token_begin = 0;
  std::size_t token_end = 0;
  // Byte span within the opinion text, half open.
  std::size_t char_begin = 0;
  std::size_t char_end = 0;
  std::string surface;
  std::string concept_id;
  double link_probability = 0.0;

  friend bool operator==(const SubjectMention&,
                         const SubjectMention&) = default;
};

// All mentions of one concept inside one opinion, in textual order.
struct OpinionSubject {
  std::string concept_id;
  std::vector<SubjectMention> mentions;

  friend bool operator==(const OpinionSubject&,
                         const OpinionSubject&) = default;
};

// Greedy longest-match spotting, left to right, non-overlapping, within
// sentences. Spans are chosen on surface presence; the chosen surface's best
// candidate is then kept only if its link probability reaches
// `lp_threshold`. Raising the threshold can therefore only drop mentions.
std::vector<OpinionSubject> spot(
    const Gazetteer& gazetteer, const Opinion& opinion,
    double lp_threshold = kDefaultLinkProbabilityThreshold);

// Drops mentions below the threshold and merges the rest per concept,
// ordering subjects by first mention.
std::vector<OpinionSubject> group_mentions(std::vector<SubjectMention> mentions,
                                           double lp_threshold);

// Fills sentence/token spans of mentions that only carry byte offsets (as
// returned by an external annotator). Mentions that do not align with token
// boundaries are snapped outward to the tokens they overlap; mentions that
// overlap no token are dropped.
std::vector<SubjectMention> align_mentions(const Opinion& opinion,
                                           std::vector<SubjectMention> mentions);

}  // namespace opdist

#endif  // OPDIST_SPOTTER_HPP_

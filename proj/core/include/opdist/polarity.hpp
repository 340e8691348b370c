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

#ifndef OPDIST_POLARITY_HPP_
#define OPDIST_POLARITY_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opdist/corpus.hpp"
#include "opdist/deppat.hpp"
#include "opdist/lexicon.hpp"
#include "opdist/spotter.hpp"

namespace opdist {

// A lexicon word in the expression window of a subject.
struct WeightedWord {
  std::size_t sentence = 0;
  std::size_t token = 0;
  std::string word;
  double score = 0.0;      // lexicon score in [-1, 1]
  std::size_t distance = 1;  // token distance to the nearest mention edge
  bool shifted = false;

  double weight() const;
  // score / sqrt(distance), sign reversed when shifted.
  double contribution() const;
};

enum class PolarityMode { kContinuous, kDiscrete, kDistribution };

std::optional<PolarityMode> parse_polarity_mode(std::string_view name);
std::string_view to_string(PolarityMode mode);

// Where a shifter must start to reverse a word: within the `window` tokens
// immediately before it, or anywhere else in the sentence.
enum class ShifterScope { kLocal, kSentence };

std::optional<ShifterScope> parse_shifter_scope(std::string_view name);
std::string_view to_string(ShifterScope scope);

struct ShifterOptions {
  bool enabled = true;
  ShifterScope scope = ShifterScope::kLocal;
  std::size_t window = 3;
};

// Mass on negative / neutral / positive buckets, summing to 1.
struct PolarityDistribution {
  double negative = 0.0;
  double neutral = 1.0;
  double positive = 0.0;

  friend bool operator==(const PolarityDistribution&,
                         const PolarityDistribution&) = default;
};

// Continuous and discrete modes use `value`; distribution mode uses
// `distribution`.
struct SubjectPolarity {
  PolarityMode mode = PolarityMode::kDiscrete;
  double value = 0.0;
  PolarityDistribution distribution;
};

inline constexpr double kNeutralBand = 0.1;

// Every lexicon-scored token in the sentences of the subject's mentions,
// excluding the mention tokens themselves, with its distance to the nearest
// mention in the same sentence.
std::vector<WeightedWord> expression_window(const Opinion& opinion,
                                            const OpinionSubject& subject,
                                            const SentimentLexicon& lexicon,
                                            const ShifterSet& shifters,
                                            const ShifterOptions& options = {});

// (p - n) / (p + n + 1) over distance-weighted, shifted contributions.
double subject_polarity_continuous(std::span<const WeightedWord> words);

// -1 for negative scores, +1 otherwise.
int discretize(double score);

PolarityDistribution subject_polarity_distribution(
    std::span<const WeightedWord> words);

SubjectPolarity aggregate_polarity(std::span<const WeightedWord> words,
                                   PolarityMode mode);

enum class Variant { kOd, kOdParse };

std::optional<Variant> parse_variant(std::string_view name);
std::string_view to_string(Variant variant);

struct MentionSpan {
  std::size_t sentence = 0;
  std::size_t token_begin = 0;
  std::size_t token_end = 0;
  std::string surface;
};

struct RepresentedSubject {
  // Canonical identity: the concept id (OD) or lowercased phrase (OD-parse).
  std::string key;
  // Normalized tokens used to embed the subject.
  std::vector<std::string> phrase;
  std::vector<MentionSpan> mentions;
  std::vector<WeightedWord> words;
  SubjectPolarity polarity;
};

struct OpinionRepresentation {
  std::string opinion_id;
  std::vector<RepresentedSubject> subjects;
};

struct RepresentConfig {
  PolarityMode mode = PolarityMode::kDiscrete;
  ShifterOptions shifters;
};

// Normalized tokens of a concept id; underscores count as spaces.
std::vector<std::string> concept_phrase(std::string_view concept_id);

// Concept representation from spotted subjects.
OpinionRepresentation represent_opinion(const Opinion& opinion,
                                        std::span<const OpinionSubject> subjects,
                                        const SentimentLexicon& lexicon,
                                        const ShifterSet& shifters,
                                        const RepresentConfig& config = {});

// Noun-phrase representation from dependency parses: subjects are noun
// phrases, expression words are rule-bound tokens with distance 1, and a
// "neg" dependent reverses a word when shifting is enabled. Subjects with
// the same lowercased phrase merge across sentences.
OpinionRepresentation represent_opinion_parse(
    std::string_view opinion_id, std::span<const ParsedSentence> sentences,
    std::span<const DepPattern> rules, const SentimentLexicon& lexicon,
    const RepresentConfig& config = {},
    std::span<const PosPattern> noun_phrase_patterns =
        default_noun_phrase_patterns());

}  // namespace opdist

#endif  // OPDIST_POLARITY_HPP_

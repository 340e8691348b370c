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

#include "opdist/polarity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "opdist/text_util.hpp"

namespace opdist {

double WeightedWord::weight() const {
  return 1.0 / std::sqrt(static_cast<double>(distance));
}

double WeightedWord::contribution() const {
  const double c = score * weight();
  return shifted ? -c : c;
}

std::optional<PolarityMode> parse_polarity_mode(std::string_view name) {
  if (name == "continuous") return PolarityMode::kContinuous;
  if (name == "discrete") return PolarityMode::kDiscrete;
  if (name == "distribution") return PolarityMode::kDistribution;
  return std::nullopt;
}

std::string_view to_string(PolarityMode mode) {
  switch (mode) {
    case PolarityMode::kContinuous: return "continuous";
    case PolarityMode::kDiscrete: return "discrete";
    case PolarityMode::kDistribution: return "distribution";
  }
  return "";
}

std::optional<ShifterScope> parse_shifter_scope(std::string_view name) {
  if (name == "local") return ShifterScope::kLocal;
  if (name == "sentence") return ShifterScope::kSentence;
  return std::nullopt;
}

std::string_view to_string(ShifterScope scope) {
  return scope == ShifterScope::kLocal ? "local" : "sentence";
}

std::optional<Variant> parse_variant(std::string_view name) {
  if (name == "od") return Variant::kOd;
  if (name == "od-parse") return Variant::kOdParse;
  return std::nullopt;
}

std::string_view to_string(Variant variant) {
  return variant == Variant::kOd ? "od" : "od-parse";
}

std::vector<WeightedWord> expression_window(const Opinion& opinion,
                                            const OpinionSubject& subject,
                                            const SentimentLexicon& lexicon,
                                            const ShifterSet& shifters,
                                            const ShifterOptions& options) {
  std::map<std::size_t, std::vector<const SubjectMention*>> by_sentence;
  for (const auto& mention : subject.mentions) {
    by_sentence[mention.sentence].push_back(&mention);
  }
  std::vector<WeightedWord> words;
  for (const auto& [index, mentions] : by_sentence) {
    if (index >= opinion.sentences.size()) continue;
    const Sentence& sentence = opinion.sentences[index];
    const std::vector<std::size_t> hits =
        options.enabled ? shifter_hits(shifters, sentence)
                        : std::vector<std::size_t>{};
    for (std::size_t t = 0; t < sentence.tokens.size(); ++t) {
      const bool inside = std::any_of(
          mentions.begin(), mentions.end(), [&](const SubjectMention* m) {
            return t >= m->token_begin && t < m->token_end;
          });
      if (inside) continue;
      const auto score = word_polarity(lexicon, sentence.tokens[t]);
      if (!score) continue;
      std::size_t distance = SIZE_MAX;
      for (const SubjectMention* m : mentions) {
        const std::size_t d =
            t < m->token_begin ? m->token_begin - t : t - (m->token_end - 1);
        distance = std::min(distance, d);
      }
      bool shifted = false;
      for (const std::size_t h : hits) {
        if (options.scope == ShifterScope::kSentence) {
          shifted = shifted || h != t;
        } else {
          shifted = shifted || (h < t && t - h <= options.window);
        }
      }
      WeightedWord word;
      word.sentence = index;
      word.token = t;
      word.word = sentence.tokens[t].normalized;
      word.score = *score;
      word.distance = std::max<std::size_t>(distance, 1);
      word.shifted = shifted;
      words.push_back(std::move(word));
    }
  }
  return words;
}

double subject_polarity_continuous(std::span<const WeightedWord> words) {
  double positive = 0.0;
  double negative = 0.0;
  for (const auto& word : words) {
    const double c = word.contribution();
    if (c > 0) {
      positive += c;
    } else {
      negative -= c;
    }
  }
  return (positive - negative) / (positive + negative + 1.0);
}

int discretize(double score) { return score < 0.0 ? -1 : 1; }

PolarityDistribution subject_polarity_distribution(
    std::span<const WeightedWord> words) {
  double neg = 0.0, neu = 0.0, pos = 0.0;
  for (const auto& word : words) {
    const double c = word.contribution();
    const double mass = std::abs(c);
    if (c < -kNeutralBand) {
      neg += mass;
    } else if (c > kNeutralBand) {
      pos += mass;
    } else {
      neu += mass;
    }
  }
  const double total = neg + neu + pos;
  if (total <= 0.0) return {0.0, 1.0, 0.0};
  return {neg / total, neu / total, pos / total};
}

SubjectPolarity aggregate_polarity(std::span<const WeightedWord> words,
                                   PolarityMode mode) {
  SubjectPolarity polarity;
  polarity.mode = mode;
  switch (mode) {
    case PolarityMode::kContinuous:
      polarity.value = subject_polarity_continuous(words);
      break;
    case PolarityMode::kDiscrete:
      polarity.value = discretize(subject_polarity_continuous(words));
      break;
    case PolarityMode::kDistribution:
      polarity.distribution = subject_polarity_distribution(words);
      break;
  }
  return polarity;
}

std::vector<std::string> concept_phrase(std::string_view concept_id) {
  std::string text(concept_id);
  std::replace(text.begin(), text.end(), '_', ' ');
  std::vector<std::string> phrase;
  for (const auto& sentence : tokenize(text)) {
    for (const auto& token : sentence.tokens) phrase.push_back(token.normalized);
  }
  return phrase;
}

OpinionRepresentation represent_opinion(const Opinion& opinion,
                                        std::span<const OpinionSubject> subjects,
                                        const SentimentLexicon& lexicon,
                                        const ShifterSet& shifters,
                                        const RepresentConfig& config) {
  OpinionRepresentation rep;
  rep.opinion_id = opinion.id;
  for (const auto& subject : subjects) {
    RepresentedSubject out;
    out.key = subject.concept_id;
    out.phrase = concept_phrase(subject.concept_id);
    for (const auto& mention : subject.mentions) {
      out.mentions.push_back({mention.sentence, mention.token_begin,
                              mention.token_end, mention.surface});
    }
    out.words =
        expression_window(opinion, subject, lexicon, shifters, config.shifters);
    out.polarity = aggregate_polarity(out.words, config.mode);
    rep.subjects.push_back(std::move(out));
  }
  return rep;
}

OpinionRepresentation represent_opinion_parse(
    std::string_view opinion_id, std::span<const ParsedSentence> sentences,
    std::span<const DepPattern> rules, const SentimentLexicon& lexicon,
    const RepresentConfig& config,
    std::span<const PosPattern> noun_phrase_patterns) {
  OpinionRepresentation rep;
  rep.opinion_id = std::string(opinion_id);
  std::unordered_map<std::string, std::size_t> by_key;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    const ParsedSentence& tree = sentences[s];
    const auto spans = extract_noun_phrases(tree, noun_phrase_patterns);
    for (const auto& extraction : extract_parse_expressions(tree, rules, spans)) {
      std::vector<std::string> phrase;
      std::string surface;
      for (std::size_t t = extraction.subject.begin; t < extraction.subject.end;
           ++t) {
        phrase.push_back(to_lower(tree.tokens[t].form));
        if (!surface.empty()) surface.push_back(' ');
        surface += tree.tokens[t].form;
      }
      std::string key;
      for (const auto& part : phrase) {
        if (!key.empty()) key.push_back(' ');
        key += part;
      }
      const auto [it, inserted] = by_key.try_emplace(key, rep.subjects.size());
      if (inserted) {
        RepresentedSubject subject;
        subject.key = key;
        subject.phrase = phrase;
        rep.subjects.push_back(std::move(subject));
      }
      RepresentedSubject& subject = rep.subjects[it->second];
      subject.mentions.push_back(
          {s, extraction.subject.begin, extraction.subject.end, surface});
      for (const auto& expr : extraction.expression) {
        const std::string word = to_lower(tree.tokens[expr.token].form);
        const auto score = lexicon.score(word);
        if (!score) continue;
        WeightedWord weighted;
        weighted.sentence = s;
        weighted.token = expr.token;
        weighted.word = word;
        weighted.score = *score;
        weighted.distance = 1;
        weighted.shifted = expr.negated && config.shifters.enabled;
        subject.words.push_back(std::move(weighted));
      }
    }
  }
  for (auto& subject : rep.subjects) {
    subject.polarity = aggregate_polarity(subject.words, config.mode);
  }
  return rep;
}

}  // namespace opdist

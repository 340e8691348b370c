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

#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "opdist/corpus.hpp"
#include "opdist/deppat.hpp"
#include "opdist/lexicon.hpp"
#include "opdist/polarity.hpp"
#include "opdist/random.hpp"
#include "opdist/spotter.hpp"
#include "support/trees.hpp"

namespace opdist {
namespace {

SentimentLexicon lexicon_of(std::initializer_list<std::pair<const char*, double>> entries) {
  SentimentLexicon lexicon;
  for (const auto& [word, score] : entries) lexicon.set(word, score);
  return lexicon;
}

WeightedWord word(double score, std::size_t distance, bool shifted = false) {
  WeightedWord w;
  w.score = score;
  w.distance = distance;
  w.shifted = shifted;
  return w;
}

const OpinionSubject& subject_named(const std::vector<OpinionSubject>& subjects,
                                    const std::string& id) {
  for (const auto& s : subjects) {
    if (s.concept_id == id) return s;
  }
  throw std::runtime_error("missing subject " + id);
}

TEST(ExpressionWindowTest, GenocideIsGood) {
  const auto lexicon = lexicon_of({{"good", 1.0}, {"genocide", -1.0}});
  Gazetteer gaz;
  gaz.add("genocide", "Genocide", 0.5);
  const auto opinion = make_opinion("o", "Genocide is good");
  const auto subjects = spot(gaz, opinion);
  ASSERT_EQ(subjects.size(), 1u);
  const auto words = expression_window(opinion, subjects[0], lexicon, default_shifters());
  ASSERT_EQ(words.size(), 1u);
  EXPECT_EQ(words[0].word, "good");
  EXPECT_DOUBLE_EQ(words[0].score, 1.0);
  EXPECT_EQ(words[0].distance, 2u);
  EXPECT_FALSE(words[0].shifted);
}

TEST(ExpressionWindowTest, DistancesToMentionEdge) {
  const auto lexicon = lexicon_of({{"increases", 0.2}, {"violent", -1.0}});
  Gazetteer gaz;
  gaz.add("video game", "Video_game", 0.5);
  const auto opinion =
      make_opinion("o", "Video game increases the violent tendencies among youth");
  const auto subjects = spot(gaz, opinion);
  const auto words = expression_window(opinion, subjects[0], lexicon, default_shifters());
  ASSERT_EQ(words.size(), 2u);
  EXPECT_EQ(words[0].distance, 1u);
  EXPECT_EQ(words[1].distance, 3u);
}

TEST(ExpressionWindowTest, NoLexiconWords) {
  Gazetteer gaz;
  gaz.add("cat", "Cat", 0.5);
  const auto opinion = make_opinion("o", "The cat sat.");
  const auto subjects = spot(gaz, opinion);
  EXPECT_TRUE(expression_window(opinion, subjects[0], SentimentLexicon{},
                                default_shifters())
                  .empty());
}

TEST(ExpressionWindowTest, OtherSentencesIgnored) {
  const auto lexicon = lexicon_of({{"great", 1.0}});
  Gazetteer gaz;
  gaz.add("cat", "Cat", 0.5);
  const auto opinion = make_opinion("o", "The cat sat. It was great.");
  const auto subjects = spot(gaz, opinion);
  EXPECT_TRUE(expression_window(opinion, subjects[0], lexicon, default_shifters()).empty());
}

TEST(ExpressionWindowTest, ShifterScope) {
  const auto lexicon = lexicon_of({{"good", 1.0}});
  Gazetteer gaz;
  gaz.add("movie", "Movie", 0.5);
  const auto shifters = default_shifters();
  const auto near = make_opinion("o", "The movie is not good");
  const auto far = make_opinion("o", "Not the movie , it is very very good");
  const auto s_near = spot(gaz, near);
  const auto s_far = spot(gaz, far);
  EXPECT_TRUE(expression_window(near, s_near[0], lexicon, shifters)[0].shifted);
  EXPECT_FALSE(expression_window(far, s_far[0], lexicon, shifters)[0].shifted);
  ShifterOptions sentence;
  sentence.scope = ShifterScope::kSentence;
  EXPECT_TRUE(expression_window(far, s_far[0], lexicon, shifters, sentence)[0].shifted);
  ShifterOptions off;
  off.enabled = false;
  EXPECT_FALSE(expression_window(near, s_near[0], lexicon, shifters, off)[0].shifted);
}

TEST(PolarityTest, ContinuousExamples) {
  const std::vector<WeightedWord> one = {word(1.0, 1)};
  EXPECT_DOUBLE_EQ(subject_polarity_continuous(one), 0.5);
  const std::vector<WeightedWord> two = {word(1.0, 1), word(-1.0, 4)};
  EXPECT_NEAR(subject_polarity_continuous(two), 0.2, 1e-12);
  const std::vector<WeightedWord> not_good = {word(1.0, 1, true)};
  EXPECT_DOUBLE_EQ(subject_polarity_continuous(not_good), -0.5);
  EXPECT_EQ(subject_polarity_continuous({}), 0.0);
}

TEST(PolarityTest, Discretize) {
  EXPECT_EQ(discretize(-0.5), -1);
  EXPECT_EQ(discretize(0.0), 1);
  EXPECT_EQ(discretize(0.2), 1);
}

TEST(PolarityTest, DistributionExamples) {
  const std::vector<WeightedWord> pos = {word(1.0, 1)};
  EXPECT_EQ(subject_polarity_distribution(pos), (PolarityDistribution{0, 0, 1}));
  const std::vector<WeightedWord> mixed = {word(1.0, 1), word(-1.0, 1)};
  EXPECT_EQ(subject_polarity_distribution(mixed), (PolarityDistribution{0.5, 0, 0.5}));
  EXPECT_EQ(subject_polarity_distribution({}), (PolarityDistribution{0, 1, 0}));
  const std::vector<WeightedWord> weak = {word(0.05, 1), word(1.0, 1, true)};
  const auto d = subject_polarity_distribution(weak);
  EXPECT_NEAR(d.negative, 1.0 / 1.05, 1e-12);
  EXPECT_NEAR(d.neutral, 0.05 / 1.05, 1e-12);
}

TEST(PolarityTest, RandomInvariants) {
  Rng rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<WeightedWord> words;
    const std::size_t n = rng.uniform_index(8);
    for (std::size_t i = 0; i < n; ++i) {
      words.push_back(word(2.0 * rng.uniform01() - 1.0, 1 + rng.uniform_index(10),
                           rng.uniform_index(2) == 1));
    }
    const double v = subject_polarity_continuous(words);
    EXPECT_GT(v, -1.0);
    EXPECT_LT(v, 1.0);
    auto negated = words;
    for (auto& w : negated) w.score = -w.score;
    EXPECT_EQ(subject_polarity_continuous(negated), -v);
    const auto d = subject_polarity_distribution(words);
    EXPECT_NEAR(d.negative + d.neutral + d.positive, 1.0, 1e-9);
    EXPECT_GE(d.negative, 0.0);
    EXPECT_GE(d.neutral, 0.0);
    EXPECT_GE(d.positive, 0.0);
    const auto discrete = aggregate_polarity(words, PolarityMode::kDiscrete);
    EXPECT_TRUE(discrete.value == 1.0 || discrete.value == -1.0);
  }
}

TEST(RepresentTest, VideoGameExample) {
  const auto lexicon = lexicon_of({{"violent", -1.0}});
  Gazetteer gaz;
  gaz.add("video games", "Video_game", 0.6);
  gaz.add("youth", "Youth", 0.3);
  // The neutral subject sits in its own sentence, so it has no words.
  const auto opinion =
      make_opinion("O1", "Video games increases violent tendencies. Youth too.");
  const auto subjects = spot(gaz, opinion);
  const auto rep = represent_opinion(opinion, subjects, lexicon, default_shifters());
  EXPECT_EQ(rep.opinion_id, "O1");
  ASSERT_EQ(rep.subjects.size(), 2u);
  EXPECT_EQ(rep.subjects[0].key, "Video_game");
  EXPECT_EQ(rep.subjects[0].phrase, (std::vector<std::string>{"video", "game"}));
  EXPECT_EQ(rep.subjects[0].polarity.value, -1.0);
  EXPECT_EQ(rep.subjects[1].key, "Youth");
  EXPECT_EQ(rep.subjects[1].polarity.value, 1.0);

  RepresentConfig continuous;
  continuous.mode = PolarityMode::kContinuous;
  const auto cont = represent_opinion(opinion, subjects, lexicon, default_shifters(),
                                      continuous);
  EXPECT_EQ(cont.subjects[1].polarity.value, 0.0);
}

TEST(RepresentTest, ResearchersExample) {
  const auto lexicon = lexicon_of({{"positive", 1.0}, {"potential", 0.3}});
  Gazetteer gaz;
  gaz.add("researchers", "Researcher", 0.4);
  gaz.add("computer games", "PC_game", 0.5);
  gaz.add("media contents", "Media_content", 0.2);
  const auto opinion = make_opinion(
      "O2",
      "Researchers have confirmed the potential positive effects of computer "
      "games and media contents.");
  const auto subjects = spot(gaz, opinion);
  const auto rep = represent_opinion(opinion, subjects, lexicon, default_shifters());
  ASSERT_EQ(rep.subjects.size(), 3u);
  EXPECT_EQ(rep.subjects[0].key, "Researcher");
  EXPECT_EQ(rep.subjects[1].key, "PC_game");
  EXPECT_EQ(rep.subjects[1].polarity.value, 1.0);
  EXPECT_EQ(rep.subjects[2].key, "Media_content");
  EXPECT_EQ(rep.subjects[2].polarity.value, 1.0);
}

TEST(RepresentTest, NoSubjects) {
  const auto opinion = make_opinion("o", "Nothing here.");
  const auto rep = represent_opinion(opinion, {}, SentimentLexicon{}, default_shifters());
  EXPECT_TRUE(rep.subjects.empty());
}

TEST(RepresentTest, ShifterAblation) {
  const auto lexicon = lexicon_of({{"good", 1.0}});
  Gazetteer gaz;
  gaz.add("movie", "Movie", 0.5);
  const auto plain = make_opinion("a", "The movie is good");
  const auto negated = make_opinion("b", "The movie is not good");
  RepresentConfig off;
  off.shifters.enabled = false;
  const auto shifters = default_shifters();
  const auto rep_plain = represent_opinion(plain, spot(gaz, plain), lexicon, shifters, off);
  const auto rep_neg = represent_opinion(negated, spot(gaz, negated), lexicon, shifters, off);
  EXPECT_EQ(rep_plain.subjects[0].polarity.value, rep_neg.subjects[0].polarity.value);
  const auto rep_on = represent_opinion(negated, spot(gaz, negated), lexicon, shifters);
  EXPECT_EQ(rep_on.subjects[0].polarity.value, -1.0);
}

TEST(RepresentTest, Deterministic) {
  const auto lexicon = lexicon_of({{"good", 1.0}, {"bad", -1.0}});
  Gazetteer gaz;
  gaz.add("cat", "Cat", 0.5);
  gaz.add("dog", "Dog", 0.5);
  const auto opinion = make_opinion("o", "The cat is good. The dog is bad. The cat is bad.");
  RepresentConfig dist;
  dist.mode = PolarityMode::kDistribution;
  const auto a = represent_opinion(opinion, spot(gaz, opinion), lexicon, default_shifters(), dist);
  const auto b = represent_opinion(opinion, spot(gaz, opinion), lexicon, default_shifters(), dist);
  ASSERT_EQ(a.subjects.size(), 2u);
  EXPECT_EQ(a.subjects[0].polarity.distribution, b.subjects[0].polarity.distribution);
  EXPECT_NEAR(a.subjects[0].polarity.distribution.positive, 0.5, 1e-12);
}

TEST(RepresentParseTest, RuleBoundWordsHaveUnitDistance) {
  const auto tree = testing::make_tree({{"Video", "NN", 2, "compound"},
                                        {"game", "NN", 3, "nsubj"},
                                        {"increases", "VBZ", 0, "root"},
                                        {"the", "DT", 6, "det"},
                                        {"violent", "JJ", 6, "amod"},
                                        {"tendencies", "NNS", 3, "dobj"}});
  const auto lexicon = lexicon_of({{"increases", 0.2}, {"violent", -1.0}});
  RepresentConfig config;
  config.mode = PolarityMode::kContinuous;
  const std::vector<ParsedSentence> sentences = {tree};
  const auto rules = default_rules();
  const auto rep = represent_opinion_parse("o", sentences, rules, lexicon, config);
  ASSERT_FALSE(rep.subjects.empty());
  EXPECT_EQ(rep.subjects[0].key, "video game");
  ASSERT_EQ(rep.subjects[0].words.size(), 1u);
  EXPECT_EQ(rep.subjects[0].words[0].distance, 1u);
  EXPECT_NEAR(rep.subjects[0].polarity.value, 0.2 / 1.2, 1e-12);
}

TEST(RepresentParseTest, NegDependentReverses) {
  const auto tree = testing::make_tree({{"Genocide", "NN", 2, "nsubj"},
                                        {"is", "VBZ", 0, "root"},
                                        {"not", "RB", 4, "neg"},
                                        {"good", "JJ", 2, "acomp"}});
  const auto lexicon = lexicon_of({{"good", 1.0}});
  const std::vector<ParsedSentence> sentences = {tree};
  const auto rules = default_rules();
  const auto on = represent_opinion_parse("o", sentences, rules, lexicon);
  ASSERT_EQ(on.subjects.size(), 1u);
  EXPECT_EQ(on.subjects[0].polarity.value, -1.0);
  RepresentConfig off;
  off.shifters.enabled = false;
  const auto ablated = represent_opinion_parse("o", sentences, rules, lexicon, off);
  EXPECT_EQ(ablated.subjects[0].polarity.value, 1.0);
}

}  // namespace
}  // namespace opdist

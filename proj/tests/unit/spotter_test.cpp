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

#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "opdist/corpus.hpp"
#include "opdist/error.hpp"
#include "opdist/random.hpp"
#include "opdist/spotter.hpp"

namespace opdist {
namespace {

std::vector<std::string> concept_ids(const std::vector<OpinionSubject>& subjects) {
  std::vector<std::string> out;
  for (const auto& s : subjects) out.push_back(s.concept_id);
  return out;
}

TEST(SpotterTest, DistinctConceptsPreserved) {
  Gazetteer gaz;
  gaz.add("video game", "VG", 0.5);
  gaz.add("computer game", "PCG", 0.4);
  const auto subjects = spot(gaz, make_opinion("o", "video game and computer game"));
  EXPECT_EQ(concept_ids(subjects), (std::vector<std::string>{"VG", "PCG"}));
  EXPECT_EQ(subjects[0].mentions[0].surface, "video game");
  EXPECT_EQ(subjects[1].mentions[0].token_begin, 3u);
  EXPECT_EQ(subjects[1].mentions[0].token_end, 5u);
}

TEST(SpotterTest, SynonymsMergeIntoOneSubject) {
  Gazetteer gaz;
  gaz.add("video game", "VG", 0.5);
  gaz.add("electronic game", "VG", 0.5);
  const auto subjects =
      spot(gaz, make_opinion("o", "An electronic game is a video game."));
  ASSERT_EQ(subjects.size(), 1u);
  EXPECT_EQ(subjects[0].concept_id, "VG");
  EXPECT_EQ(subjects[0].mentions.size(), 2u);
}

TEST(SpotterTest, ThresholdDropsWeakCandidates) {
  Gazetteer gaz;
  gaz.add("the", "The_(band)", 0.01);
  gaz.add("youth", "Youth", 0.2);
  const auto subjects = spot(gaz, make_opinion("o", "The youth."), 0.03);
  EXPECT_EQ(concept_ids(subjects), (std::vector<std::string>{"Youth"}));
}

TEST(SpotterTest, BestCandidateChosen) {
  Gazetteer gaz;
  gaz.add("apple", "Apple_Inc.", 0.3);
  gaz.add("apple", "Apple", 0.6);
  const auto* c = gaz.lookup("apple");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->front().concept_id, "Apple");
  EXPECT_EQ(concept_ids(spot(gaz, make_opinion("o", "Apple pie"))),
            (std::vector<std::string>{"Apple"}));
}

TEST(SpotterTest, LongestMatchWins) {
  Gazetteer gaz;
  gaz.add("lord", "Lord", 0.5);
  gaz.add("lord of the rings", "LOTR", 0.9);
  const auto subjects = spot(gaz, make_opinion("o", "I read Lord of the Rings."));
  EXPECT_EQ(concept_ids(subjects), (std::vector<std::string>{"LOTR"}));
}

TEST(SpotterTest, ReadGazetteerValidates) {
  std::istringstream ok("video game\tVideo_game\t0.5\n");
  EXPECT_EQ(read_gazetteer(ok).size(), 1u);
  std::istringstream bad("video game\tVideo_game\t1.5\n");
  EXPECT_THROW(read_gazetteer(bad), DataError);
  Gazetteer gaz;
  EXPECT_THROW(gaz.add("a b c d e f g", "Long", 0.5), DataError);
}

class SpotterPropertyTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const std::vector<std::string> words = {"a", "b", "c", "d"};
    Rng rng(17);
    for (int i = 0; i < 12; ++i) {
      std::string surface;
      for (std::uint64_t k = 0, n = 1 + rng.uniform_index(3); k < n; ++k) {
        surface += (surface.empty() ? "" : " ") + words[rng.uniform_index(words.size())];
      }
      gaz_.add(surface, "C" + std::to_string(i % 5), rng.uniform01() * 0.2);
      surfaces_.push_back(surface);
    }
    for (int t = 0; t < 200; ++t) {
      std::string text;
      for (std::uint64_t k = 0, n = 1 + rng.uniform_index(8); k < n; ++k) {
        text += words[rng.uniform_index(words.size())] + " ";
      }
      texts_.push_back(text);
    }
  }

  Gazetteer gaz_;
  std::vector<std::string> surfaces_;
  std::vector<std::string> texts_;
};

// Chosen spans never overlap and no further gazetteer span fits between them.
TEST_F(SpotterPropertyTest, SpansDisjointAndMaximal) {
  for (const auto& text : texts_) {
    const auto opinion = make_opinion("o", text);
    const auto& tokens = opinion.sentences.at(0).tokens;
    std::vector<bool> covered(tokens.size(), false);
    for (const auto& subject : spot(gaz_, opinion, 0.0)) {
      for (const auto& m : subject.mentions) {
        for (auto i = m.token_begin; i < m.token_end; ++i) {
          EXPECT_FALSE(covered[i]) << text;
          covered[i] = true;
        }
      }
    }
    for (std::size_t b = 0; b < tokens.size(); ++b) {
      std::string key;
      for (std::size_t e = b; e < tokens.size() && e < b + 6; ++e) {
        key += (key.empty() ? "" : " ") + tokens[e].normalized;
        if (gaz_.lookup(key) == nullptr) continue;
        bool overlaps = false;
        for (auto i = b; i <= e; ++i) overlaps = overlaps || covered[i];
        EXPECT_TRUE(overlaps) << "unused span '" << key << "' in '" << text << "'";
      }
    }
  }
}

TEST_F(SpotterPropertyTest, ThresholdMonotoneAndDeterministic) {
  for (const auto& text : texts_) {
    const auto opinion = make_opinion("o", text);
    std::size_t previous = SIZE_MAX;
    for (const double lp : {0.0, 0.03, 0.05, 0.1, 0.15, 0.2, 1.0}) {
      const auto subjects = spot(gaz_, opinion, lp);
      EXPECT_EQ(subjects, spot(gaz_, opinion, lp));
      EXPECT_LE(subjects.size(), previous);
      previous = subjects.size();
    }
  }
}

TEST(AlignMentionsTest, SnapsByteOffsetsToTokens) {
  const auto opinion = make_opinion("o", "I like video games a lot.");
  SubjectMention m;
  m.char_begin = 7;
  m.char_end = 17;
  m.concept_id = "Video_game";
  m.link_probability = 0.5;
  const auto aligned = align_mentions(opinion, {m});
  ASSERT_EQ(aligned.size(), 1u);
  EXPECT_EQ(aligned[0].token_begin, 2u);
  EXPECT_EQ(aligned[0].token_end, 4u);
  SubjectMention nowhere;
  nowhere.char_begin = 100;
  nowhere.char_end = 110;
  EXPECT_TRUE(align_mentions(opinion, {nowhere}).empty());
}

}  // namespace
}  // namespace opdist

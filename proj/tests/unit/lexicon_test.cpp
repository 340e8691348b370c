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

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "opdist/corpus.hpp"
#include "opdist/error.hpp"
#include "opdist/lexicon.hpp"
#include "opdist/random.hpp"

namespace opdist {
namespace {

TEST(LexiconTest, ReadsEntries) {
  std::istringstream in("good\t1.0\n");
  const auto lex = read_sentiment_lexicon(in);
  EXPECT_EQ(lex.size(), 1u);
  EXPECT_EQ(lex.score("good"), 1.0);
}

TEST(LexiconTest, LaterDuplicateOverrides) {
  std::istringstream in("bad\t-1.0\nBad\t-0.5\n");
  const auto lex = read_sentiment_lexicon(in);
  EXPECT_EQ(lex.size(), 1u);
  EXPECT_EQ(lex.score("bad"), -0.5);
  EXPECT_EQ(lex.overrides(), 1u);
}

TEST(LexiconTest, RangeErrorNamesLine) {
  std::istringstream in("ok\t0.5\nx\t2.0\n");
  try {
    read_sentiment_lexicon(in);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(LexiconTest, WordPolarityUsesNormalizedForm) {
  SentimentLexicon lex;
  lex.set("good", 1.0);
  lex.set("awful", -0.9);
  const auto s = tokenize("Good table awful");
  EXPECT_EQ(word_polarity(lex, s[0].tokens[0]), 1.0);
  EXPECT_FALSE(word_polarity(lex, s[0].tokens[1]).has_value());
  EXPECT_EQ(word_polarity(lex, s[0].tokens[2]), -0.9);
}

TEST(LexiconTest, ScoresStayInRange) {
  SentimentLexicon lex;
  EXPECT_THROW(lex.set("x", 1.0001), DataError);
  EXPECT_THROW(lex.set("x", -7), DataError);
  Rng rng(3);
  for (int i = 0; i < 100; ++i) lex.set("w" + std::to_string(i), 2 * rng.uniform01() - 1);
  for (int i = 0; i < 100; ++i) {
    const auto v = lex.score("w" + std::to_string(i));
    ASSERT_TRUE(v.has_value());
    EXPECT_GE(*v, -1.0);
    EXPECT_LE(*v, 1.0);
  }
}

TEST(ShifterTest, DefaultListHas27Phrases) {
  const auto set = default_shifters();
  EXPECT_EQ(set.size(), 27u);
  EXPECT_TRUE(set.contains("no"));
  EXPECT_TRUE(set.contains("n't"));
  EXPECT_TRUE(set.contains("outweigh"));
  EXPECT_TRUE(set.contains("higher than"));
}

TEST(ShifterTest, BundledFileMatchesDefaults) {
  const auto set = load_shifters(std::string(OPDIST_DATA_DIR) + "/shifters.txt");
  EXPECT_EQ(set.phrases(), default_shifters().phrases());
}

TEST(ShifterTest, DuplicatesAndEmptyLines) {
  std::istringstream dup("not\nnot\n\n");
  EXPECT_EQ(read_shifters(dup).size(), 1u);
  std::istringstream empty("");
  EXPECT_TRUE(read_shifters(empty).empty());
}

TEST(ShifterTest, Hits) {
  const auto set = default_shifters();
  EXPECT_EQ(shifter_hits(set, std::vector<std::string>{"it", "is", "n't", "good"}),
            (std::vector<std::size_t>{2}));
  EXPECT_EQ(shifter_hits(set, std::vector<std::string>{"higher", "than", "x"}),
            (std::vector<std::size_t>{0}));
  EXPECT_TRUE(shifter_hits(set, std::vector<std::string>{"all", "fine"}).empty());
}

TEST(ShifterTest, LongestPhraseWins) {
  ShifterSet set;
  set.add("little");
  set.add("little act");
  set.add("act");
  EXPECT_EQ(shifter_hits(set, std::vector<std::string>{"a", "little", "act", "act"}),
            (std::vector<std::size_t>{1, 3}));
}

// Hits ascend strictly and each starts a phrase of the set verbatim.
TEST(ShifterTest, HitsAreOrderedAndVerbatim) {
  const auto set = default_shifters();
  const std::vector<std::string> pool = {"not", "no", "higher", "than", "get", "even",
                                         "good", "little", "act", "less", "x"};
  Rng rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> words;
    for (std::uint64_t i = 0, n = rng.uniform_index(10); i < n; ++i) {
      words.push_back(pool[rng.uniform_index(pool.size())]);
    }
    const auto hits = shifter_hits(set, words);
    for (std::size_t k = 0; k < hits.size(); ++k) {
      if (k > 0) EXPECT_LT(hits[k - 1], hits[k]);
      const bool verbatim = std::any_of(
          set.phrases().begin(), set.phrases().end(), [&](const auto& phrase) {
            return hits[k] + phrase.size() <= words.size() &&
                   std::equal(phrase.begin(), phrase.end(), words.begin() + hits[k]);
          });
      EXPECT_TRUE(verbatim);
    }
  }
}

}  // namespace
}  // namespace opdist

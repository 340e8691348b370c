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

#include <set>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "opdist/corpus.hpp"
#include "opdist/error.hpp"
#include "opdist/random.hpp"
#include "support/oracles.hpp"

namespace opdist {
namespace {

constexpr const char* kFiveTokens =
    "# opinion_id = o1\n"
    "1\tVideo\tvideo\tNOUN\tNN\t_\t2\tcompound\t_\tNER=O\n"
    "2\tgames\tgame\tNOUN\tNNS\t_\t3\tnsubj\t_\t_\n"
    "3\tincrease\tincrease\tVERB\tVBP\t_\t0\troot\t_\t_\n"
    "4\tviolence\tviolence\tNOUN\tNN\t_\t3\tdobj\t_\t_\n"
    "5\t.\t.\tPUNCT\t.\t_\t3\tpunct\t_\t_\n"
    "\n";

TEST(ConlluTest, ReadsFiveTokenTree) {
  std::istringstream in(kFiveTokens);
  const auto index = read_conllu(in);
  ASSERT_EQ(index.size(), 1u);
  const auto& sentences = index.at("o1");
  ASSERT_EQ(sentences.size(), 1u);
  const auto& tree = sentences[0];
  ASSERT_EQ(tree.size(), 5u);
  EXPECT_EQ(tree.tokens[1].xpos, "NNS");
  EXPECT_EQ(tree.tokens[1].deprel, "nsubj");
  EXPECT_EQ(tree.head_of(1), 2u);
  EXPECT_FALSE(tree.head_of(2).has_value());
  EXPECT_EQ(tree.children_of(2), (std::vector<std::size_t>{1, 3, 4}));
}

TEST(ConlluTest, CycleRejected) {
  std::istringstream in(
      "# opinion_id = o1\n"
      "1\ta\ta\tX\tNN\t_\t2\tdep\t_\t_\n"
      "2\tb\tb\tX\tNN\t_\t1\tdep\t_\t_\n"
      "3\tc\tc\tX\tNN\t_\t0\troot\t_\t_\n\n");
  EXPECT_THROW(read_conllu(in), DataError);
}

TEST(ConlluTest, GroupsBlocksPerOpinion) {
  std::string text = kFiveTokens;
  text += "# opinion_id = o2\n1\tYes\tyes\tINTJ\tUH\t_\t0\troot\t_\t_\n\n";
  text += "# opinion_id = o1\n1\tMore\tmore\tADJ\tJJR\t_\t0\troot\t_\t_\n\n";
  std::istringstream in(text);
  const auto index = read_conllu(in);
  EXPECT_EQ(index.at("o1").size(), 2u);
  EXPECT_EQ(index.at("o2").size(), 1u);
}

TEST(ConlluTest, UnknownOpinionRejected) {
  std::istringstream in(kFiveTokens);
  const std::set<std::string> known = {"other"};
  EXPECT_THROW(read_conllu(in, &known), DataError);
}

TEST(ConlluTest, NerFromMisc) {
  std::istringstream in(
      "# opinion_id = o\n"
      "1\tHillary\tHillary\tPROPN\tNNP\t_\t2\tnsubj\t_\tNER=PERSON\n"
      "2\twon\twin\tVERB\tVBD\t_\t0\troot\t_\tNER=O\n\n");
  const auto tree = read_conllu(in).at("o")[0];
  EXPECT_EQ(tree.tokens[0].ner, "PERSON");
  EXPECT_FALSE(tree.tokens[1].ner.has_value());
}

// Serializer output is always accepted; a head change that closes a cycle
// is always rejected.
TEST(ConlluTest, RoundTripAndCycleMutation) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    ParseIndex index;
    index["x"].push_back(testing::random_tree(rng, 8));
    std::stringstream buffer;
    write_conllu(index, buffer);
    const auto back = read_conllu(buffer);
    ASSERT_EQ(back.at("x")[0].tokens.size(), index["x"][0].tokens.size());
    for (std::size_t i = 0; i < back.at("x")[0].size(); ++i) {
      EXPECT_EQ(back.at("x")[0].tokens[i].head, index["x"][0].tokens[i].head);
      EXPECT_EQ(back.at("x")[0].tokens[i].deprel, index["x"][0].tokens[i].deprel);
    }
    // Point a non-root token's head at one of its descendants.
    auto tree = index["x"][0];
    for (std::size_t i = 0; i < tree.size(); ++i) {
      const auto children = tree.children_of(i);
      if (!tree.head_of(i) || children.empty()) continue;
      tree.tokens[i].head = static_cast<int>(children.front()) + 1;
      EXPECT_THROW(validate_tree(tree), DataError);
      break;
    }
  }
}

}  // namespace
}  // namespace opdist

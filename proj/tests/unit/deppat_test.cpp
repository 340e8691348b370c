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
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "opdist/deppat.hpp"
#include "opdist/error.hpp"
#include "opdist/pos_pattern.hpp"
#include "opdist/random.hpp"
#include "support/oracles.hpp"
#include "support/trees.hpp"

namespace opdist {
namespace {

using testing::make_tree;

// "Hillary looks presidential"
ParsedSentence hillary_tree() {
  return make_tree({{"Hillary", "NNP", 2, "nsubj"},
                    {"looks", "VBZ", 0, "root"},
                    {"presidential", "JJ", 2, "acomp"}});
}

ParsedSentence video_game_tree() {
  return make_tree({{"Video", "NN", 2, "compound"},
                    {"game", "NN", 3, "nsubj"},
                    {"increases", "VBZ", 0, "root"},
                    {"the", "DT", 6, "det"},
                    {"violent", "JJ", 6, "amod"},
                    {"tendencies", "NNS", 3, "dobj"},
                    {"among", "IN", 8, "case"},
                    {"youth", "NN", 6, "nmod:among"},
                    {".", ".", 3, "punct"}});
}

TEST(DepPatternTest, AllDefaultRulesCompile) {
  const auto rules = default_rules();
  ASSERT_EQ(rules.size(), 14u);
  EXPECT_EQ(rules[10].alternation_count(), 1u);
  EXPECT_EQ(rules[0].alternation_count(), 0u);
}

TEST(DepPatternTest, RegexRelation) {
  const auto p = DepPattern::compile("{}=OpExp1 >/nmod:in/ {}=OpSubject");
  ASSERT_EQ(p.nodes().size(), 2u);
  const auto& terms = p.nodes()[0].relations.terms;
  ASSERT_EQ(terms.size(), 1u);
  const auto& rel = std::get<RelationTerm>(terms[0]);
  EXPECT_EQ(rel.relation.kind, RelationMatcher::Kind::kRegex);
  EXPECT_EQ(rel.direction, Direction::kGovernorOf);
  EXPECT_TRUE(rel.relation.matches("nmod:in"));
  EXPECT_FALSE(rel.relation.matches("nmod:into"));
  EXPECT_EQ(p.nodes()[0].capture, CaptureName::kOpExp1);
  EXPECT_EQ(p.nodes()[1].capture, CaptureName::kOpSubject);
}

TEST(DepPatternTest, SyntaxErrorReportsColumn) {
  try {
    DepPattern::compile("{>>");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("column 2"), std::string::npos)
        << e.what();
  }
}

TEST(DepPatternTest, RejectsUnknownCapture) {
  EXPECT_THROW(DepPattern::compile("{}=Foo >nsubj {}"), DataError);
  EXPECT_THROW(DepPattern::compile("{} >nsubj"), DataError);
  EXPECT_THROW(DepPattern::compile("{} [ >nsubj {} "), DataError);
}

TEST(DepPatternTest, ImplicitlyClosedGroup) {
  const auto rules = default_rules();
  const auto& last = rules[13];
  EXPECT_EQ(last.nodes().size(), 4u);
  const auto tree = make_tree({{"Trump", "NNP", 2, "nsubj"},
                               {"man", "NN", 0, "root"},
                               {"policy", "NN", 2, "nmod:of"},
                               {"bad", "JJ", 3, "amod"}});
  const auto matches = match_pattern(last, tree);
  ASSERT_EQ(matches.size(), 1u);
  EXPECT_EQ(matches[0].captures.at(CaptureName::kOpSubject), 0u);
  EXPECT_EQ(matches[0].captures.at(CaptureName::kOpExp1), 2u);
  EXPECT_EQ(matches[0].captures.at(CaptureName::kOpExp2), 3u);
}

TEST(DepPatternTest, HillaryLooksPresidential) {
  const auto rule = default_rules()[10];
  const auto matches = match_pattern(rule, hillary_tree());
  ASSERT_EQ(matches.size(), 1u);
  EXPECT_EQ(matches[0].root, 1u);
  EXPECT_EQ(matches[0].captures,
            (std::map<CaptureName, std::size_t>{{CaptureName::kOpSubject, 0},
                                                {CaptureName::kOpExp1, 2}}));
}

TEST(DepPatternTest, NoSubjectNoMatch) {
  const auto rule = default_rules()[10];
  const auto tree = make_tree({{"Hillary", "NNP", 2, "dobj"},
                               {"looks", "VBZ", 0, "root"},
                               {"presidential", "JJ", 2, "acomp"}});
  EXPECT_TRUE(match_pattern(rule, tree).empty());
}

TEST(DepPatternTest, BothBranchesMatch) {
  const auto rule = default_rules()[10];
  const auto tree = make_tree({{"Hillary", "NNP", 2, "nsubj"},
                               {"seems", "VBZ", 0, "root"},
                               {"ready", "JJ", 2, "acomp"},
                               {"lead", "VB", 2, "xcomp"}});
  const auto matches = match_pattern(rule, tree);
  ASSERT_EQ(matches.size(), 2u);
  std::set<std::size_t> bound;
  for (const auto& m : matches) {
    EXPECT_EQ(m.captures.at(CaptureName::kOpSubject), 0u);
    for (const auto& [name, token] : m.captures) {
      if (name != CaptureName::kOpSubject) bound.insert(token);
    }
  }
  EXPECT_EQ(bound, (std::set<std::size_t>{2, 3}));
}

TEST(DepPatternTest, MatchesAgreeWithBruteForce) {
  const auto rules = default_rules();
  Rng rng(7);
  std::size_t nonempty = 0;
  for (int t = 0; t < 200; ++t) {
    const auto tree = testing::random_tree(rng, 6);
    for (const auto& rule : rules) {
      const auto got = match_pattern(rule, tree);
      const std::set<PatternMatch> as_set(got.begin(), got.end());
      EXPECT_EQ(as_set.size(), got.size()) << "duplicates for " << rule.source();
      EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
      EXPECT_EQ(as_set, testing::brute_force_matches(rule, tree))
          << "rule " << rule.source() << " tree " << t;
      nonempty += got.empty() ? 0 : 1;
    }
  }
  EXPECT_GT(nonempty, 0u);
}

TEST(DepPatternTest, SerializationRoundTrip) {
  const auto rules = default_rules();
  Rng rng(11);
  std::vector<ParsedSentence> trees;
  for (int t = 0; t < 50; ++t) trees.push_back(testing::random_tree(rng, 6));
  trees.push_back(hillary_tree());
  trees.push_back(video_game_tree());
  for (const auto& rule : rules) {
    const auto again = DepPattern::compile(rule.to_string());
    EXPECT_EQ(again.to_string(), rule.to_string());
    for (const auto& tree : trees) {
      EXPECT_EQ(match_pattern(again, tree), match_pattern(rule, tree));
    }
  }
}

TEST(DepPatternTest, ReadRulesSkipsComments) {
  std::istringstream in(
      "# header\n\n{}=OpExp1 >/nmod:in/ {}=OpSubject\n  \n"
      "{}=OpExp1 </advcl:as/ {}=OpSubject\n");
  EXPECT_EQ(read_rules(in).size(), 2u);
}

TEST(ParseExtractionTest, VideoGameSentence) {
  const auto tree = video_game_tree();
  const auto spans = extract_noun_phrases(tree);
  const auto rules = default_rules();
  const auto extractions = extract_parse_expressions(tree, rules, spans);
  const auto it = std::find_if(
      extractions.begin(), extractions.end(),
      [](const ParseExtraction& e) { return e.subject == TokenSpan{0, 2}; });
  ASSERT_NE(it, extractions.end());
  EXPECT_EQ(it->head, 1u);
  EXPECT_TRUE(std::any_of(it->expression.begin(), it->expression.end(),
                          [](const ExpressionToken& t) { return t.token == 2; }));
}

TEST(ParseExtractionTest, NegationMarksToken) {
  const auto tree = make_tree({{"Genocide", "NN", 2, "nsubj"},
                               {"is", "VBZ", 0, "root"},
                               {"not", "RB", 4, "neg"},
                               {"good", "JJ", 2, "acomp"}});
  const auto rules = default_rules();
  const std::vector<TokenSpan> spans = {{0, 1}};
  const auto extractions = extract_parse_expressions(tree, rules, spans);
  ASSERT_EQ(extractions.size(), 1u);
  EXPECT_EQ(extractions[0].expression,
            (std::vector<ExpressionToken>{{3, true}}));
}

TEST(ParseExtractionTest, NoRuleMatchGivesEmptyExpression) {
  const auto tree = make_tree({{"Video", "NN", 2, "compound"},
                               {"games", "NNS", 0, "root"},
                               {".", ".", 2, "punct"}});
  const auto rules = default_rules();
  const auto spans = extract_noun_phrases(tree);
  const auto extractions = extract_parse_expressions(tree, rules, spans);
  ASSERT_EQ(extractions.size(), 1u);
  EXPECT_EQ(extractions[0].subject, (TokenSpan{0, 2}));
  EXPECT_TRUE(extractions[0].expression.empty());
}

TEST(ParseExtractionTest, SpanHeadIsRightmostExternal) {
  const auto tree = video_game_tree();
  EXPECT_EQ(span_head(tree, {0, 2}), 1u);
  EXPECT_EQ(span_head(tree, {3, 6}), 5u);
}

}  // namespace
}  // namespace opdist

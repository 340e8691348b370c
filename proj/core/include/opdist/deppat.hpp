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

#ifndef OPDIST_DEPPAT_HPP_
#define OPDIST_DEPPAT_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <regex>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "opdist/corpus.hpp"
#include "opdist/pos_pattern.hpp"

namespace opdist {

// Named captures allowed in dependency patterns.
enum class CaptureName { kOpSubject, kOpExp1, kOpExp2 };

std::string_view to_string(CaptureName name);
std::optional<CaptureName> parse_capture_name(std::string_view name);

// Node attribute constraint such as tag:/VB.*/ (full match).
struct NodeConstraint {
  std::string key;  // tag, word or lemma
  std::string pattern;
  std::regex regex;
};

// Relation label matcher: empty (any), literal name, or /regex/ (full match).
struct RelationMatcher {
  enum class Kind { kAny, kLiteral, kRegex };
  Kind kind = Kind::kAny;
  std::string text;
  std::regex regex;

  bool matches(const std::string& label) const;
};

enum class Direction {
  kGovernorOf,   // A >rel B : B is a dependent of A
  kDependentOf,  // A <rel B : A is a dependent of B
};

struct Conjunction;

struct RelationTerm {
  Direction direction = Direction::kGovernorOf;
  RelationMatcher relation;
  std::size_t target = 0;  // index into DepPattern::nodes()
};

struct AlternationTerm {
  std::vector<Conjunction> branches;
};

using Term = std::variant<RelationTerm, AlternationTerm>;

struct Conjunction {
  std::vector<Term> terms;
};

struct PatternNode {
  std::vector<NodeConstraint> constraints;
  std::optional<CaptureName> capture;
  Conjunction relations;
};

// A Semgrex-style dependency pattern restricted to the subset needed by the
// opinion-expression rules:
//
//   node     := '{' [key ':' '/' regex '/' (';' ...)*] '}' ['=' name]
//   pattern  := node relations | '(' pattern ')'
//   relations:= ( ('>'|'<') [label | '/' regex '/'] target
//              | '[' relations ('|' relations)* ']' )*
//   target   := node | '(' pattern ')'
//
// All relations after a node apply to that node. Nodes sharing a capture
// name must bind the same token; otherwise pattern nodes bind distinct
// tokens. A '(' left open at the end of input is closed implicitly.
class DepPattern {
 public:
  // Throws DataError ("column N: ...") on syntax errors and on capture names
  // other than OpSubject, OpExp1 and OpExp2.
  static DepPattern compile(std::string_view source);

  // Node 0 is the root.
  const std::vector<PatternNode>& nodes() const { return nodes_; }
  const std::string& source() const { return source_; }
  std::size_t alternation_count() const;

  bool node_matches(std::size_t node, const ParsedToken& token) const;

  // Canonical source text; compile(to_string()) is equivalent.
  std::string to_string() const;

 private:
  friend class DepPatternParser;
  std::string source_;
  std::vector<PatternNode> nodes_;
};

struct PatternMatch {
  std::size_t root = 0;
  std::map<CaptureName, std::size_t> captures;

  friend auto operator<=>(const PatternMatch&, const PatternMatch&) = default;
};

// Every distinct (root, captures) assignment satisfying the pattern, ordered
// by root token index then captures.
std::vector<PatternMatch> match_pattern(const DepPattern& pattern,
                                        const ParsedSentence& tree);

// The fourteen opinion-expression rules.
const std::vector<std::string>& default_rule_sources();
std::vector<DepPattern> default_rules();

// One pattern per line; blank lines and '#' comments skipped.
std::vector<DepPattern> read_rules(std::istream& in);
std::vector<DepPattern> load_rules(const std::filesystem::path& path);

struct ExpressionToken {
  std::size_t token = 0;
  bool negated = false;

  friend auto operator<=>(const ExpressionToken&,
                          const ExpressionToken&) = default;
};

struct ParseExtraction {
  TokenSpan subject;
  std::size_t head = 0;  // syntactic head of the subject span
  std::vector<ExpressionToken> expression;
};

// Head token of a span: the token whose governor lies outside the span (the
// rightmost one if several do).
std::size_t span_head(const ParsedSentence& tree, const TokenSpan& span);

// One extraction per noun-phrase span. Expression tokens are the union of
// OpExp1/OpExp2 bindings over every rule match whose OpSubject is the span
// head, excluding tokens inside the span. A token is negated when it has a
// "neg" dependent.
std::vector<ParseExtraction> extract_parse_expressions(
    const ParsedSentence& tree, std::span<const DepPattern> rules,
    std::span<const TokenSpan> noun_phrases);

}  // namespace opdist

#endif  // OPDIST_DEPPAT_HPP_

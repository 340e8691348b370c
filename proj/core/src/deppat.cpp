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

#include "opdist/deppat.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>

#include "opdist/error.hpp"
#include "opdist/text_util.hpp"

namespace opdist {

std::string_view to_string(CaptureName name) {
  switch (name) {
    case CaptureName::kOpSubject: return "OpSubject";
    case CaptureName::kOpExp1: return "OpExp1";
    case CaptureName::kOpExp2: return "OpExp2";
  }
  return "";
}

std::optional<CaptureName> parse_capture_name(std::string_view name) {
  if (name == "OpSubject") return CaptureName::kOpSubject;
  if (name == "OpExp1") return CaptureName::kOpExp1;
  if (name == "OpExp2") return CaptureName::kOpExp2;
  return std::nullopt;
}

bool RelationMatcher::matches(const std::string& label) const {
  switch (kind) {
    case Kind::kAny: return true;
    case Kind::kLiteral: return label == text;
    case Kind::kRegex: return std::regex_match(label, regex);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Parser

class DepPatternParser {
 public:
  explicit DepPatternParser(std::string_view src) : src_(src) {}

  DepPattern parse() {
    DepPattern pattern;
    pattern.source_ = std::string(src_);
    nodes_ = &pattern.nodes_;
    skip_space();
    parse_pattern();
    skip_space();
    if (pos_ < src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return pattern;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw DataError("pattern column " + std::to_string(pos_ + 1) + ": " +
                    message);
  }

  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return at_end() ? '\0' : src_[pos_]; }

  void skip_space() {
    while (!at_end() && (src_[pos_] == ' ' || src_[pos_] == '\t')) ++pos_;
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == ':' || c == '.' || c == '-';
  }

  std::string parse_regex_body() {
    expect('/');
    std::string body;
    while (!at_end() && src_[pos_] != '/') {
      if (src_[pos_] == '\\' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        body.push_back('/');
        pos_ += 2;
        continue;
      }
      body.push_back(src_[pos_++]);
    }
    if (at_end()) fail("unterminated regex");
    ++pos_;
    return body;
  }

  std::regex make_regex(const std::string& body) {
    try {
      return std::regex(body);
    } catch (const std::regex_error&) {
      fail("invalid regex /" + body + "/");
    }
  }

  // '(' pattern ')' or node relations. Returns the node index.
  std::size_t parse_pattern() {
    skip_space();
    if (peek() == '(') {
      ++pos_;
      const std::size_t node = parse_pattern();
      skip_space();
      if (at_end()) return node;  // implicitly closed at end of input
      expect(')');
      return node;
    }
    const std::size_t node = parse_node();
    Conjunction relations = parse_relations(node);
    (*nodes_)[node].relations = std::move(relations);
    return node;
  }

  std::size_t parse_node() {
    skip_space();
    expect('{');
    PatternNode node;
    skip_space();
    while (peek() != '}') {
      if (at_end()) fail("unterminated node");
      const std::size_t start = pos_;
      while (!at_end() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
      }
      if (pos_ == start) fail("expected attribute name or '}'");
      std::string key(src_.substr(start, pos_ - start));
      if (key != "tag" && key != "word" && key != "lemma") {
        pos_ = start;
        fail("unknown node attribute \"" + key + "\"");
      }
      skip_space();
      expect(':');
      skip_space();
      NodeConstraint constraint;
      constraint.key = std::move(key);
      if (peek() == '/') {
        constraint.pattern = parse_regex_body();
      } else {
        const std::size_t value_start = pos_;
        while (!at_end() && is_ident_char(src_[pos_])) ++pos_;
        if (pos_ == value_start) fail("expected attribute value");
        constraint.pattern = std::string(src_.substr(value_start, pos_ - value_start));
      }
      constraint.regex = make_regex(constraint.pattern);
      node.constraints.push_back(std::move(constraint));
      skip_space();
      if (peek() == ';') {
        ++pos_;
        skip_space();
      }
    }
    ++pos_;  // '}'
    if (peek() == '=') {
      ++pos_;
      const std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                           src_[pos_] == '_')) {
        ++pos_;
      }
      const auto name = src_.substr(start, pos_ - start);
      const auto capture = parse_capture_name(name);
      if (!capture) {
        pos_ = start;
        fail("unknown capture name \"" + std::string(name) +
             "\" (expected OpSubject, OpExp1 or OpExp2)");
      }
      node.capture = capture;
    }
    nodes_->push_back(std::move(node));
    return nodes_->size() - 1;
  }

  Conjunction parse_relations(std::size_t owner) {
    Conjunction conjunction;
    while (true) {
      skip_space();
      const char c = peek();
      if (c == '>' || c == '<') {
        conjunction.terms.emplace_back(parse_relation());
      } else if (c == '[') {
        ++pos_;
        AlternationTerm alternation;
        while (true) {
          Conjunction branch = parse_relations(owner);
          if (branch.terms.empty()) fail("empty alternation branch");
          alternation.branches.push_back(std::move(branch));
          skip_space();
          if (peek() == '|') {
            ++pos_;
            continue;
          }
          expect(']');
          break;
        }
        conjunction.terms.emplace_back(std::move(alternation));
      } else {
        return conjunction;
      }
    }
  }

  RelationTerm parse_relation() {
    RelationTerm term;
    term.direction = peek() == '>' ? Direction::kGovernorOf : Direction::kDependentOf;
    ++pos_;
    if (peek() == '/') {
      term.relation.kind = RelationMatcher::Kind::kRegex;
      term.relation.text = parse_regex_body();
      term.relation.regex = make_regex(term.relation.text);
    } else {
      const std::size_t start = pos_;
      while (!at_end() && is_ident_char(src_[pos_])) ++pos_;
      term.relation.text = std::string(src_.substr(start, pos_ - start));
      term.relation.kind = term.relation.text.empty()
                               ? RelationMatcher::Kind::kAny
                               : RelationMatcher::Kind::kLiteral;
    }
    skip_space();
    if (peek() == '(') {
      term.target = parse_pattern();
    } else if (peek() == '{') {
      term.target = parse_node();
    } else {
      fail("expected '{' or '(' after relation");
    }
    return term;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::vector<PatternNode>* nodes_ = nullptr;
};

DepPattern DepPattern::compile(std::string_view source) {
  return DepPatternParser(source).parse();
}

namespace {

std::size_t count_alternations(const Conjunction& conjunction) {
  std::size_t count = 0;
  for (const auto& term : conjunction.terms) {
    if (const auto* alt = std::get_if<AlternationTerm>(&term)) {
      ++count;
      for (const auto& branch : alt->branches) count += count_alternations(branch);
    }
  }
  return count;
}

}  // namespace

std::size_t DepPattern::alternation_count() const {
  std::size_t count = 0;
  for (const auto& node : nodes_) count += count_alternations(node.relations);
  return count;
}

bool DepPattern::node_matches(std::size_t node,
                              const ParsedToken& token) const {
  for (const auto& constraint : nodes_[node].constraints) {
    const std::string& value = constraint.key == "tag"    ? token.tag()
                               : constraint.key == "word" ? token.form
                                                          : token.lemma;
    if (!std::regex_match(value, constraint.regex)) return false;
  }
  return true;
}

namespace {

void write_node(const DepPattern& pattern, std::size_t index, std::string& out);

void write_conjunction(const DepPattern& pattern, const Conjunction& conjunction,
                       std::string& out) {
  bool first = true;
  for (const auto& term : conjunction.terms) {
    if (!first) out.push_back(' ');
    first = false;
    if (const auto* rel = std::get_if<RelationTerm>(&term)) {
      out.push_back(rel->direction == Direction::kGovernorOf ? '>' : '<');
      if (rel->relation.kind == RelationMatcher::Kind::kRegex) {
        out += "/" + rel->relation.text + "/";
      } else {
        out += rel->relation.text;
      }
      out.push_back(' ');
      const auto& target = pattern.nodes()[rel->target];
      if (target.relations.terms.empty()) {
        write_node(pattern, rel->target, out);
      } else {
        out.push_back('(');
        write_node(pattern, rel->target, out);
        out.push_back(')');
      }
    } else {
      const auto& alt = std::get<AlternationTerm>(term);
      out += "[ ";
      for (std::size_t b = 0; b < alt.branches.size(); ++b) {
        if (b > 0) out += " | ";
        write_conjunction(pattern, alt.branches[b], out);
      }
      out += " ]";
    }
  }
}

void write_node(const DepPattern& pattern, std::size_t index, std::string& out) {
  const auto& node = pattern.nodes()[index];
  out.push_back('{');
  for (std::size_t i = 0; i < node.constraints.size(); ++i) {
    if (i > 0) out.push_back(';');
    out += node.constraints[i].key + ":/" + node.constraints[i].pattern + "/";
  }
  out.push_back('}');
  if (node.capture) out += "=" + std::string(to_string(*node.capture));
  if (!node.relations.terms.empty()) {
    out.push_back(' ');
    write_conjunction(pattern, node.relations, out);
  }
}

}  // namespace

std::string DepPattern::to_string() const {
  std::string out;
  if (!nodes_.empty()) write_node(*this, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Matching

namespace {

struct Goal {
  const Term* term;
  std::size_t source;
};

class Matcher {
 public:
  Matcher(const DepPattern& pattern, const ParsedSentence& tree)
      : pattern_(pattern),
        tree_(tree),
        binding_(pattern.nodes().size()),
        owner_(tree.size()) {
    for (std::size_t i = 0; i < tree.size(); ++i) {
      children_.push_back(tree.children_of(i));
    }
  }

  std::vector<PatternMatch> run() {
    for (std::size_t root = 0; root < tree_.size(); ++root) {
      if (!try_bind(0, root)) continue;
      std::vector<Goal> goals;
      push_terms(pattern_.nodes()[0].relations, 0, goals);
      solve(goals);
      unbind(0, root);
    }
    return {results_.begin(), results_.end()};
  }

 private:
  // Identity of a pattern node for the distinctness constraint: the capture
  // name when present, otherwise the node itself.
  std::size_t identity(std::size_t node) const {
    const auto& capture = pattern_.nodes()[node].capture;
    return capture ? static_cast<std::size_t>(*capture)
                   : 3 + node;
  }

  bool try_bind(std::size_t node, std::size_t token) {
    if (!pattern_.node_matches(node, tree_.tokens[token])) return false;
    const std::size_t id = identity(node);
    if (owner_[token] && owner_[token]->first != id) return false;
    // A name already bound elsewhere must refer to this same token.
    for (std::size_t t = 0; t < owner_.size(); ++t) {
      if (t != token && owner_[t] && owner_[t]->first == id) return false;
    }
    if (owner_[token]) {
      ++owner_[token]->second;
    } else {
      owner_[token] = std::make_pair(id, std::size_t{1});
    }
    binding_[node] = token;
    return true;
  }

  void unbind(std::size_t node, std::size_t token) {
    binding_[node].reset();
    if (--owner_[token]->second == 0) owner_[token].reset();
  }

  static void push_terms(const Conjunction& conjunction, std::size_t source,
                         std::vector<Goal>& goals) {
    for (auto it = conjunction.terms.rbegin(); it != conjunction.terms.rend();
         ++it) {
      goals.push_back({&*it, source});
    }
  }

  void solve(std::vector<Goal>& goals) {
    if (goals.empty()) {
      record();
      return;
    }
    const Goal goal = goals.back();
    goals.pop_back();
    if (const auto* rel = std::get_if<RelationTerm>(goal.term)) {
      const std::size_t from = *binding_[goal.source];
      std::vector<std::size_t> candidates;
      if (rel->direction == Direction::kGovernorOf) {
        for (const std::size_t child : children_[from]) {
          if (rel->relation.matches(tree_.tokens[child].deprel)) {
            candidates.push_back(child);
          }
        }
      } else if (const auto head = tree_.head_of(from);
                 head && rel->relation.matches(tree_.tokens[from].deprel)) {
        candidates.push_back(*head);
      }
      for (const std::size_t token : candidates) {
        if (!try_bind(rel->target, token)) continue;
        const std::size_t mark = goals.size();
        push_terms(pattern_.nodes()[rel->target].relations, rel->target, goals);
        solve(goals);
        goals.resize(mark);
        unbind(rel->target, token);
      }
    } else {
      const auto& alt = std::get<AlternationTerm>(*goal.term);
      for (const auto& branch : alt.branches) {
        const std::size_t mark = goals.size();
        push_terms(branch, goal.source, goals);
        solve(goals);
        goals.resize(mark);
      }
    }
    goals.push_back(goal);
  }

  void record() {
    PatternMatch match;
    match.root = *binding_[0];
    for (std::size_t n = 0; n < binding_.size(); ++n) {
      const auto& capture = pattern_.nodes()[n].capture;
      if (capture && binding_[n]) match.captures[*capture] = *binding_[n];
    }
    results_.insert(std::move(match));
  }

  const DepPattern& pattern_;
  const ParsedSentence& tree_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::optional<std::size_t>> binding_;
  // token -> (identity, reference count)
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> owner_;
  std::set<PatternMatch> results_;
};

}  // namespace

std::vector<PatternMatch> match_pattern(const DepPattern& pattern,
                                        const ParsedSentence& tree) {
  if (pattern.nodes().empty() || tree.size() == 0) return {};
  return Matcher(pattern, tree).run();
}

// ---------------------------------------------------------------------------
// Rules and extraction

const std::vector<std::string>& default_rule_sources() {
  static const std::vector<std::string> kRules = {
      "{}=OpExp1 >/nmod:in/ {}=OpSubject",
      "{}=OpExp1 >/nmod:to/ {}=OpSubject",
      "{}=OpExp1 </nmod:of/ {}=OpSubject",
      "{}=OpExp1 >/nmod:by/ {}=OpSubject",
      "{}=OpExp1 >/nmod:after/ {}=OpSubject",
      "{}=OpExp1 >/nmod:without/ {}=OpSubject",
      "{}=OpExp1 >nsubj {}=OpSubject >dobj {}=OpExp2",
      "{}=OpExp1 >nsubj {}=OpSubject <csubj {}=OpExp2",
      "{}=OpExp1 >nsubj {}=OpSubject >/compound.*/ {}=OpExp2",
      "{}=OpExp1 </advcl:as/ {}=OpSubject",
      "{tag:/VB.*/} >nsubj {}=OpSubject  [ >acomp {}=OpExp1 | >xcomp {}=OpExp2]",
      "{tag:/VB.*/}=OpExp2 >advmod {}=OpExp1 [< {}=OpSubject | > {}=OpSubject]",
      "{tag:/NN.*/}  >nsubj {}=OpSubject  >amod {}=OpExp1",
      "{tag:/NN.*/}  >nsubj {}=OpSubject  >/nmod.*/ ({}=OpExp1 >amod {}=OpExp2",
  };
  return kRules;
}

std::vector<DepPattern> default_rules() {
  std::vector<DepPattern> rules;
  for (const auto& source : default_rule_sources()) {
    rules.push_back(DepPattern::compile(source));
  }
  return rules;
}

std::vector<DepPattern> read_rules(std::istream& in) {
  std::vector<DepPattern> rules;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    try {
      rules.push_back(DepPattern::compile(body));
    } catch (const DataError& e) {
      throw DataError("rule line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rules;
}

std::vector<DepPattern> load_rules(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open rule file: " + path.string());
  return read_rules(in);
}

std::size_t span_head(const ParsedSentence& tree, const TokenSpan& span) {
  std::size_t head = span.end - 1;
  for (std::size_t i = span.begin; i < span.end; ++i) {
    const auto governor = tree.head_of(i);
    if (!governor || !span.contains(*governor)) head = i;
  }
  return head;
}

std::vector<ParseExtraction> extract_parse_expressions(
    const ParsedSentence& tree, std::span<const DepPattern> rules,
    std::span<const TokenSpan> noun_phrases) {
  std::vector<std::vector<PatternMatch>> matches;
  matches.reserve(rules.size());
  for (const auto& rule : rules) matches.push_back(match_pattern(rule, tree));

  std::vector<bool> negated(tree.size(), false);
  for (std::size_t i = 0; i < tree.size(); ++i) {
    if (tree.tokens[i].deprel == "neg") {
      if (const auto head = tree.head_of(i)) negated[*head] = true;
    }
  }

  std::vector<ParseExtraction> extractions;
  for (const auto& span : noun_phrases) {
    ParseExtraction extraction;
    extraction.subject = span;
    extraction.head = span_head(tree, span);
    std::set<std::size_t> expression;
    for (const auto& rule_matches : matches) {
      for (const auto& match : rule_matches) {
        const auto subject = match.captures.find(CaptureName::kOpSubject);
        if (subject == match.captures.end() || subject->second != extraction.head) {
          continue;
        }
        for (const auto name : {CaptureName::kOpExp1, CaptureName::kOpExp2}) {
          const auto it = match.captures.find(name);
          if (it != match.captures.end() && !span.contains(it->second)) {
            expression.insert(it->second);
          }
        }
      }
    }
    for (const std::size_t token : expression) {
      extraction.expression.push_back({token, negated[token]});
    }
    extractions.push_back(std::move(extraction));
  }
  return extractions;
}

}  // namespace opdist

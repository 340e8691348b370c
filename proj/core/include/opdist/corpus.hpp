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

#ifndef OPDIST_CORPUS_HPP_
#define OPDIST_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace opdist {

struct Token {
  std::string surface;
  std::string normalized;
  // Byte offsets into the owning opinion's text, half open.
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::size_t index = 0;
  std::vector<Token> tokens;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct Opinion {
  std::string id;
  std::string text;
  std::optional<std::string> label;
  std::vector<Sentence> sentences;

  friend bool operator==(const Opinion&, const Opinion&) = default;
};

struct Dataset {
  std::string name;
  std::vector<Opinion> opinions;
  std::set<std::string> label_set;

  std::size_t size() const { return opinions.size(); }

  // True when every opinion carries a gold label.
  bool fully_labeled() const;

  // Gold labels as dense integer ids in label_set order; -1 for unlabeled.
  std::vector<int> label_ids() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

enum class CorpusFormat { kJsonl, kTsv };

std::optional<CorpusFormat> parse_corpus_format(std::string_view name);

// Splits text into sentences and tokens. Sentences end at '.', '!' or '?'
// followed by whitespace or end of text. Tokens break on whitespace and
// punctuation; apostrophe suffixes ("n't", "'s", "'re", ...) become separate
// tokens and hyphens between word characters stay inside the token.
std::vector<Sentence> tokenize(std::string_view text);

// Builds an opinion from raw text, running the tokenizer.
Opinion make_opinion(std::string id, std::string text,
                     std::optional<std::string> label = std::nullopt);

// Builds a dataset, rejecting duplicate ids and recomputing label_set.
Dataset make_dataset(std::string name, std::vector<Opinion> opinions);

// Reads a corpus. JSONL records are {"id", "text", "label"}; TSV files
// carry a header with columns id, label, text. Errors name the line.
Dataset load_opinions(const std::filesystem::path& path, CorpusFormat format);
Dataset read_opinions(std::istream& in, CorpusFormat format,
                      std::string name = "");

void write_opinions(const Dataset& dataset, std::ostream& out,
                    CorpusFormat format);

// ---------------------------------------------------------------------------
// Dependency parses (CoNLL-U)

struct ParsedToken {
  std::string form;
  std::string lemma;
  std::string upos;
  std::string xpos;
  // 1-based head index; 0 is the artificial root.
  int head = 0;
  std::string deprel;
  std::optional<std::string> ner;
  std::string misc;

  // Penn tag when present, otherwise the universal tag.
  const std::string& tag() const {
    return xpos.empty() || xpos == "_" ? upos : xpos;
  }

  friend bool operator==(const ParsedToken&, const ParsedToken&) = default;
};

// A dependency tree over tokens 0..n-1. ParsedToken::head stays 1-based as
// in CoNLL-U; head_of() translates to 0-based indices.
struct ParsedSentence {
  std::vector<ParsedToken> tokens;

  std::size_t size() const { return tokens.size(); }
  // 0-based head of token i, nullopt for the root.
  std::optional<std::size_t> head_of(std::size_t i) const;
  std::vector<std::size_t> children_of(std::size_t i) const;

  friend bool operator==(const ParsedSentence&,
                         const ParsedSentence&) = default;
};

// Throws DataError unless heads form a single tree (one root, no cycles).
void validate_tree(const ParsedSentence& sentence);

using ParseIndex = std::map<std::string, std::vector<ParsedSentence>>;

// Reads CoNLL-U grouped by "# opinion_id = <id>" comments. When
// `known_ids` is given, an id outside it is an error.
ParseIndex load_conllu(const std::filesystem::path& path,
                       const std::set<std::string>* known_ids = nullptr);
ParseIndex read_conllu(std::istream& in,
                       const std::set<std::string>* known_ids = nullptr);

void write_conllu(const ParseIndex& parses, std::ostream& out);

}  // namespace opdist

#endif  // OPDIST_CORPUS_HPP_

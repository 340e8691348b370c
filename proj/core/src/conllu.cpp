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

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "opdist/corpus.hpp"
#include "opdist/error.hpp"
#include "opdist/text_util.hpp"

namespace opdist {
namespace {

[[noreturn]] void fail_line(std::size_t line, const std::string& message) {
  throw DataError("line " + std::to_string(line) + ": " + message);
}

std::string field_value(std::string_view field) {
  return field == "_" ? std::string() : std::string(field);
}

std::optional<std::string> ner_from_misc(std::string_view misc) {
  for (const auto item : split(misc, '|')) {
    if (item.substr(0, 4) == "NER=") {
      const auto value = item.substr(4);
      if (value.empty() || value == "O") return std::nullopt;
      return std::string(value);
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::size_t> ParsedSentence::head_of(std::size_t i) const {
  const int head = tokens[i].head;
  if (head <= 0) return std::nullopt;
  return static_cast<std::size_t>(head - 1);
}

std::vector<std::size_t> ParsedSentence::children_of(std::size_t i) const {
  std::vector<std::size_t> children;
  for (std::size_t j = 0; j < tokens.size(); ++j) {
    if (tokens[j].head == static_cast<int>(i) + 1) children.push_back(j);
  }
  return children;
}

void validate_tree(const ParsedSentence& sentence) {
  const std::size_t n = sentence.size();
  if (n == 0) throw DataError("empty dependency tree");
  std::size_t roots = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const int head = sentence.tokens[i].head;
    if (head < 0 || head > static_cast<int>(n)) {
      throw DataError("token " + std::to_string(i + 1) +
                      ": head index out of range");
    }
    if (head == static_cast<int>(i) + 1) {
      throw DataError("token " + std::to_string(i + 1) + " is its own head");
    }
    if (head == 0) ++roots;
  }
  if (roots != 1) {
    throw DataError("dependency tree must have exactly one root, found " +
                    std::to_string(roots));
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t node = i;
    for (std::size_t steps = 0;; ++steps) {
      const auto head = sentence.head_of(node);
      if (!head) break;
      if (steps > n) {
        throw DataError("cycle in dependency heads through token " +
                        std::to_string(i + 1));
      }
      node = *head;
    }
  }
}

ParseIndex read_conllu(std::istream& in,
                       const std::set<std::string>* known_ids) {
  ParseIndex index;
  std::optional<std::string> current_id;
  ParsedSentence sentence;
  std::size_t sentence_line = 0;
  std::string line;
  std::size_t line_no = 0;

  const auto finish_sentence = [&]() {
    if (sentence.tokens.empty()) return;
    if (!current_id) {
      fail_line(sentence_line, "sentence before any \"# opinion_id =\" comment");
    }
    try {
      validate_tree(sentence);
    } catch (const DataError& e) {
      fail_line(sentence_line, e.what());
    }
    index[*current_id].push_back(std::move(sentence));
    sentence = ParsedSentence{};
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) {
      finish_sentence();
      continue;
    }
    if (line.front() == '#') {
      const auto body = trim(std::string_view(line).substr(1));
      constexpr std::string_view kKey = "opinion_id";
      if (body.substr(0, kKey.size()) == kKey) {
        auto rest = trim(body.substr(kKey.size()));
        if (rest.empty() || rest.front() != '=') continue;
        finish_sentence();
        const std::string id(trim(rest.substr(1)));
        if (id.empty()) fail_line(line_no, "empty opinion_id");
        if (known_ids && !known_ids->contains(id)) {
          fail_line(line_no, "unknown opinion_id \"" + id + "\"");
        }
        current_id = id;
        index[id];
      }
      continue;
    }
    const auto fields = split(line, '\t');
    if (fields.size() != 10) {
      fail_line(line_no, "expected 10 tab-separated CoNLL-U columns, got " +
                             std::to_string(fields.size()));
    }
    // Multiword-token ranges and empty nodes are not part of the basic tree.
    if (fields[0].find_first_of("-.") != std::string_view::npos) continue;
    const auto id = parse_int(fields[0]);
    if (!id || *id != static_cast<long long>(sentence.tokens.size()) + 1) {
      fail_line(line_no, "token ids must run 1..n in order");
    }
    const auto head = parse_int(fields[6]);
    if (!head) fail_line(line_no, "non-numeric head");
    if (sentence.tokens.empty()) sentence_line = line_no;
    ParsedToken token;
    token.form = std::string(fields[1]);
    token.lemma = field_value(fields[2]);
    token.upos = field_value(fields[3]);
    token.xpos = field_value(fields[4]);
    token.head = static_cast<int>(*head);
    token.deprel = field_value(fields[7]);
    token.misc = field_value(fields[9]);
    token.ner = ner_from_misc(token.misc);
    sentence.tokens.push_back(std::move(token));
  }
  finish_sentence();
  return index;
}

ParseIndex load_conllu(const std::filesystem::path& path,
                       const std::set<std::string>* known_ids) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open CoNLL-U file: " + path.string());
  try {
    return read_conllu(in, known_ids);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_conllu(const ParseIndex& parses, std::ostream& out) {
  const auto col = [](const std::string& value) {
    return value.empty() ? std::string("_") : value;
  };
  for (const auto& [id, sentences] : parses) {
    out << "# opinion_id = " << id << '\n';
    for (const auto& sentence : sentences) {
      for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
        const auto& t = sentence.tokens[i];
        std::string misc = t.misc;
        if (misc.empty() && t.ner) misc = "NER=" + *t.ner;
        out << (i + 1) << '\t' << t.form << '\t' << col(t.lemma) << '\t'
            << col(t.upos) << '\t' << col(t.xpos) << "\t_\t" << t.head << '\t'
            << col(t.deprel) << "\t_\t" << col(misc) << '\n';
      }
      out << '\n';
    }
  }
}

}  // namespace opdist

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

#include "opdist/spotter.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <tuple>
#include <unordered_map>

#include "opdist/error.hpp"
#include "opdist/text_util.hpp"

namespace opdist {
namespace {

std::vector<std::string> normalized_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& sentence : tokenize(text)) {
    for (const auto& token : sentence.tokens) out.push_back(token.normalized);
  }
  return out;
}

std::string join(const std::vector<std::string>& tokens, std::size_t begin,
                 std::size_t end) {
  std::string key;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) key.push_back(' ');
    key += tokens[i];
  }
  return key;
}

bool better(const ConceptCandidate& a, const ConceptCandidate& b) {
  if (a.link_probability != b.link_probability) {
    return a.link_probability > b.link_probability;
  }
  return a.concept_id < b.concept_id;
}

}  // namespace

void Gazetteer::add(std::string_view surface, std::string concept_id,
                    double link_probability) {
  if (!(link_probability >= 0.0 && link_probability <= 1.0)) {
    throw DataError("link probability outside [0, 1] for \"" +
                    std::string(surface) + "\"");
  }
  if (concept_id.empty()) throw DataError("empty concept id");
  const auto tokens = normalized_tokens(surface);
  if (tokens.empty() || tokens.size() > kMaxSurfaceTokens) {
    throw DataError("gazetteer surface must have 1.." +
                    std::to_string(kMaxSurfaceTokens) + " tokens: \"" +
                    std::string(surface) + "\"");
  }
  max_tokens_ = std::max(max_tokens_, tokens.size());
  auto& candidates = entries_[join(tokens, 0, tokens.size())];
  const auto existing =
      std::find_if(candidates.begin(), candidates.end(),
                   [&](const auto& c) { return c.concept_id == concept_id; });
  if (existing != candidates.end()) {
    existing->link_probability =
        std::max(existing->link_probability, link_probability);
  } else {
    candidates.push_back({std::move(concept_id), link_probability});
  }
  std::sort(candidates.begin(), candidates.end(), better);
}

const std::vector<ConceptCandidate>* Gazetteer::lookup(
    const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

Gazetteer read_gazetteer(std::istream& in) {
  Gazetteer gazetteer;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = split(body, '\t');
    const auto where = "gazetteer line " + std::to_string(line_no) + ": ";
    if (fields.size() != 3) {
      throw DataError(where + "expected surface<TAB>concept<TAB>probability");
    }
    const auto lp = parse_double(fields[2]);
    if (!lp) throw DataError(where + "malformed link probability");
    try {
      gazetteer.add(trim(fields[0]), std::string(trim(fields[1])), *lp);
    } catch (const DataError& e) {
      throw DataError(where + e.what());
    }
  }
  return gazetteer;
}

Gazetteer load_gazetteer(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open gazetteer: " + path.string());
  return read_gazetteer(in);
}

std::vector<OpinionSubject> group_mentions(std::vector<SubjectMention> mentions,
                                           double lp_threshold) {
  std::sort(mentions.begin(), mentions.end(), [](const auto& a, const auto& b) {
    return std::tie(a.sentence, a.token_begin, a.char_begin) <
           std::tie(b.sentence, b.token_begin, b.char_begin);
  });
  std::vector<OpinionSubject> subjects;
  std::unordered_map<std::string, std::size_t> by_concept;
  for (auto& mention : mentions) {
    if (mention.link_probability < lp_threshold) continue;
    const auto [it, inserted] =
        by_concept.try_emplace(mention.concept_id, subjects.size());
    if (inserted) subjects.push_back({mention.concept_id, {}});
    subjects[it->second].mentions.push_back(std::move(mention));
  }
  return subjects;
}

std::vector<OpinionSubject> spot(const Gazetteer& gazetteer,
                                 const Opinion& opinion, double lp_threshold) {
  if (!(lp_threshold >= 0.0 && lp_threshold <= 1.0)) {
    throw UsageError("link probability threshold must lie in [0, 1]");
  }
  std::vector<SubjectMention> mentions;
  for (const auto& sentence : opinion.sentences) {
    std::vector<std::string> tokens;
    for (const auto& token : sentence.tokens) tokens.push_back(token.normalized);
    std::size_t i = 0;
    while (i < tokens.size()) {
      const std::size_t longest =
          std::min(gazetteer.max_tokens(), tokens.size() - i);
      const std::vector<ConceptCandidate>* found = nullptr;
      std::size_t length = longest;
      for (; length > 0; --length) {
        found = gazetteer.lookup(join(tokens, i, i + length));
        if (found != nullptr && !found->empty()) break;
      }
      if (length == 0) {
        ++i;
        continue;
      }
      const ConceptCandidate& best = found->front();
      SubjectMention mention;
      mention.opinion_id = opinion.id;
      mention.sentence = sentence.index;
      mention.token_begin = i;
      mention.token_end = i + length;
      mention.char_begin = sentence.tokens[i].start;
      mention.char_end = sentence.tokens[i + length - 1].end;
      mention.surface = opinion.text.substr(
          mention.char_begin, mention.char_end - mention.char_begin);
      mention.concept_id = best.concept_id;
      mention.link_probability = best.link_probability;
      mentions.push_back(std::move(mention));
      i += length;
    }
  }
  return group_mentions(std::move(mentions), lp_threshold);
}

std::vector<SubjectMention> align_mentions(
    const Opinion& opinion, std::vector<SubjectMention> mentions) {
  std::vector<SubjectMention> aligned;
  for (auto& mention : mentions) {
    bool placed = false;
    for (const auto& sentence : opinion.sentences) {
      std::optional<std::size_t> first, last;
      for (std::size_t t = 0; t < sentence.tokens.size(); ++t) {
        const auto& token = sentence.tokens[t];
        if (token.end > mention.char_begin && token.start < mention.char_end) {
          if (!first) first = t;
          last = t;
        }
      }
      if (!first) continue;
      mention.opinion_id = opinion.id;
      mention.sentence = sentence.index;
      mention.token_begin = *first;
      mention.token_end = *last + 1;
      placed = true;
      break;
    }
    if (placed) aligned.push_back(std::move(mention));
  }
  return aligned;
}

}  // namespace opdist

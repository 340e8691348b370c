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

#include "opdist/semantics.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "opdist/error.hpp"
#include "opdist/matching.hpp"
#include "opdist/text_util.hpp"

namespace opdist {
namespace {

bool has_alnum(std::string_view term) {
  return std::any_of(term.begin(), term.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return u >= 0x80 || std::isalnum(u) != 0;
  });
}

bool is_zero(std::span<const float> v) {
  return std::all_of(v.begin(), v.end(), [](float x) { return x == 0.0f; });
}

template <typename T>
double cosine_distance_impl(std::span<const T> u, std::span<const T> v) {
  if (u.size() != v.size() || u.empty()) {
    throw std::invalid_argument("semantic_distance: dimension mismatch");
  }
  double dot = 0.0;
  double nu = 0.0;
  double nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = u[i];
    const double b = v[i];
    dot += a * b;
    nu += a * a;
    nv += b * b;
  }
  if (nu == 0.0 || nv == 0.0) {
    throw std::invalid_argument("semantic_distance: zero vector");
  }
  const double cosine = dot / (std::sqrt(nu) * std::sqrt(nv));
  return std::clamp(1.0 - cosine, 0.0, 1.0);
}

std::uint32_t byteswap32(std::uint32_t x) {
  return ((x & 0xFFu) << 24) | ((x & 0xFF00u) << 8) | ((x >> 8) & 0xFF00u) |
         (x >> 24);
}

float decode_le_float(const unsigned char* bytes) {
  std::uint32_t bits;
  std::memcpy(&bits, bytes, 4);
  if constexpr (std::endian::native == std::endian::big) bits = byteswap32(bits);
  return std::bit_cast<float>(bits);
}

void encode_le_float(float value, char* bytes) {
  auto bits = std::bit_cast<std::uint32_t>(value);
  if constexpr (std::endian::native == std::endian::big) bits = byteswap32(bits);
  std::memcpy(bytes, &bits, 4);
}

std::pair<std::size_t, std::size_t> parse_header(std::string_view line) {
  const auto fields = split_whitespace(line);
  const auto count = fields.size() == 2 ? parse_int(fields[0]) : std::nullopt;
  const auto dim = fields.size() == 2 ? parse_int(fields[1]) : std::nullopt;
  if (!count || !dim || *count < 0 || *dim <= 0) {
    throw DataError("word vectors: malformed header \"" + std::string(line) + "\"");
  }
  return {static_cast<std::size_t>(*count), static_cast<std::size_t>(*dim)};
}

VectorStore read_text_vectors(std::istream& in) {
  VectorStore store;
  std::optional<std::size_t> declared;
  std::string line;
  std::size_t line_no = 0;
  std::vector<float> values;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto fields = split_whitespace(body);
    if (line_no == 1 && fields.size() == 2 && parse_int(fields[0]) &&
        parse_int(fields[1])) {
      const auto [count, dim] = parse_header(body);
      declared = count;
      store = VectorStore(dim);
      continue;
    }
    const auto where = "word vectors line " + std::to_string(line_no) + ": ";
    if (fields.size() < 2) throw DataError(where + "expected word and values");
    values.clear();
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const auto v = parse_double(fields[i]);
      if (!v) throw DataError(where + "malformed value");
      values.push_back(static_cast<float>(*v));
    }
    if (store.dimension() == 0) store = VectorStore(values.size());
    try {
      store.add(fields[0], values);
    } catch (const DataError& e) {
      throw DataError(where + e.what());
    }
  }
  if (declared && *declared != store.size()) {
    throw DataError("word vectors: header declares " + std::to_string(*declared) +
                    " words, found " + std::to_string(store.size()));
  }
  return store;
}

VectorStore read_binary_vectors(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw DataError("word vectors: missing header");
  const auto [count, dim] = parse_header(trim(header));
  VectorStore store(dim);
  std::vector<unsigned char> raw(dim * 4);
  std::vector<float> values(dim);
  for (std::size_t n = 0; n < count; ++n) {
    std::string word;
    int c = in.get();
    while (c == '\n' || c == '\r') c = in.get();
    while (c != EOF && c != ' ') {
      word.push_back(static_cast<char>(c));
      c = in.get();
    }
    if (c == EOF || word.empty()) {
      throw DataError("word vectors: truncated at record " + std::to_string(n + 1));
    }
    if (!in.read(reinterpret_cast<char*>(raw.data()),
                 static_cast<std::streamsize>(raw.size()))) {
      throw DataError("word vectors: truncated vector for \"" + word + "\"");
    }
    for (std::size_t i = 0; i < dim; ++i) values[i] = decode_le_float(&raw[i * 4]);
    store.add(word, values);
  }
  return store;
}

}  // namespace

void VectorStore::add(std::string_view key, std::span<const float> values) {
  if (dimension_ == 0) dimension_ = values.size();
  if (values.size() != dimension_ || dimension_ == 0) {
    throw DataError("vector for \"" + std::string(key) + "\" has dimension " +
                    std::to_string(values.size()) + ", expected " +
                    std::to_string(dimension_));
  }
  if (!std::all_of(values.begin(), values.end(),
                   [](float x) { return std::isfinite(x); })) {
    throw DataError("vector for \"" + std::string(key) + "\" is not finite");
  }
  std::string name(key);
  if (const auto it = index_.find(name); it != index_.end()) {
    std::copy(values.begin(), values.end(),
              data_.begin() + static_cast<std::ptrdiff_t>(it->second * dimension_));
    return;
  }
  index_.emplace(name, keys_.size());
  keys_.push_back(std::move(name));
  data_.insert(data_.end(), values.begin(), values.end());
}

std::optional<std::span<const float>> VectorStore::find(
    std::string_view key) const {
  const auto it = index_.find(std::string(key));
  if (it == index_.end()) return std::nullopt;
  return std::span<const float>(data_.data() + it->second * dimension_,
                                dimension_);
}

VectorStore read_word_vectors(std::istream& in, WordVectorFormat format) {
  return format == WordVectorFormat::kText ? read_text_vectors(in)
                                           : read_binary_vectors(in);
}

VectorStore load_word_vectors(const std::filesystem::path& path,
                              WordVectorFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open word vectors: " + path.string());
  try {
    return read_word_vectors(in, format);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_word_vectors(const VectorStore& store, std::ostream& out,
                        WordVectorFormat format) {
  out << store.size() << ' ' << store.dimension() << '\n';
  for (const auto& key : store.keys()) {
    const auto values = *store.find(key);
    out << key;
    if (format == WordVectorFormat::kBinary) {
      out << ' ';
      char bytes[4];
      for (const float v : values) {
        encode_le_float(v, bytes);
        out.write(bytes, 4);
      }
    } else {
      char buffer[32];
      for (const float v : values) {
        const auto result = std::to_chars(buffer, buffer + sizeof buffer, v);
        out << ' ' << std::string_view(buffer, result.ptr);
      }
    }
    out << '\n';
  }
}

std::optional<std::vector<double>> phrase_vector(
    const VectorStore& store, std::span<const std::string> tokens) {
  std::vector<double> sum(store.dimension(), 0.0);
  std::size_t found = 0;
  for (const auto& token : tokens) {
    const auto v = store.find(token);
    if (!v) continue;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += (*v)[i];
    ++found;
  }
  if (found == 0) return std::nullopt;
  for (auto& x : sum) x /= static_cast<double>(found);
  return sum;
}

double semantic_distance(std::span<const double> u, std::span<const double> v) {
  return cosine_distance_impl(u, v);
}

double semantic_distance(std::span<const float> u, std::span<const float> v) {
  return cosine_distance_impl(u, v);
}

VectorStore read_precomputed_embeddings(std::istream& in) {
  VectorStore store;
  std::string line;
  std::size_t line_no = 0;
  std::vector<float> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    const auto fields = split(line, '\t');
    const auto where = "embeddings line " + std::to_string(line_no) + ": ";
    if (fields.size() < 2 || trim(fields[0]).empty()) {
      throw DataError(where + "expected id<TAB>values");
    }
    values.clear();
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const auto v = parse_double(fields[i]);
      if (!v) throw DataError(where + "malformed value");
      values.push_back(static_cast<float>(*v));
    }
    try {
      store.add(trim(fields[0]), values);
    } catch (const DataError& e) {
      throw DataError(where + e.what());
    }
  }
  return store;
}

VectorStore load_precomputed_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open embeddings: " + path.string());
  try {
    return read_precomputed_embeddings(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

StopwordSet read_stopwords(std::istream& in) {
  StopwordSet out;
  std::string line;
  while (std::getline(in, line)) {
    const auto word = trim(line);
    if (word.empty() || word.front() == '#') continue;
    out.insert(to_lower(word));
  }
  return out;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open stopword list: " + path.string());
  return read_stopwords(in);
}

const StopwordSet& default_stopwords() {
  static const StopwordSet kWords = {
      "a",       "about",   "above",  "after",   "again",  "against", "all",
      "am",      "an",      "and",    "any",     "are",    "as",      "at",
      "be",      "because", "been",   "before",  "being",  "below",   "between",
      "both",    "but",     "by",     "can",     "could",  "did",     "do",
      "does",    "doing",   "down",   "during",  "each",   "few",     "for",
      "from",    "further", "had",    "has",     "have",   "having",  "he",
      "her",     "here",    "hers",   "herself", "him",    "himself", "his",
      "how",     "i",       "if",     "in",      "into",   "is",      "it",
      "its",     "itself",  "just",   "me",      "more",   "most",    "my",
      "myself",  "nor",     "of",     "off",     "on",     "once",    "only",
      "or",      "other",   "our",    "ours",    "out",    "over",    "own",
      "same",    "she",     "should", "so",      "some",   "such",    "than",
      "that",    "the",     "their",  "theirs",  "them",   "then",    "there",
      "these",   "they",    "this",   "those",   "through", "to",     "too",
      "under",   "until",   "up",     "very",    "was",    "we",      "were",
      "what",    "when",    "where",  "which",   "while",  "who",     "whom",
      "why",     "will",    "with",   "would",   "you",    "your",    "yours",
      "yourself", "'s",     "'re",    "'ve",     "'d",     "'ll",     "'m"};
  return kWords;
}

std::vector<std::string> content_terms(const Opinion& opinion,
                                       const StopwordSet& stopwords) {
  std::vector<std::string> out;
  for (const auto& sentence : opinion.sentences) {
    for (const auto& token : sentence.tokens) {
      if (has_alnum(token.normalized) && !stopwords.contains(token.normalized)) {
        out.push_back(token.normalized);
      }
    }
  }
  return out;
}

TfidfModel TfidfModel::fit(const Dataset& dataset, const StopwordSet& stopwords) {
  std::vector<std::map<std::string, std::size_t>> counts;
  std::map<std::string, std::size_t> df;
  for (const auto& opinion : dataset.opinions) {
    auto& doc = counts.emplace_back();
    for (auto& term : content_terms(opinion, stopwords)) ++doc[term];
    for (const auto& [term, count] : doc) ++df[term];
  }
  TfidfModel model;
  std::unordered_map<std::string, std::size_t> index;
  const double n = static_cast<double>(dataset.opinions.size());
  for (const auto& [term, freq] : df) {
    index.emplace(term, model.terms_.size());
    model.terms_.push_back(term);
    model.df_.push_back(freq);
    model.idf_.push_back(std::log(n / static_cast<double>(freq)));
  }
  for (const auto& doc : counts) {
    auto& entries = model.documents_.emplace_back();
    for (const auto& [term, count] : doc) {
      const std::size_t id = index.at(term);
      const double weight = static_cast<double>(count) * model.idf_[id];
      if (weight != 0.0) entries.push_back({id, weight});
    }
  }
  return model;
}

double TfidfModel::cosine_distance(std::size_t a, std::size_t b) const {
  const auto& u = documents_.at(a);
  const auto& v = documents_.at(b);
  if (u.empty() && v.empty()) return 0.0;
  if (u.empty() || v.empty()) return 1.0;
  double dot = 0.0;
  double nu = 0.0;
  double nv = 0.0;
  for (const auto& e : u) nu += e.weight * e.weight;
  for (const auto& e : v) nv += e.weight * e.weight;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < u.size() && j < v.size()) {
    if (u[i].term == v[j].term) {
      dot += u[i++].weight * v[j++].weight;
    } else if (u[i].term < v[j].term) {
      ++i;
    } else {
      ++j;
    }
  }
  return std::clamp(1.0 - dot / (std::sqrt(nu) * std::sqrt(nv)), 0.0, 1.0);
}

std::optional<double> text_wmd(const Opinion& a, const Opinion& b,
                               const VectorStore& store,
                               const StopwordSet& stopwords) {
  auto bag = [&](const Opinion& opinion) {
    std::map<std::string, std::int64_t> counts;
    for (auto& term : content_terms(opinion, stopwords)) {
      const auto v = store.find(term);
      if (v && !is_zero(*v)) ++counts[term];
    }
    return counts;
  };
  const auto bag_a = bag(a);
  const auto bag_b = bag(b);
  if (bag_a.empty() || bag_b.empty()) return std::nullopt;

  std::int64_t total_a = 0;
  std::int64_t total_b = 0;
  for (const auto& [term, count] : bag_a) total_a += count;
  for (const auto& [term, count] : bag_b) total_b += count;

  CostMatrix cost(static_cast<Eigen::Index>(bag_a.size()),
                  static_cast<Eigen::Index>(bag_b.size()));
  std::vector<std::int64_t> supply;
  std::vector<std::int64_t> demand;
  Eigen::Index i = 0;
  for (const auto& [ta, ca] : bag_a) {
    supply.push_back(ca * total_b);
    Eigen::Index j = 0;
    for (const auto& [tb, cb] : bag_b) {
      cost(i, j) = ta == tb ? 0.0 : semantic_distance(*store.find(ta), *store.find(tb));
      ++j;
    }
    ++i;
  }
  for (const auto& [tb, cb] : bag_b) demand.push_back(cb * total_a);
  return solve_transport(cost, supply, demand).objective;
}

}  // namespace opdist

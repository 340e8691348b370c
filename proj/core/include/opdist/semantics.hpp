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

#ifndef OPDIST_SEMANTICS_HPP_
#define OPDIST_SEMANTICS_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "opdist/corpus.hpp"

namespace opdist {

inline constexpr double kDocumentEmbeddingThreshold = 0.3;
inline constexpr double kWordVectorThreshold = 0.6;

// Dense vectors of a fixed dimension, keyed by token.
class VectorStore {
 public:
  VectorStore() = default;
  explicit VectorStore(std::size_t dimension) : dimension_(dimension) {}

  // Throws DataError on dimension mismatch or non-finite entries. A repeated
  // key replaces the earlier vector.
  void add(std::string_view key, std::span<const float> values);

  std::optional<std::span<const float>> find(std::string_view key) const;

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return keys_.size(); }
  // Keys in insertion order.
  const std::vector<std::string>& keys() const { return keys_; }

 private:
  std::size_t dimension_ = 0;
  std::vector<std::string> keys_;
  std::vector<float> data_;
  std::unordered_map<std::string, std::size_t> index_;
};

enum class WordVectorFormat { kText, kBinary };

// word2vec formats. Text: optional "count dim" header, then "word v1 ... vD"
// per line. Binary: "count dim\n" header, then per word the UTF-8 word, a
// space and D little-endian IEEE-754 float32 values (an optional newline may
// follow each record).
VectorStore read_word_vectors(std::istream& in, WordVectorFormat format);
VectorStore load_word_vectors(const std::filesystem::path& path,
                              WordVectorFormat format);
void write_word_vectors(const VectorStore& store, std::ostream& out,
                        WordVectorFormat format);

// Mean of the in-vocabulary token vectors; nullopt if all are OOV.
std::optional<std::vector<double>> phrase_vector(
    const VectorStore& store, std::span<const std::string> tokens);

// clamp(1 - cos(u, v), 0, 1). Throws std::invalid_argument for zero vectors
// or mismatched dimensions.
double semantic_distance(std::span<const double> u, std::span<const double> v);
double semantic_distance(std::span<const float> u, std::span<const float> v);

// Embeddings keyed by opinion id or concept id ("id<TAB>v1<TAB>...<TAB>vD").
VectorStore read_precomputed_embeddings(std::istream& in);
VectorStore load_precomputed_embeddings(const std::filesystem::path& path);

using StopwordSet = std::unordered_set<std::string>;

StopwordSet read_stopwords(std::istream& in);
StopwordSet load_stopwords(const std::filesystem::path& path);
// A small English stopword list.
const StopwordSet& default_stopwords();

// Content terms of an opinion: normalized tokens with at least one letter
// or digit, minus stopwords.
std::vector<std::string> content_terms(const Opinion& opinion,
                                       const StopwordSet& stopwords);

// TF-IDF with raw term counts and idf = ln(N / df).
class TfidfModel {
 public:
  struct Entry {
    std::size_t term;
    double weight;
  };

  static TfidfModel fit(const Dataset& dataset, const StopwordSet& stopwords);

  std::size_t num_documents() const { return documents_.size(); }
  std::size_t vocabulary_size() const { return terms_.size(); }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<std::size_t>& document_frequency() const { return df_; }
  double idf(std::size_t term) const { return idf_[term]; }
  // Sparse vector sorted by term index, zero weights dropped.
  const std::vector<Entry>& vector(std::size_t document) const {
    return documents_[document];
  }

  // 1 - cosine between two documents. Two all-zero vectors are at
  // distance 0, a zero and a non-zero vector at distance 1.
  double cosine_distance(std::size_t a, std::size_t b) const;

 private:
  std::vector<std::string> terms_;
  std::vector<std::size_t> df_;
  std::vector<double> idf_;
  std::vector<std::vector<Entry>> documents_;
};

// Word Mover's Distance between two opinions: exact earth mover distance
// between normalized term-frequency masses over in-vocabulary content terms,
// with semantic_distance as ground cost. nullopt when a side has no
// in-vocabulary content term.
std::optional<double> text_wmd(const Opinion& a, const Opinion& b,
                               const VectorStore& store,
                               const StopwordSet& stopwords);

}  // namespace opdist

#endif  // OPDIST_SEMANTICS_HPP_

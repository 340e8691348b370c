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

#ifndef OPDIST_DISTANCE_HPP_
#define OPDIST_DISTANCE_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "opdist/corpus.hpp"
#include "opdist/deppat.hpp"
#include "opdist/lexicon.hpp"
#include "opdist/matching.hpp"
#include "opdist/polarity.hpp"
#include "opdist/semantics.hpp"
#include "opdist/spotter.hpp"

namespace opdist {

class TagMeClient;

enum class DifferenceKind { kAbs, kJsd, kEmd };

std::optional<DifferenceKind> parse_difference_kind(std::string_view name);
std::string_view to_string(DifferenceKind kind);

double f_abs(double x, double y);
// Base-2 Jensen-Shannon divergence, in [0, 1].
double f_jsd(const PolarityDistribution& p, const PolarityDistribution& q);
// 1-D earth mover distance over bucket positions (-1, 0, +1), with ground
// distance |pos_i - pos_j| / 2.
double f_emd(const PolarityDistribution& p, const PolarityDistribution& q);

// Applies `kind` to two subject polarities. abs needs scalar polarities,
// jsd and emd need distributions; anything else throws
// std::invalid_argument.
double difference(const SubjectPolarity& a, const SubjectPolarity& b,
                  DifferenceKind kind);

struct OpinionDistanceDetail {
  std::optional<double> value;
  CostMatrix cost;
  TransportPlan plan;
  // Indices refer to (rep1 subjects, rep2 subjects).
  SubjectMapping mapping;
};

// sum over mapped pairs of f(pol_i, pol_j) / (2 |M|). Undefined when either
// side has no subject or no pair survives the threshold. The transport
// problem is always solved in a canonical orientation of the two opinions,
// so the result is exactly symmetric.
OpinionDistanceDetail opinion_distance_detail(
    const OpinionRepresentation& rep1, const SubjectEmbeddings& emb1,
    const OpinionRepresentation& rep2, const SubjectEmbeddings& emb2,
    DifferenceKind kind, double tau);

std::optional<double> opinion_distance(const OpinionRepresentation& rep1,
                                       const OpinionRepresentation& rep2,
                                       DifferenceKind kind,
                                       const SubjectEmbedder& embedder,
                                       double tau = kDefaultSemanticThreshold);

enum class Measure { kOd, kOdParse, kTfidf, kTextWmd, kPrecomputedEmbedding };

std::optional<Measure> parse_measure(std::string_view name);
std::string_view to_string(Measure measure);

// Symmetric N x N matrix with a zero diagonal. Undefined entries hold the
// imputed value 1.0 and are flagged in `undefined`.
struct DistanceMatrix {
  std::vector<std::string> ids;
  Eigen::MatrixXd values;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> undefined;

  std::size_t size() const { return ids.size(); }
  // Unordered pairs i < j that are undefined.
  std::size_t undefined_pairs() const;
};

inline constexpr double kImputedDistance = 1.0;

DistanceMatrix make_distance_matrix(std::vector<std::string> ids);

// TSV with a header row "id<TAB>id_1<TAB>...". The mask uses the same
// layout with 0/1 entries.
void write_distance_matrix(const DistanceMatrix& matrix, std::ostream& values,
                           std::ostream& mask);
DistanceMatrix read_distance_matrix(std::istream& values, std::istream* mask);
// Writes `path` and the sidecar mask_path(path).
void save_distance_matrix(const DistanceMatrix& matrix,
                          const std::filesystem::path& path);
DistanceMatrix load_distance_matrix(const std::filesystem::path& path);
std::filesystem::path mask_path(const std::filesystem::path& path);

// Non-owning views of the loaded resources; a measure only touches what
// it needs and throws ResourceError when something required is missing.
struct Resources {
  const SentimentLexicon* lexicon = nullptr;
  // Null means the built-in shifter list.
  const ShifterSet* shifters = nullptr;
  // Subject spotting for od: a gazetteer, or a TagMe client when no
  // gazetteer is given.
  const Gazetteer* gazetteer = nullptr;
  TagMeClient* tagme = nullptr;
  const ParseIndex* parses = nullptr;
  // Null means the built-in rules.
  const std::vector<DepPattern>* rules = nullptr;
  const VectorStore* word_vectors = nullptr;
  const VectorStore* concept_embeddings = nullptr;
  // Opinion-level embeddings keyed by opinion id.
  const VectorStore* opinion_embeddings = nullptr;
  // Null means the built-in stopword list.
  const StopwordSet* stopwords = nullptr;
};

struct DistanceConfig {
  DifferenceKind fn = DifferenceKind::kAbs;
  RepresentConfig represent;
  double tau = kDefaultSemanticThreshold;
  double lp_threshold = kDefaultLinkProbabilityThreshold;
  // 0 picks the hardware concurrency.
  unsigned threads = 0;
};

// Throws UsageError for inconsistent settings (fn vs polarity mode,
// thresholds outside [0, 1]).
void validate(const DistanceConfig& config);

std::vector<OpinionRepresentation> represent_dataset(
    const Dataset& dataset, Variant variant, const Resources& resources,
    const DistanceConfig& config);

DistanceMatrix od_distance_matrix(
    const std::vector<OpinionRepresentation>& representations,
    const SubjectEmbedder& embedder, const DistanceConfig& config);

DistanceMatrix distance_matrix(const Dataset& dataset, Measure measure,
                               const Resources& resources,
                               const DistanceConfig& config);

}  // namespace opdist

#endif  // OPDIST_DISTANCE_HPP_

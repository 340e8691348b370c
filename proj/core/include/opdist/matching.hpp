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

#ifndef OPDIST_MATCHING_HPP_
#define OPDIST_MATCHING_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "opdist/polarity.hpp"
#include "opdist/semantics.hpp"

namespace opdist {

inline constexpr double kDefaultSemanticThreshold = 0.3;
inline constexpr double kFlowEpsilon = 1e-9;

using CostMatrix = Eigen::MatrixXd;
using FlowMatrix = Eigen::MatrixXd;

struct TransportPlan {
  FlowMatrix flow;
  double objective = 0.0;
};

// Exact optimal transport between uniform masses (1/n1 per row, 1/n2 per
// column). Masses are scaled to integers (n2/g units per row, n1/g per
// column with g = gcd(n1, n2)) and the problem is solved as a min-cost flow
// by successive shortest paths, so row and column sums hold exactly in unit
// space. For n1 == n2 every row carries one unit and the plan is a scaled
// permutation.
TransportPlan solve_transport(const CostMatrix& cost);

// Same with arbitrary integral masses; the totals must agree. Flows are
// reported as fractions of the total mass.
TransportPlan solve_transport(const CostMatrix& cost,
                              std::span<const std::int64_t> supply,
                              std::span<const std::int64_t> demand);

struct MappedPair {
  std::size_t i = 0;
  std::size_t j = 0;
  double flow = 0.0;
  double cost = 0.0;
};

using SubjectMapping = std::vector<MappedPair>;

// Pairs with flow > eps and cost <= tau, in row-major order.
SubjectMapping flow_to_mapping(const FlowMatrix& flow, const CostMatrix& cost,
                               double tau, double eps = kFlowEpsilon);

// Embeds subjects: a precomputed embedding keyed by the subject key wins,
// otherwise the mean word vector of the subject phrase.
class SubjectEmbedder {
 public:
  SubjectEmbedder(const VectorStore* word_vectors,
                  const VectorStore* concept_embeddings)
      : words_(word_vectors), concepts_(concept_embeddings) {}

  std::optional<std::vector<double>> embed(
      const RepresentedSubject& subject) const;

 private:
  const VectorStore* words_;
  const VectorStore* concepts_;
};

using SubjectEmbeddings = std::vector<std::optional<std::vector<double>>>;

SubjectEmbeddings embed_subjects(const OpinionRepresentation& rep,
                                 const SubjectEmbedder& embedder);

// Semantic distances between subjects: 0 for identical keys, 1 when either
// side has no embedding, semantic_distance otherwise.
CostMatrix cost_matrix(const OpinionRepresentation& a,
                       const SubjectEmbeddings& a_embeddings,
                       const OpinionRepresentation& b,
                       const SubjectEmbeddings& b_embeddings);
CostMatrix cost_matrix(const OpinionRepresentation& a,
                       const OpinionRepresentation& b,
                       const SubjectEmbedder& embedder);

}  // namespace opdist

#endif  // OPDIST_MATCHING_HPP_

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

#ifndef OPDIST_REPORT_HPP_
#define OPDIST_REPORT_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "opdist/clustering.hpp"
#include "opdist/distance.hpp"
#include "opdist/supervised.hpp"

namespace opdist {

struct AlgorithmScores {
  ClusteringResult clustering;
  // Absent for unlabeled data.
  std::optional<double> ari;
  std::optional<double> nmi;
  double silhouette = 0.0;
  // Set on the algorithm(s) reaching the highest ARI of the measure.
  bool best_ari = false;
};

struct MeasureReport {
  std::string measure;
  std::size_t opinions = 0;
  std::size_t undefined_pairs = 0;
  std::optional<double> d_metric;
  std::vector<AlgorithmScores> algorithms;
  std::optional<SupervisedResult> supervised;
  std::vector<std::string> notes;
};

struct EvaluationReport {
  std::string dataset;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  bool labeled = false;
  std::vector<MeasureReport> measures;
};

struct EvaluateOptions {
  std::vector<ClusterAlgorithm> algorithms = {ClusterAlgorithm::kKmeansRows,
                                              ClusterAlgorithm::kSpectral};
  KMeansOptions kmeans;
  bool supervised = true;
  SupervisedOptions supervised_options;
  // Extra per-opinion feature columns for the supervised run.
  const Eigen::MatrixXd* extra_features = nullptr;
};

// Clusters with every algorithm and scores the result. `truth` is empty for
// unlabeled data, in which case only the silhouette is reported.
MeasureReport evaluate_measure(std::string measure, const DistanceMatrix& matrix,
                               std::span<const int> truth, std::size_t k,
                               std::uint64_t seed,
                               const EvaluateOptions& options = {});

std::string report_to_json(const EvaluationReport& report);
// Aligned table: one row per measure and algorithm.
std::string report_to_text(const EvaluationReport& report);

struct Neighbor {
  std::string id;
  double distance = 0.0;
  bool undefined = false;
};

struct NeighborBlock {
  std::string opinion_id;
  // Per measure, in the order given.
  std::vector<std::string> measures;
  std::vector<std::vector<Neighbor>> nearest;
  std::vector<std::vector<Neighbor>> farthest;
};

// The m nearest and m farthest neighbors of every opinion under each
// measure; ties are broken by opinion id. All matrices must share ids.
std::vector<NeighborBlock> neighbor_report(
    const std::vector<std::string>& measures,
    const std::vector<DistanceMatrix>& matrices, std::size_t m);

std::string neighbors_to_text(const std::vector<NeighborBlock>& blocks);
std::string neighbors_to_json(const std::vector<NeighborBlock>& blocks);

}  // namespace opdist

#endif  // OPDIST_REPORT_HPP_

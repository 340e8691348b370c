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

#ifndef OPDIST_CLUSTERING_HPP_
#define OPDIST_CLUSTERING_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "opdist/distance.hpp"

namespace opdist {

enum class ClusterAlgorithm { kKmeansRows, kKmedoids, kSpectral };

std::optional<ClusterAlgorithm> parse_cluster_algorithm(std::string_view name);
std::string_view to_string(ClusterAlgorithm algorithm);

struct ClusteringResult {
  ClusterAlgorithm algorithm = ClusterAlgorithm::kKmeansRows;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  // Values in [0, k), renumbered by first appearance.
  std::vector<int> labels;
};

struct KMeansOptions {
  std::size_t max_iterations = 300;
  double tolerance = 1e-6;
  // Independent k-means++ restarts; the lowest inertia wins.
  std::size_t n_init = 10;
};

struct KMeansFit {
  std::vector<int> labels;
  Eigen::MatrixXd centroids;
  double inertia = 0.0;
};

// Lloyd's algorithm with k-means++ seeding over the rows of `points`.
// Throws UsageError unless 1 <= k <= rows.
KMeansFit kmeans(const Eigen::MatrixXd& points, std::size_t k, std::uint64_t seed,
                 const KMeansOptions& options = {});

// Rows of the distance matrix as Euclidean feature vectors.
ClusteringResult kmeans_rows(const DistanceMatrix& matrix, std::size_t k,
                             std::uint64_t seed, const KMeansOptions& options = {});

// Alternating k-medoids on the distances themselves.
ClusteringResult kmedoids(const DistanceMatrix& matrix, std::size_t k,
                          std::uint64_t seed, const KMeansOptions& options = {});

// Affinity 1 - D with undefined pairs at 0 and a unit diagonal; the k
// smallest eigenvectors of the symmetric normalized Laplacian, row
// normalized, are clustered with k-means.
ClusteringResult spectral(const DistanceMatrix& matrix, std::size_t k,
                          std::uint64_t seed, const KMeansOptions& options = {});

ClusteringResult cluster(const DistanceMatrix& matrix, ClusterAlgorithm algorithm,
                         std::size_t k, std::uint64_t seed,
                         const KMeansOptions& options = {});

// Renumbers labels in order of first appearance.
std::vector<int> canonical_labels(std::span<const int> labels);

}  // namespace opdist

#endif  // OPDIST_CLUSTERING_HPP_

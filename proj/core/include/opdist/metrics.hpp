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

#ifndef OPDIST_METRICS_HPP_
#define OPDIST_METRICS_HPP_

#include <optional>
#include <span>

#include <Eigen/Core>

namespace opdist {

// Adjusted Rand index from the contingency table. Returns 1 when the
// chance-corrected denominator vanishes (e.g. both labelings trivial).
double ari(std::span<const int> predicted, std::span<const int> truth);

// Mutual information over the arithmetic mean of the two entropies. When
// both entropies are 0 the score is defined as 0.
double nmi(std::span<const int> predicted, std::span<const int> truth);

// Mean silhouette over all points; members of singleton clusters score 0,
// so does everything when only one cluster exists.
double silhouette(const Eigen::MatrixXd& distances, std::span<const int> labels);

// 100 * (mean inter-cluster distance - mean intra-cluster distance) / mean
// intra-cluster distance over ordered pairs. Undefined without inter pairs
// or with a zero intra mean.
std::optional<double> d_metric(const Eigen::MatrixXd& distances,
                               std::span<const int> labels);

// Per-class F1 averaged with weights equal to the class support in truth.
double weighted_f1(std::span<const int> predicted, std::span<const int> truth);

}  // namespace opdist

#endif  // OPDIST_METRICS_HPP_

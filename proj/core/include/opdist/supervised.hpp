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

#ifndef OPDIST_SUPERVISED_HPP_
#define OPDIST_SUPERVISED_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "opdist/semantics.hpp"

namespace opdist {

enum class PairFeatures { kAbsDiff, kConcat };

std::optional<PairFeatures> parse_pair_features(std::string_view name);
std::string_view to_string(PairFeatures features);

struct LogisticOptions {
  double l2 = 1e-2;
  double tolerance = 1e-6;
  std::size_t max_iterations = 200000;
};

struct LogisticModel {
  Eigen::VectorXd weights;
  double bias = 0.0;
  std::size_t iterations = 0;
  bool converged = false;

  Eigen::VectorXd probabilities(const Eigen::MatrixXd& x) const;
};

// Mean log-loss plus (l2 / 2) * |w|^2; the bias is not penalized.
double logistic_loss(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                     const Eigen::VectorXd& weights, double bias, double l2);
// Gradient with respect to (weights, bias); the bias slot is last.
Eigen::VectorXd logistic_gradient(const Eigen::MatrixXd& x,
                                  const Eigen::VectorXd& y,
                                  const Eigen::VectorXd& weights, double bias,
                                  double l2);

// Gradient descent with step 1/L, L the smoothness constant of the loss,
// until the gradient norm drops below the tolerance. When `losses` is given
// it receives the loss before every step.
LogisticModel fit_logistic(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                           const LogisticOptions& options = {},
                           std::vector<double>* losses = nullptr);

struct SupervisedOptions {
  PairFeatures features = PairFeatures::kAbsDiff;
  double train_fraction = 0.7;
  std::size_t repeats = 3;
  LogisticOptions logistic;
};

struct SupervisedResult {
  double mean_f1 = 0.0;
  std::vector<double> per_seed;
};

// Per-opinion feature rows: the distance rows, optionally followed by the
// columns of `extra` (e.g. dense TF-IDF vectors).
Eigen::MatrixXd opinion_features(const Eigen::MatrixXd& distances,
                                 const Eigen::MatrixXd* extra = nullptr);

// Dense TF-IDF rows, one per document.
Eigen::MatrixXd tfidf_rows(const TfidfModel& model);

// Opinions are split train/test per seed (seed, seed + 1, ...); pairs are
// formed within each side and labeled same/different. Throws UsageError
// with fewer than two distinct labels or a side with fewer than two
// opinions.
SupervisedResult supervised_pairwise(const Eigen::MatrixXd& features,
                                     std::span<const int> labels,
                                     std::uint64_t seed,
                                     const SupervisedOptions& options = {});

}  // namespace opdist

#endif  // OPDIST_SUPERVISED_HPP_

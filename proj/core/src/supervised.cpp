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

#include "opdist/supervised.hpp"

#include <cmath>
#include <numeric>
#include <set>

#include <Eigen/Eigenvalues>

#include "opdist/error.hpp"
#include "opdist/metrics.hpp"
#include "opdist/random.hpp"

namespace opdist {
namespace {

double sigmoid(double z) {
  return z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
}

// log(1 + exp(z)) without overflow.
double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

struct PairSet {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
};

PairSet make_pairs(const Eigen::MatrixXd& features, std::span<const int> labels,
                   std::span<const std::size_t> members, PairFeatures kind) {
  const std::size_t m = members.size();
  const Eigen::Index dim =
      kind == PairFeatures::kAbsDiff ? features.cols() : 2 * features.cols();
  PairSet set;
  set.x.resize(static_cast<Eigen::Index>(m * (m - 1) / 2), dim);
  set.y.resize(set.x.rows());
  Eigen::Index row = 0;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const auto i = std::min(members[a], members[b]);
      const auto j = std::max(members[a], members[b]);
      const auto ri = features.row(static_cast<Eigen::Index>(i));
      const auto rj = features.row(static_cast<Eigen::Index>(j));
      if (kind == PairFeatures::kAbsDiff) {
        set.x.row(row) = (ri - rj).cwiseAbs();
      } else {
        set.x.row(row) << ri, rj;
      }
      set.y(row) = labels[i] == labels[j] ? 1.0 : 0.0;
      ++row;
    }
  }
  return set;
}

}  // namespace

std::optional<PairFeatures> parse_pair_features(std::string_view name) {
  if (name == "absdiff") return PairFeatures::kAbsDiff;
  if (name == "concat") return PairFeatures::kConcat;
  return std::nullopt;
}

std::string_view to_string(PairFeatures features) {
  return features == PairFeatures::kAbsDiff ? "absdiff" : "concat";
}

Eigen::VectorXd LogisticModel::probabilities(const Eigen::MatrixXd& x) const {
  Eigen::VectorXd z = x * weights;
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = sigmoid(z(i) + bias);
  return z;
}

double logistic_loss(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                     const Eigen::VectorXd& weights, double bias, double l2) {
  const Eigen::VectorXd z = (x * weights).array() + bias;
  double loss = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    loss += softplus(z(i)) - y(i) * z(i);
  }
  return loss / static_cast<double>(x.rows()) + 0.5 * l2 * weights.squaredNorm();
}

Eigen::VectorXd logistic_gradient(const Eigen::MatrixXd& x,
                                  const Eigen::VectorXd& y,
                                  const Eigen::VectorXd& weights, double bias,
                                  double l2) {
  Eigen::VectorXd residual = (x * weights).array() + bias;
  for (Eigen::Index i = 0; i < residual.size(); ++i) {
    residual(i) = sigmoid(residual(i)) - y(i);
  }
  const double n = static_cast<double>(x.rows());
  Eigen::VectorXd grad(x.cols() + 1);
  grad.head(x.cols()) = x.transpose() * residual / n + l2 * weights;
  grad(x.cols()) = residual.sum() / n;
  return grad;
}

LogisticModel fit_logistic(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                           const LogisticOptions& options,
                           std::vector<double>* losses) {
  if (x.rows() == 0 || x.rows() != y.size()) {
    throw std::invalid_argument("fit_logistic: empty or mismatched data");
  }
  const double n = static_cast<double>(x.rows());
  Eigen::MatrixXd augmented(x.rows(), x.cols() + 1);
  augmented << x, Eigen::VectorXd::Ones(x.rows());
  const Eigen::MatrixXd gram = augmented.transpose() * augmented;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
  const double lipschitz = solver.eigenvalues().maxCoeff() / (4.0 * n) + options.l2;
  const double step = 1.0 / lipschitz;

  LogisticModel model;
  model.weights = Eigen::VectorXd::Zero(x.cols());
  for (; model.iterations < options.max_iterations; ++model.iterations) {
    if (losses != nullptr) {
      losses->push_back(logistic_loss(x, y, model.weights, model.bias, options.l2));
    }
    const Eigen::VectorXd grad =
        logistic_gradient(x, y, model.weights, model.bias, options.l2);
    if (grad.norm() < options.tolerance) {
      model.converged = true;
      break;
    }
    model.weights -= step * grad.head(x.cols());
    model.bias -= step * grad(x.cols());
  }
  return model;
}

Eigen::MatrixXd opinion_features(const Eigen::MatrixXd& distances,
                                 const Eigen::MatrixXd* extra) {
  if (extra == nullptr) return distances;
  if (extra->rows() != distances.rows()) {
    throw std::invalid_argument("opinion_features: row counts differ");
  }
  Eigen::MatrixXd out(distances.rows(), distances.cols() + extra->cols());
  out << distances, *extra;
  return out;
}

Eigen::MatrixXd tfidf_rows(const TfidfModel& model) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(
      static_cast<Eigen::Index>(model.num_documents()),
      static_cast<Eigen::Index>(model.vocabulary_size()));
  for (std::size_t d = 0; d < model.num_documents(); ++d) {
    for (const auto& e : model.vector(d)) {
      out(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(e.term)) = e.weight;
    }
  }
  return out;
}

SupervisedResult supervised_pairwise(const Eigen::MatrixXd& features,
                                     std::span<const int> labels,
                                     std::uint64_t seed,
                                     const SupervisedOptions& options) {
  const std::size_t n = labels.size();
  if (static_cast<std::size_t>(features.rows()) != n) {
    throw std::invalid_argument("supervised_pairwise: features and labels differ");
  }
  if (std::set<int>(labels.begin(), labels.end()).size() < 2) {
    throw UsageError("supervised evaluation needs at least two labels");
  }
  const auto train_size = static_cast<std::size_t>(
      std::llround(options.train_fraction * static_cast<double>(n)));
  if (train_size < 2 || n - train_size < 2) {
    throw UsageError("supervised split leaves a side with fewer than 2 opinions");
  }
  SupervisedResult result;
  for (std::size_t r = 0; r < std::max<std::size_t>(1, options.repeats); ++r) {
    Rng rng(seed + r);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(order));
    const std::span<const std::size_t> all(order);
    const auto train = make_pairs(features, labels, all.first(train_size),
                                  options.features);
    const auto test = make_pairs(features, labels, all.subspan(train_size),
                                 options.features);
    const auto model = fit_logistic(train.x, train.y, options.logistic);
    const Eigen::VectorXd p = model.probabilities(test.x);
    std::vector<int> predicted(static_cast<std::size_t>(p.size()));
    std::vector<int> truth(predicted.size());
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      predicted[static_cast<std::size_t>(i)] = p(i) >= 0.5 ? 1 : 0;
      truth[static_cast<std::size_t>(i)] = test.y(i) > 0.5 ? 1 : 0;
    }
    result.per_seed.push_back(weighted_f1(predicted, truth));
  }
  result.mean_f1 = std::accumulate(result.per_seed.begin(), result.per_seed.end(), 0.0) /
                   static_cast<double>(result.per_seed.size());
  return result;
}

}  // namespace opdist

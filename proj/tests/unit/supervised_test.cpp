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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "opdist/error.hpp"
#include "opdist/random.hpp"
#include "opdist/semantics.hpp"
#include "opdist/supervised.hpp"
#include "support/synthetic.hpp"

namespace opdist {
namespace {

struct Problem {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  Eigen::VectorXd w;
  double b = 0.0;
};

Problem random_problem(Rng& rng, Eigen::Index n, Eigen::Index d) {
  Problem p;
  p.x.resize(n, d);
  p.y.resize(n);
  p.w.resize(d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) p.x(i, j) = rng.normal();
    p.y(i) = rng.uniform_index(2) == 0 ? 0.0 : 1.0;
  }
  for (Eigen::Index j = 0; j < d; ++j) p.w(j) = rng.normal();
  p.b = rng.normal();
  return p;
}

TEST(LogisticTest, GradientMatchesFiniteDifferences) {
  Rng rng(51);
  const double h = 1e-5;
  for (int t = 0; t < 20; ++t) {
    const auto p = random_problem(rng, 30, 6);
    const double l2 = 0.05;
    const Eigen::VectorXd g = logistic_gradient(p.x, p.y, p.w, p.b, l2);
    ASSERT_EQ(g.size(), p.w.size() + 1);
    for (Eigen::Index k = 0; k <= p.w.size(); ++k) {
      auto loss_at = [&](double delta) {
        Eigen::VectorXd w = p.w;
        double b = p.b;
        if (k < p.w.size()) {
          w(k) += delta;
        } else {
          b += delta;
        }
        return logistic_loss(p.x, p.y, w, b, l2);
      };
      const double numeric = (loss_at(h) - loss_at(-h)) / (2 * h);
      EXPECT_NEAR(g(k), numeric, 1e-5 * std::max(1.0, std::abs(numeric)));
    }
  }
}

TEST(LogisticTest, LossNonIncreasingAndConverges) {
  Rng rng(52);
  for (int t = 0; t < 5; ++t) {
    const auto p = random_problem(rng, 80, 4);
    std::vector<double> losses;
    const auto model = fit_logistic(p.x, p.y, {}, &losses);
    ASSERT_FALSE(losses.empty());
    for (std::size_t i = 1; i < losses.size(); ++i) {
      EXPECT_LE(losses[i], losses[i - 1] + 1e-15) << "step " << i;
    }
    EXPECT_TRUE(model.converged);
    const auto g = logistic_gradient(p.x, p.y, model.weights, model.bias, 1e-2);
    EXPECT_LT(g.norm(), 1e-6);
  }
}

TEST(LogisticTest, SeparableDataClassified) {
  Eigen::MatrixXd x(6, 1);
  x << -3, -2, -1, 1, 2, 3;
  Eigen::VectorXd y(6);
  y << 0, 0, 0, 1, 1, 1;
  const auto model = fit_logistic(x, y);
  const Eigen::VectorXd p = model.probabilities(x);
  for (int i = 0; i < 6; ++i) EXPECT_EQ(p(i) >= 0.5, y(i) == 1.0);
}

TEST(SupervisedTest, BlockStructureGivesPerfectF1) {
  std::vector<int> labels;
  const auto m = testing::block_matrix({10, 10, 10}, 0.1, 0.9, 0.05, 7, &labels);
  const auto result = supervised_pairwise(opinion_features(m.values), labels, 42);
  ASSERT_EQ(result.per_seed.size(), 3u);
  EXPECT_DOUBLE_EQ(result.mean_f1, 1.0);
  SupervisedOptions concat;
  concat.features = PairFeatures::kConcat;
  EXPECT_GT(supervised_pairwise(opinion_features(m.values), labels, 42, concat).mean_f1,
            0.5);
}

TEST(SupervisedTest, NoiseStaysNearMajorityBaseline) {
  Rng rng(53);
  const int n = 60;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) d(i, j) = d(j, i) = rng.uniform01();
  }
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = i % 4;
  const auto result = supervised_pairwise(opinion_features(d), labels, 1);
  // Roughly three pairs in four differ; predicting "different" everywhere
  // scores pi * 2pi / (1 + pi) with pi = 0.75.
  const double baseline = 0.75 * 1.5 / 1.75;
  EXPECT_NEAR(result.mean_f1, baseline, 0.2);
  EXPECT_LT(result.mean_f1, 0.9);
}

TEST(SupervisedTest, Deterministic) {
  std::vector<int> labels;
  const auto m = testing::block_matrix({8, 8}, 0.4, 0.6, 0.3, 8, &labels);
  const auto a = supervised_pairwise(opinion_features(m.values), labels, 5);
  const auto b = supervised_pairwise(opinion_features(m.values), labels, 5);
  EXPECT_EQ(a.per_seed, b.per_seed);
}

TEST(SupervisedTest, Errors) {
  const Eigen::MatrixXd d = Eigen::MatrixXd::Zero(4, 4);
  const std::vector<int> one_label = {0, 0, 0, 0};
  EXPECT_THROW(supervised_pairwise(d, one_label, 1), UsageError);
  const Eigen::MatrixXd small = Eigen::MatrixXd::Zero(3, 3);
  const std::vector<int> three = {0, 1, 0};
  EXPECT_THROW(supervised_pairwise(small, three, 1), UsageError);
}

TEST(SupervisedTest, FeatureConcatenation) {
  std::vector<Opinion> opinions = {make_opinion("a", "cats purr"),
                                   make_opinion("b", "dogs bark"),
                                   make_opinion("c", "cats bark")};
  const auto model = TfidfModel::fit(make_dataset("t", opinions), default_stopwords());
  const Eigen::MatrixXd rows = tfidf_rows(model);
  EXPECT_EQ(rows.rows(), 3);
  EXPECT_EQ(rows.cols(), static_cast<Eigen::Index>(model.vocabulary_size()));
  const Eigen::MatrixXd d = Eigen::MatrixXd::Ones(3, 3);
  const auto combined = opinion_features(d, &rows);
  EXPECT_EQ(combined.cols(), 3 + rows.cols());
  EXPECT_EQ(combined.rightCols(rows.cols()), rows);
}

TEST(SupervisedTest, ParseFeatureNames) {
  EXPECT_EQ(parse_pair_features("absdiff"), PairFeatures::kAbsDiff);
  EXPECT_EQ(parse_pair_features("concat"), PairFeatures::kConcat);
  EXPECT_FALSE(parse_pair_features("sum"));
}

}  // namespace
}  // namespace opdist

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

#include "opdist/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "opdist/error.hpp"
#include "opdist/random.hpp"

namespace opdist {
namespace {

void check_k(std::size_t k, std::size_t n) {
  if (k == 0 || k > n) {
    throw UsageError("k must lie in [1, " + std::to_string(n) + "], got " +
                     std::to_string(k));
  }
}

// Index drawn with probability proportional to weights; uniform over the
// candidates when every weight is zero.
std::size_t weighted_pick(Rng& rng, const std::vector<double>& weights,
                          const std::vector<bool>& taken) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (total > 0.0) {
    const double target = rng.uniform01() * total;
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0.0) continue;
      acc += weights[i];
      last = i;
      if (target < acc) return i;
    }
    return last;
  }
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < taken.size(); ++i) {
    if (!taken[i]) free.push_back(i);
  }
  return free[rng.uniform_index(free.size())];
}

// k-means++ style seeding given a squared-distance oracle.
template <typename Dist2>
std::vector<std::size_t> plus_plus(std::size_t n, std::size_t k, Rng& rng,
                                   Dist2 dist2) {
  std::vector<std::size_t> chosen;
  std::vector<bool> taken(n, false);
  chosen.push_back(rng.uniform_index(n));
  taken[chosen.back()] = true;
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  while (chosen.size() < k) {
    for (std::size_t i = 0; i < n; ++i) {
      best[i] = taken[i] ? 0.0 : std::min(best[i], dist2(i, chosen.back()));
    }
    const std::size_t pick = weighted_pick(rng, best, taken);
    chosen.push_back(pick);
    taken[pick] = true;
  }
  return chosen;
}

KMeansFit lloyd(const Eigen::MatrixXd& points, std::size_t k, Rng& rng,
                const KMeansOptions& options) {
  const auto n = static_cast<std::size_t>(points.rows());
  const auto seeds = plus_plus(n, k, rng, [&](std::size_t i, std::size_t j) {
    return (points.row(static_cast<Eigen::Index>(i)) -
            points.row(static_cast<Eigen::Index>(j)))
        .squaredNorm();
  });
  KMeansFit fit;
  fit.centroids.resize(static_cast<Eigen::Index>(k), points.cols());
  for (std::size_t c = 0; c < k; ++c) {
    fit.centroids.row(static_cast<Eigen::Index>(c)) =
        points.row(static_cast<Eigen::Index>(seeds[c]));
  }
  fit.labels.assign(n, 0);
  std::vector<double> dist(n, 0.0);
  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      int label = 0;
      for (std::size_t c = 0; c < k; ++c) {
        const double d = (points.row(static_cast<Eigen::Index>(i)) -
                          fit.centroids.row(static_cast<Eigen::Index>(c)))
                             .squaredNorm();
        if (d < best) {
          best = d;
          label = static_cast<int>(c);
        }
      }
      fit.labels[i] = label;
      dist[i] = best;
      ++sizes[static_cast<std::size_t>(label)];
    }
    // An empty cluster takes the point farthest from its centroid.
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] > 0) continue;
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (sizes[static_cast<std::size_t>(fit.labels[i])] > 1 &&
            (far == n || dist[i] > dist[far])) {
          far = i;
        }
      }
      if (far == n) break;
      --sizes[static_cast<std::size_t>(fit.labels[far])];
      fit.labels[far] = static_cast<int>(c);
      dist[far] = 0.0;
      sizes[c] = 1;
    }
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(fit.centroids.rows(), points.cols());
    for (std::size_t i = 0; i < n; ++i) {
      next.row(fit.labels[i]) += points.row(static_cast<Eigen::Index>(i));
    }
    for (std::size_t c = 0; c < k; ++c) {
      const auto r = static_cast<Eigen::Index>(c);
      if (sizes[c] > 0) {
        next.row(r) /= static_cast<double>(sizes[c]);
      } else {
        next.row(r) = fit.centroids.row(r);
      }
    }
    const double shift = (next - fit.centroids).rowwise().norm().maxCoeff();
    fit.centroids = std::move(next);
    if (shift < options.tolerance) break;
  }
  fit.inertia = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    int label = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c) {
      const double d = (points.row(static_cast<Eigen::Index>(i)) -
                        fit.centroids.row(static_cast<Eigen::Index>(c)))
                           .squaredNorm();
      if (d < best) {
        best = d;
        label = static_cast<int>(c);
      }
    }
    fit.labels[i] = label;
    fit.inertia += best;
  }
  return fit;
}

ClusteringResult make_result(ClusterAlgorithm algorithm, std::size_t k,
                             std::uint64_t seed, std::span<const int> labels) {
  return {algorithm, k, seed, canonical_labels(labels)};
}

}  // namespace

std::optional<ClusterAlgorithm> parse_cluster_algorithm(std::string_view name) {
  if (name == "kmeans-rows" || name == "kmeans") return ClusterAlgorithm::kKmeansRows;
  if (name == "kmedoids") return ClusterAlgorithm::kKmedoids;
  if (name == "spectral") return ClusterAlgorithm::kSpectral;
  return std::nullopt;
}

std::string_view to_string(ClusterAlgorithm algorithm) {
  switch (algorithm) {
    case ClusterAlgorithm::kKmeansRows: return "kmeans-rows";
    case ClusterAlgorithm::kKmedoids: return "kmedoids";
    case ClusterAlgorithm::kSpectral: return "spectral";
  }
  return "kmeans-rows";
}

std::vector<int> canonical_labels(std::span<const int> labels) {
  std::map<int, int> remap;
  std::vector<int> out;
  out.reserve(labels.size());
  for (const int l : labels) {
    const auto [it, inserted] = remap.emplace(l, static_cast<int>(remap.size()));
    out.push_back(it->second);
  }
  return out;
}

KMeansFit kmeans(const Eigen::MatrixXd& points, std::size_t k, std::uint64_t seed,
                 const KMeansOptions& options) {
  check_k(k, static_cast<std::size_t>(points.rows()));
  Rng rng(seed);
  KMeansFit best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (std::size_t run = 0; run < std::max<std::size_t>(1, options.n_init); ++run) {
    KMeansFit fit = lloyd(points, k, rng, options);
    if (fit.inertia < best.inertia) best = std::move(fit);
  }
  return best;
}

ClusteringResult kmeans_rows(const DistanceMatrix& matrix, std::size_t k,
                             std::uint64_t seed, const KMeansOptions& options) {
  const auto fit = kmeans(matrix.values, k, seed, options);
  return make_result(ClusterAlgorithm::kKmeansRows, k, seed, fit.labels);
}

ClusteringResult kmedoids(const DistanceMatrix& matrix, std::size_t k,
                          std::uint64_t seed, const KMeansOptions& options) {
  const std::size_t n = matrix.size();
  check_k(k, n);
  const auto& d = matrix.values;
  auto at = [&](std::size_t i, std::size_t j) {
    return d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  };
  Rng rng(seed);
  std::vector<int> best_labels;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t run = 0; run < std::max<std::size_t>(1, options.n_init); ++run) {
    auto medoids = plus_plus(n, k, rng, [&](std::size_t i, std::size_t j) {
      return at(i, j) * at(i, j);
    });
    std::vector<int> labels(n, 0);
    double cost = 0.0;
    for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
      cost = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t best = 0;
        for (std::size_t c = 1; c < k; ++c) {
          if (at(i, medoids[c]) < at(i, medoids[best])) best = c;
        }
        // Medoids always belong to their own cluster.
        for (std::size_t c = 0; c < k; ++c) {
          if (medoids[c] == i) best = c;
        }
        labels[i] = static_cast<int>(best);
        cost += at(i, medoids[best]);
      }
      bool changed = false;
      for (std::size_t c = 0; c < k; ++c) {
        std::size_t arg = medoids[c];
        double arg_cost = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
          if (labels[i] != static_cast<int>(c)) continue;
          double total = 0.0;
          for (std::size_t j = 0; j < n; ++j) {
            if (labels[j] == static_cast<int>(c)) total += at(i, j);
          }
          if (total < arg_cost - 1e-12) {
            arg_cost = total;
            arg = i;
          }
        }
        if (arg != medoids[c]) {
          medoids[c] = arg;
          changed = true;
        }
      }
      if (!changed) break;
    }
    if (cost < best_cost) {
      best_cost = cost;
      best_labels = labels;
    }
  }
  return make_result(ClusterAlgorithm::kKmedoids, k, seed, best_labels);
}

ClusteringResult spectral(const DistanceMatrix& matrix, std::size_t k,
                          std::uint64_t seed, const KMeansOptions& options) {
  const std::size_t n = matrix.size();
  check_k(k, n);
  const auto size = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd affinity =
      (1.0 - matrix.values.array()).max(0.0).min(1.0).matrix();
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) {
      if (matrix.undefined(i, j)) affinity(i, j) = 0.0;
    }
    affinity(i, i) = 1.0;
  }
  const Eigen::VectorXd inv_sqrt_degree =
      affinity.rowwise().sum().array().rsqrt().matrix();
  const Eigen::MatrixXd laplacian =
      Eigen::MatrixXd::Identity(size, size) -
      inv_sqrt_degree.asDiagonal() * affinity * inv_sqrt_degree.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian);
  if (solver.info() != Eigen::Success) {
    throw Error("spectral clustering: eigen decomposition failed");
  }
  Eigen::MatrixXd embedding = solver.eigenvectors().leftCols(static_cast<Eigen::Index>(k));
  for (Eigen::Index i = 0; i < size; ++i) {
    const double norm = embedding.row(i).norm();
    if (norm > 0.0) embedding.row(i) /= norm;
  }
  const auto fit = kmeans(embedding, k, seed, options);
  return make_result(ClusterAlgorithm::kSpectral, k, seed, fit.labels);
}

ClusteringResult cluster(const DistanceMatrix& matrix, ClusterAlgorithm algorithm,
                         std::size_t k, std::uint64_t seed,
                         const KMeansOptions& options) {
  switch (algorithm) {
    case ClusterAlgorithm::kKmeansRows: return kmeans_rows(matrix, k, seed, options);
    case ClusterAlgorithm::kKmedoids: return kmedoids(matrix, k, seed, options);
    case ClusterAlgorithm::kSpectral: return spectral(matrix, k, seed, options);
  }
  throw UsageError("unknown clustering algorithm");
}

}  // namespace opdist

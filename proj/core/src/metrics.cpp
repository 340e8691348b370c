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

#include "opdist/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

namespace opdist {
namespace {

void check_sizes(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("labelings differ in length");
  }
}

double choose2(double n) { return n * (n - 1.0) / 2.0; }

struct Contingency {
  std::map<std::pair<int, int>, double> cells;
  std::map<int, double> rows;
  std::map<int, double> cols;
};

Contingency contingency(std::span<const int> a, std::span<const int> b) {
  Contingency t;
  for (std::size_t i = 0; i < a.size(); ++i) {
    t.cells[{a[i], b[i]}] += 1.0;
    t.rows[a[i]] += 1.0;
    t.cols[b[i]] += 1.0;
  }
  return t;
}

double entropy(const std::map<int, double>& counts, double n) {
  double h = 0.0;
  for (const auto& [label, c] : counts) {
    const double p = c / n;
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace

double ari(std::span<const int> predicted, std::span<const int> truth) {
  check_sizes(predicted, truth);
  const double n = static_cast<double>(predicted.size());
  if (predicted.size() < 2) return 1.0;
  const auto t = contingency(predicted, truth);
  double index = 0.0;
  for (const auto& [cell, c] : t.cells) index += choose2(c);
  double a = 0.0;
  for (const auto& [label, c] : t.rows) a += choose2(c);
  double b = 0.0;
  for (const auto& [label, c] : t.cols) b += choose2(c);
  const double expected = a * b / choose2(n);
  const double maximum = (a + b) / 2.0;
  if (maximum == expected) return 1.0;
  return (index - expected) / (maximum - expected);
}

double nmi(std::span<const int> predicted, std::span<const int> truth) {
  check_sizes(predicted, truth);
  if (predicted.empty()) return 0.0;
  const double n = static_cast<double>(predicted.size());
  const auto t = contingency(predicted, truth);
  const double hp = entropy(t.rows, n);
  const double ht = entropy(t.cols, n);
  const double denom = (hp + ht) / 2.0;
  if (denom <= 0.0) return 0.0;
  double mi = 0.0;
  for (const auto& [cell, c] : t.cells) {
    const double pa = t.rows.at(cell.first) / n;
    const double pb = t.cols.at(cell.second) / n;
    const double p = c / n;
    mi += p * std::log(p / (pa * pb));
  }
  return std::clamp(mi / denom, 0.0, 1.0);
}

double silhouette(const Eigen::MatrixXd& distances, std::span<const int> labels) {
  const auto n = labels.size();
  if (static_cast<std::size_t>(distances.rows()) != n ||
      static_cast<std::size_t>(distances.cols()) != n) {
    throw std::invalid_argument("silhouette: matrix and labels differ in size");
  }
  if (n == 0) return 0.0;
  std::map<int, std::size_t> sizes;
  for (const int l : labels) ++sizes[l];
  if (sizes.size() < 2) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sizes[labels[i]] == 1) continue;
    std::map<int, double> sums;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) {
        sums[labels[j]] += distances(static_cast<Eigen::Index>(i),
                                     static_cast<Eigen::Index>(j));
      }
    }
    const double a = sums[labels[i]] / static_cast<double>(sizes[labels[i]] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (const auto& [label, sum] : sums) {
      if (label != labels[i]) b = std::min(b, sum / static_cast<double>(sizes[label]));
    }
    const double scale = std::max(a, b);
    if (scale > 0.0) total += (b - a) / scale;
  }
  return total / static_cast<double>(n);
}

std::optional<double> d_metric(const Eigen::MatrixXd& distances,
                               std::span<const int> labels) {
  const auto n = labels.size();
  double intra = 0.0;
  double inter = 0.0;
  std::size_t intra_count = 0;
  std::size_t inter_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double d = distances(static_cast<Eigen::Index>(i),
                                 static_cast<Eigen::Index>(j));
      if (labels[i] == labels[j]) {
        intra += d;
        ++intra_count;
      } else {
        inter += d;
        ++inter_count;
      }
    }
  }
  if (inter_count == 0 || intra_count == 0) return std::nullopt;
  const double intra_mean = intra / static_cast<double>(intra_count);
  const double inter_mean = inter / static_cast<double>(inter_count);
  if (intra_mean == 0.0) return std::nullopt;
  return 100.0 * (inter_mean - intra_mean) / intra_mean;
}

double weighted_f1(std::span<const int> predicted, std::span<const int> truth) {
  check_sizes(predicted, truth);
  if (truth.empty()) return 0.0;
  std::set<int> classes(truth.begin(), truth.end());
  double total = 0.0;
  for (const int c : classes) {
    double tp = 0.0;
    double fp = 0.0;
    double fn = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      const bool p = predicted[i] == c;
      const bool t = truth[i] == c;
      tp += p && t;
      fp += p && !t;
      fn += !p && t;
    }
    const double f1 = tp == 0.0 ? 0.0 : 2.0 * tp / (2.0 * tp + fp + fn);
    total += f1 * (tp + fn);
  }
  return total / static_cast<double>(truth.size());
}

}  // namespace opdist

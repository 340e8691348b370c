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

#include "opdist/matching.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace opdist {
namespace {

// Min-cost flow on a small dense graph: successive shortest paths with
// Dijkstra over reduced costs (all original costs are non-negative).
class MinCostFlow {
 public:
  explicit MinCostFlow(std::size_t nodes) : adjacency_(nodes) {}

  std::size_t add_edge(std::size_t from, std::size_t to, std::int64_t capacity,
                       double cost) {
    const std::size_t id = edges_.size();
    edges_.push_back({to, capacity, cost});
    adjacency_[from].push_back(id);
    edges_.push_back({from, 0, -cost});
    adjacency_[to].push_back(id + 1);
    return id;
  }

  std::int64_t flow_on(std::size_t edge) const { return edges_[edge ^ 1].capacity; }

  std::int64_t run(std::size_t source, std::size_t sink, std::int64_t demand) {
    const std::size_t n = adjacency_.size();
    std::vector<double> potential(n, 0.0);
    std::int64_t sent = 0;
    constexpr double kInf = std::numeric_limits<double>::infinity();
    while (sent < demand) {
      std::vector<double> dist(n, kInf);
      std::vector<std::size_t> via(n, SIZE_MAX);
      std::vector<bool> done(n, false);
      dist[source] = 0.0;
      for (std::size_t iter = 0; iter < n; ++iter) {
        std::size_t u = SIZE_MAX;
        for (std::size_t v = 0; v < n; ++v) {
          if (!done[v] && dist[v] < kInf && (u == SIZE_MAX || dist[v] < dist[u])) {
            u = v;
          }
        }
        if (u == SIZE_MAX) break;
        done[u] = true;
        for (const std::size_t id : adjacency_[u]) {
          const Edge& e = edges_[id];
          if (e.capacity <= 0 || done[e.to]) continue;
          // Rounding can make reduced costs marginally negative.
          const double reduced =
              std::max(0.0, e.cost + potential[u] - potential[e.to]);
          if (dist[u] + reduced < dist[e.to]) {
            dist[e.to] = dist[u] + reduced;
            via[e.to] = id;
          }
        }
      }
      if (dist[sink] == kInf) break;
      for (std::size_t v = 0; v < n; ++v) {
        if (dist[v] < kInf) potential[v] += dist[v];
      }
      std::int64_t push = demand - sent;
      for (std::size_t v = sink; v != source; v = edges_[via[v] ^ 1].to) {
        push = std::min(push, edges_[via[v]].capacity);
      }
      for (std::size_t v = sink; v != source; v = edges_[via[v] ^ 1].to) {
        edges_[via[v]].capacity -= push;
        edges_[via[v] ^ 1].capacity += push;
      }
      sent += push;
    }
    return sent;
  }

 private:
  struct Edge {
    std::size_t to;
    std::int64_t capacity;
    double cost;
  };
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

}  // namespace

TransportPlan solve_transport(const CostMatrix& cost,
                              std::span<const std::int64_t> supply,
                              std::span<const std::int64_t> demand) {
  const std::size_t rows = static_cast<std::size_t>(cost.rows());
  const std::size_t cols = static_cast<std::size_t>(cost.cols());
  if (rows == 0 || cols == 0 || supply.size() != rows || demand.size() != cols) {
    throw std::invalid_argument("transport: mass vectors do not match cost shape");
  }
  const std::int64_t total = std::accumulate(supply.begin(), supply.end(),
                                             std::int64_t{0});
  if (total != std::accumulate(demand.begin(), demand.end(), std::int64_t{0}) ||
      total <= 0) {
    throw std::invalid_argument("transport: supply and demand totals differ");
  }
  if (std::any_of(supply.begin(), supply.end(), [](auto s) { return s < 0; }) ||
      std::any_of(demand.begin(), demand.end(), [](auto d) { return d < 0; })) {
    throw std::invalid_argument("transport: negative mass");
  }
  if (!cost.allFinite() || (cost.array() < 0.0).any()) {
    throw std::invalid_argument("transport: costs must be finite and >= 0");
  }

  const std::size_t source = rows + cols;
  const std::size_t sink = source + 1;
  MinCostFlow graph(rows + cols + 2);
  for (std::size_t i = 0; i < rows; ++i) graph.add_edge(source, i, supply[i], 0.0);
  std::vector<std::size_t> cell_edge(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      cell_edge[i * cols + j] =
          graph.add_edge(i, rows + j, std::min(supply[i], demand[j]),
                         cost(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    }
  }
  for (std::size_t j = 0; j < cols; ++j) {
    graph.add_edge(rows + j, sink, demand[j], 0.0);
  }
  graph.run(source, sink, total);

  TransportPlan plan;
  plan.flow = FlowMatrix::Zero(cost.rows(), cost.cols());
  const double scale = static_cast<double>(total);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const std::int64_t units = graph.flow_on(cell_edge[i * cols + j]);
      if (units == 0) continue;
      const auto r = static_cast<Eigen::Index>(i);
      const auto c = static_cast<Eigen::Index>(j);
      plan.flow(r, c) = static_cast<double>(units) / scale;
      plan.objective += static_cast<double>(units) * cost(r, c);
    }
  }
  plan.objective /= scale;
  return plan;
}

TransportPlan solve_transport(const CostMatrix& cost) {
  const std::int64_t g = std::max<std::int64_t>(
      1, std::gcd<std::int64_t, std::int64_t>(cost.rows(), cost.cols()));
  const std::vector<std::int64_t> supply(static_cast<std::size_t>(cost.rows()),
                                         cost.cols() / g);
  const std::vector<std::int64_t> demand(static_cast<std::size_t>(cost.cols()),
                                         cost.rows() / g);
  return solve_transport(cost, supply, demand);
}

SubjectMapping flow_to_mapping(const FlowMatrix& flow, const CostMatrix& cost,
                               double tau, double eps) {
  SubjectMapping mapping;
  for (Eigen::Index i = 0; i < flow.rows(); ++i) {
    for (Eigen::Index j = 0; j < flow.cols(); ++j) {
      if (flow(i, j) > eps && cost(i, j) <= tau) {
        mapping.push_back({static_cast<std::size_t>(i),
                           static_cast<std::size_t>(j), flow(i, j), cost(i, j)});
      }
    }
  }
  return mapping;
}

std::optional<std::vector<double>> SubjectEmbedder::embed(
    const RepresentedSubject& subject) const {
  if (concepts_ != nullptr) {
    if (const auto v = concepts_->find(subject.key)) {
      return std::vector<double>(v->begin(), v->end());
    }
  }
  if (words_ != nullptr) return phrase_vector(*words_, subject.phrase);
  return std::nullopt;
}

SubjectEmbeddings embed_subjects(const OpinionRepresentation& rep,
                                 const SubjectEmbedder& embedder) {
  SubjectEmbeddings out;
  out.reserve(rep.subjects.size());
  for (const auto& subject : rep.subjects) {
    auto v = embedder.embed(subject);
    // Zero vectors have no direction; treat them like missing embeddings.
    if (v && std::all_of(v->begin(), v->end(), [](double x) { return x == 0.0; })) {
      v.reset();
    }
    out.push_back(std::move(v));
  }
  return out;
}

CostMatrix cost_matrix(const OpinionRepresentation& a,
                       const SubjectEmbeddings& a_embeddings,
                       const OpinionRepresentation& b,
                       const SubjectEmbeddings& b_embeddings) {
  const auto rows = static_cast<Eigen::Index>(a.subjects.size());
  const auto cols = static_cast<Eigen::Index>(b.subjects.size());
  CostMatrix cost(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto& ea = a_embeddings[static_cast<std::size_t>(i)];
      const auto& eb = b_embeddings[static_cast<std::size_t>(j)];
      if (a.subjects[static_cast<std::size_t>(i)].key ==
          b.subjects[static_cast<std::size_t>(j)].key) {
        cost(i, j) = 0.0;
      } else if (!ea || !eb) {
        cost(i, j) = 1.0;
      } else {
        cost(i, j) = semantic_distance(*ea, *eb);
      }
    }
  }
  return cost;
}

CostMatrix cost_matrix(const OpinionRepresentation& a,
                       const OpinionRepresentation& b,
                       const SubjectEmbedder& embedder) {
  return cost_matrix(a, embed_subjects(a, embedder), b, embed_subjects(b, embedder));
}

}  // namespace opdist

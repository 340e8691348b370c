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

#include "opdist/report.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "opdist/error.hpp"
#include "opdist/metrics.hpp"

namespace opdist {
namespace {

using nlohmann::ordered_json;

ordered_json optional_number(const std::optional<double>& value) {
  return value ? ordered_json(*value) : ordered_json(nullptr);
}

std::string fixed(double value, int digits = 4) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

std::string fixed(const std::optional<double>& value, int digits = 4) {
  return value ? fixed(*value, digits) : "-";
}

std::string neighbor_text(const Neighbor& n) {
  return n.id + " (" +
         (n.undefined ? std::string("undefined(imputed 1.0)") : fixed(n.distance)) +
         ")";
}

}  // namespace

MeasureReport evaluate_measure(std::string measure, const DistanceMatrix& matrix,
                               std::span<const int> truth, std::size_t k,
                               std::uint64_t seed, const EvaluateOptions& options) {
  MeasureReport out;
  out.measure = std::move(measure);
  out.opinions = matrix.size();
  out.undefined_pairs = matrix.undefined_pairs();
  const bool labeled = !truth.empty();
  if (labeled && truth.size() != matrix.size()) {
    throw DataError("labels and distance matrix differ in size");
  }
  if (matrix.size() == 0) {
    out.notes.push_back("empty dataset");
    return out;
  }
  double best = -2.0;
  for (const auto algorithm : options.algorithms) {
    AlgorithmScores scores;
    scores.clustering = cluster(matrix, algorithm, k, seed, options.kmeans);
    scores.silhouette = silhouette(matrix.values, scores.clustering.labels);
    if (labeled) {
      scores.ari = ari(scores.clustering.labels, truth);
      scores.nmi = nmi(scores.clustering.labels, truth);
      best = std::max(best, *scores.ari);
    }
    out.algorithms.push_back(std::move(scores));
  }
  if (!labeled) {
    out.notes.push_back("unlabeled dataset: silhouette only");
    return out;
  }
  for (auto& scores : out.algorithms) scores.best_ari = *scores.ari == best;
  out.d_metric = d_metric(matrix.values, truth);
  if (!out.d_metric) out.notes.push_back("D metric undefined");
  if (options.supervised) {
    try {
      const auto features = opinion_features(matrix.values, options.extra_features);
      out.supervised =
          supervised_pairwise(features, truth, seed, options.supervised_options);
    } catch (const UsageError& e) {
      out.notes.push_back(std::string("supervised skipped: ") + e.what());
    }
  }
  return out;
}

std::string report_to_json(const EvaluationReport& report) {
  ordered_json root;
  root["dataset"] = report.dataset;
  root["k"] = report.k;
  root["seed"] = report.seed;
  root["labeled"] = report.labeled;
  root["measures"] = ordered_json::array();
  for (const auto& m : report.measures) {
    ordered_json jm;
    jm["measure"] = m.measure;
    jm["opinions"] = m.opinions;
    jm["undefined_pairs"] = m.undefined_pairs;
    jm["d_metric"] = optional_number(m.d_metric);
    jm["algorithms"] = ordered_json::array();
    for (const auto& a : m.algorithms) {
      ordered_json ja;
      ja["algorithm"] = to_string(a.clustering.algorithm);
      ja["ari"] = optional_number(a.ari);
      ja["nmi"] = optional_number(a.nmi);
      ja["silhouette"] = a.silhouette;
      ja["best_ari"] = a.best_ari;
      ja["labels"] = a.clustering.labels;
      jm["algorithms"].push_back(std::move(ja));
    }
    if (m.supervised) {
      jm["supervised"] = {{"weighted_f1", m.supervised->mean_f1},
                          {"per_seed", m.supervised->per_seed}};
    } else {
      jm["supervised"] = nullptr;
    }
    jm["notes"] = m.notes;
    root["measures"].push_back(std::move(jm));
  }
  return root.dump(2) + "\n";
}

std::string report_to_text(const EvaluationReport& report) {
  const std::vector<std::string> header = {"measure", "algorithm", "ARI", "NMI",
                                           "Sil",     "D(%)",      "F1",  "undef"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& m : report.measures) {
    for (const auto& a : m.algorithms) {
      rows.push_back({m.measure,
                      std::string(to_string(a.clustering.algorithm)) +
                          (a.best_ari ? " *" : ""),
                      fixed(a.ari), fixed(a.nmi), fixed(a.silhouette),
                      fixed(m.d_metric, 2),
                      m.supervised ? fixed(m.supervised->mean_f1) : "-",
                      std::to_string(m.undefined_pairs)});
    }
  }
  std::vector<std::size_t> widths(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    widths[c] = header[c].size();
    for (const auto& row : rows) widths[c] = std::max(widths[c], row[c].size());
  }
  std::ostringstream out;
  out << "dataset: " << report.dataset << "  k=" << report.k
      << "  seed=" << report.seed << '\n';
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << "  ";
      // Text columns left aligned, numbers right aligned.
      if (c < 2) {
        out << row[c] << std::string(widths[c] - row[c].size(), ' ');
      } else {
        out << std::string(widths[c] - row[c].size(), ' ') << row[c];
      }
    }
    out << '\n';
  };
  emit(header);
  std::size_t rule = 2 * (header.size() - 1);
  for (const auto w : widths) rule += w;
  out << std::string(rule, '-') << '\n';
  for (const auto& row : rows) emit(row);
  out << "* best ARI for the measure\n";
  for (const auto& m : report.measures) {
    for (const auto& note : m.notes) out << "note [" << m.measure << "]: " << note << '\n';
  }
  return out.str();
}

std::vector<NeighborBlock> neighbor_report(
    const std::vector<std::string>& measures,
    const std::vector<DistanceMatrix>& matrices, std::size_t m) {
  if (measures.size() != matrices.size()) {
    throw std::invalid_argument("neighbor_report: measures and matrices differ");
  }
  std::vector<NeighborBlock> blocks;
  if (matrices.empty()) return blocks;
  const auto& ids = matrices.front().ids;
  for (const auto& matrix : matrices) {
    if (matrix.ids != ids) throw DataError("distance matrices cover different opinions");
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    NeighborBlock block;
    block.opinion_id = ids[i];
    block.measures = measures;
    for (const auto& matrix : matrices) {
      std::vector<Neighbor> all;
      for (std::size_t j = 0; j < ids.size(); ++j) {
        if (j == i) continue;
        const auto r = static_cast<Eigen::Index>(i);
        const auto c = static_cast<Eigen::Index>(j);
        all.push_back({ids[j], matrix.values(r, c), matrix.undefined(r, c)});
      }
      auto nearest = all;
      std::stable_sort(nearest.begin(), nearest.end(), [](const auto& a, const auto& b) {
        return a.distance != b.distance ? a.distance < b.distance : a.id < b.id;
      });
      auto farthest = all;
      std::stable_sort(farthest.begin(), farthest.end(), [](const auto& a, const auto& b) {
        return a.distance != b.distance ? a.distance > b.distance : a.id < b.id;
      });
      nearest.resize(std::min(m, nearest.size()));
      farthest.resize(std::min(m, farthest.size()));
      block.nearest.push_back(std::move(nearest));
      block.farthest.push_back(std::move(farthest));
    }
    blocks.push_back(std::move(block));
  }
  return blocks;
}

std::string neighbors_to_text(const std::vector<NeighborBlock>& blocks) {
  std::ostringstream out;
  for (const auto& block : blocks) {
    out << "== " << block.opinion_id << '\n';
    for (std::size_t k = 0; k < block.measures.size(); ++k) {
      auto join = [](const std::vector<Neighbor>& list) {
        std::string s;
        for (const auto& n : list) s += (s.empty() ? "" : ", ") + neighbor_text(n);
        return s.empty() ? std::string("-") : s;
      };
      out << "  [" << block.measures[k] << "] nearest: " << join(block.nearest[k])
          << '\n';
      out << "  [" << block.measures[k] << "] farthest: " << join(block.farthest[k])
          << '\n';
    }
  }
  return out.str();
}

std::string neighbors_to_json(const std::vector<NeighborBlock>& blocks) {
  ordered_json root = ordered_json::array();
  for (const auto& block : blocks) {
    ordered_json jb;
    jb["opinion_id"] = block.opinion_id;
    for (std::size_t k = 0; k < block.measures.size(); ++k) {
      auto list = [](const std::vector<Neighbor>& ns) {
        ordered_json arr = ordered_json::array();
        for (const auto& n : ns) {
          arr.push_back({{"id", n.id},
                         {"distance", n.distance},
                         {"undefined", n.undefined}});
        }
        return arr;
      };
      jb["measures"][block.measures[k]] = {{"nearest", list(block.nearest[k])},
                                           {"farthest", list(block.farthest[k])}};
    }
    root.push_back(std::move(jb));
  }
  return root.dump(2) + "\n";
}

}  // namespace opdist

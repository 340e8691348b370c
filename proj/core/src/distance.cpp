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

#include "opdist/distance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace opdist {
namespace {

double kl_term(double p, double m) { return p > 0.0 ? p * std::log2(p / m) : 0.0; }

// Ordering key used to pick the orientation of a pair before solving.
auto orientation_key(const OpinionRepresentation& rep) {
  std::vector<std::tuple<std::string_view, double, double, double, double>> subjects;
  subjects.reserve(rep.subjects.size());
  for (const auto& s : rep.subjects) {
    const auto& d = s.polarity.distribution;
    subjects.emplace_back(s.key, s.polarity.value, d.negative, d.neutral,
                          d.positive);
  }
  return std::make_pair(std::string_view(rep.opinion_id), std::move(subjects));
}

}  // namespace

std::optional<DifferenceKind> parse_difference_kind(std::string_view name) {
  if (name == "abs") return DifferenceKind::kAbs;
  if (name == "jsd") return DifferenceKind::kJsd;
  if (name == "emd") return DifferenceKind::kEmd;
  return std::nullopt;
}

std::string_view to_string(DifferenceKind kind) {
  switch (kind) {
    case DifferenceKind::kAbs: return "abs";
    case DifferenceKind::kJsd: return "jsd";
    case DifferenceKind::kEmd: return "emd";
  }
  return "abs";
}

double f_abs(double x, double y) { return std::abs(x - y); }

double f_jsd(const PolarityDistribution& p, const PolarityDistribution& q) {
  const double ps[3] = {p.negative, p.neutral, p.positive};
  const double qs[3] = {q.negative, q.neutral, q.positive};
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double m = 0.5 * (ps[i] + qs[i]);
    total += 0.5 * kl_term(ps[i], m) + 0.5 * kl_term(qs[i], m);
  }
  return std::clamp(total, 0.0, 1.0);
}

double f_emd(const PolarityDistribution& p, const PolarityDistribution& q) {
  const double c1 = p.negative - q.negative;
  const double c2 = (p.negative + p.neutral) - (q.negative + q.neutral);
  return std::clamp((std::abs(c1) + std::abs(c2)) / 2.0, 0.0, 1.0);
}

double difference(const SubjectPolarity& a, const SubjectPolarity& b,
                  DifferenceKind kind) {
  const bool dist_a = a.mode == PolarityMode::kDistribution;
  const bool dist_b = b.mode == PolarityMode::kDistribution;
  if (kind == DifferenceKind::kAbs) {
    if (dist_a || dist_b) {
      throw std::invalid_argument("abs difference needs scalar polarities");
    }
    return f_abs(a.value, b.value);
  }
  if (!dist_a || !dist_b) {
    throw std::invalid_argument(std::string(to_string(kind)) +
                                " difference needs polarity distributions");
  }
  return kind == DifferenceKind::kJsd ? f_jsd(a.distribution, b.distribution)
                                      : f_emd(a.distribution, b.distribution);
}

OpinionDistanceDetail opinion_distance_detail(
    const OpinionRepresentation& rep1, const SubjectEmbeddings& emb1,
    const OpinionRepresentation& rep2, const SubjectEmbeddings& emb2,
    DifferenceKind kind, double tau) {
  OpinionDistanceDetail detail;
  if (rep1.subjects.empty() || rep2.subjects.empty()) return detail;

  const bool swap = orientation_key(rep2) < orientation_key(rep1);
  const auto& a = swap ? rep2 : rep1;
  const auto& b = swap ? rep1 : rep2;
  const CostMatrix cost = cost_matrix(a, swap ? emb2 : emb1, b, swap ? emb1 : emb2);
  TransportPlan plan = solve_transport(cost);
  SubjectMapping mapping = flow_to_mapping(plan.flow, cost, tau);

  double sum = 0.0;
  for (const auto& pair : mapping) {
    sum += difference(a.subjects[pair.i].polarity, b.subjects[pair.j].polarity,
                      kind);
  }
  if (!mapping.empty()) {
    detail.value = sum / (2.0 * static_cast<double>(mapping.size()));
  }

  if (swap) {
    detail.cost = cost.transpose();
    detail.plan.flow = plan.flow.transpose();
    detail.plan.objective = plan.objective;
    for (auto& pair : mapping) std::swap(pair.i, pair.j);
    std::sort(mapping.begin(), mapping.end(), [](const auto& x, const auto& y) {
      return std::tie(x.i, x.j) < std::tie(y.i, y.j);
    });
  } else {
    detail.cost = cost;
    detail.plan = std::move(plan);
  }
  detail.mapping = std::move(mapping);
  return detail;
}

std::optional<double> opinion_distance(const OpinionRepresentation& rep1,
                                       const OpinionRepresentation& rep2,
                                       DifferenceKind kind,
                                       const SubjectEmbedder& embedder,
                                       double tau) {
  return opinion_distance_detail(rep1, embed_subjects(rep1, embedder), rep2,
                                 embed_subjects(rep2, embedder), kind, tau)
      .value;
}

}  // namespace opdist

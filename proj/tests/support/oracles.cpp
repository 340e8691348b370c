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

#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <variant>

namespace opdist::testing {
namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

// Flows on a spanning tree are fixed by peeling leaves; returns nullopt if
// some flow is negative.
std::optional<double> tree_cost(const Eigen::MatrixXd& cost,
                                const std::vector<std::pair<int, int>>& cells,
                                std::span<const double> rows,
                                std::span<const double> cols) {
  const int n1 = static_cast<int>(rows.size());
  const int n2 = static_cast<int>(cols.size());
  std::vector<double> remaining(rows.begin(), rows.end());
  remaining.insert(remaining.end(), cols.begin(), cols.end());
  std::vector<bool> used(cells.size(), false);
  double total = 0.0;
  for (std::size_t step = 0; step < cells.size(); ++step) {
    std::vector<int> degree(static_cast<std::size_t>(n1 + n2), 0);
    for (std::size_t e = 0; e < cells.size(); ++e) {
      if (used[e]) continue;
      ++degree[static_cast<std::size_t>(cells[e].first)];
      ++degree[static_cast<std::size_t>(n1 + cells[e].second)];
    }
    bool progressed = false;
    for (std::size_t e = 0; e < cells.size() && !progressed; ++e) {
      if (used[e]) continue;
      const auto r = static_cast<std::size_t>(cells[e].first);
      const auto c = static_cast<std::size_t>(n1 + cells[e].second);
      std::size_t leaf = degree[r] == 1 ? r : degree[c] == 1 ? c : SIZE_MAX;
      if (leaf == SIZE_MAX) continue;
      const std::size_t other = leaf == r ? c : r;
      const double flow = remaining[leaf];
      if (flow < -1e-12) return std::nullopt;
      remaining[leaf] = 0.0;
      remaining[other] -= flow;
      total += flow * cost(cells[e].first, cells[e].second);
      used[e] = true;
      progressed = true;
    }
    if (!progressed) return std::nullopt;
  }
  for (const double r : remaining) {
    if (std::abs(r) > 1e-9) return std::nullopt;
  }
  return total;
}

bool relation_holds(const RelationTerm& term, std::size_t from, std::size_t to,
                    const ParsedSentence& tree) {
  if (term.direction == Direction::kGovernorOf) {
    const auto head = tree.head_of(to);
    return head && *head == from && term.relation.matches(tree.tokens[to].deprel);
  }
  const auto head = tree.head_of(from);
  return head && *head == to && term.relation.matches(tree.tokens[from].deprel);
}

// One disjunct: relation edges (from node, term) that must all hold.
using Edge = std::pair<std::size_t, RelationTerm>;

void expand(const DepPattern& pattern, std::vector<std::size_t> pending,
            std::vector<Edge> edges, std::vector<std::vector<Edge>>& out);

// Expands conjunction `terms` of node `owner` starting at index `t`, then
// continues with the pending nodes.
void expand_terms(const DepPattern& pattern, std::size_t owner,
                  const std::vector<Term>& terms, std::size_t t,
                  std::vector<std::size_t> pending, std::vector<Edge> edges,
                  std::vector<std::vector<Edge>>& out) {
  if (t == terms.size()) {
    expand(pattern, std::move(pending), std::move(edges), out);
    return;
  }
  if (const auto* rel = std::get_if<RelationTerm>(&terms[t])) {
    edges.emplace_back(owner, *rel);
    pending.push_back(rel->target);
    expand_terms(pattern, owner, terms, t + 1, std::move(pending), std::move(edges), out);
    return;
  }
  const auto& alt = std::get<AlternationTerm>(terms[t]);
  for (const auto& branch : alt.branches) {
    std::vector<Term> merged(branch.terms.begin(), branch.terms.end());
    merged.insert(merged.end(), terms.begin() + static_cast<std::ptrdiff_t>(t) + 1,
                  terms.end());
    expand_terms(pattern, owner, merged, 0, pending, edges, out);
  }
}

void expand(const DepPattern& pattern, std::vector<std::size_t> pending,
            std::vector<Edge> edges, std::vector<std::vector<Edge>>& out) {
  if (pending.empty()) {
    out.push_back(std::move(edges));
    return;
  }
  const std::size_t node = pending.back();
  pending.pop_back();
  expand_terms(pattern, node, pattern.nodes()[node].relations.terms, 0,
               std::move(pending), std::move(edges), out);
}

}  // namespace

double brute_force_transport(const Eigen::MatrixXd& cost,
                             std::span<const double> rows,
                             std::span<const double> cols) {
  const int n1 = static_cast<int>(cost.rows());
  const int n2 = static_cast<int>(cost.cols());
  std::vector<std::pair<int, int>> all;
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) all.emplace_back(i, j);
  }
  const std::size_t basis = static_cast<std::size_t>(n1 + n2 - 1);
  double best = std::numeric_limits<double>::infinity();
  std::vector<bool> pick(all.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(basis), true);
  do {
    std::vector<std::pair<int, int>> cells;
    DisjointSets sets(static_cast<std::size_t>(n1 + n2));
    bool tree = true;
    for (std::size_t e = 0; e < all.size() && tree; ++e) {
      if (!pick[e]) continue;
      cells.push_back(all[e]);
      tree = sets.unite(static_cast<std::size_t>(all[e].first),
                        static_cast<std::size_t>(n1 + all[e].second));
    }
    if (!tree) continue;
    if (const auto c = tree_cost(cost, cells, rows, cols)) best = std::min(best, *c);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

double brute_force_transport(const Eigen::MatrixXd& cost) {
  const std::vector<double> rows(static_cast<std::size_t>(cost.rows()),
                                 1.0 / static_cast<double>(cost.rows()));
  const std::vector<double> cols(static_cast<std::size_t>(cost.cols()),
                                 1.0 / static_cast<double>(cost.cols()));
  return brute_force_transport(cost, rows, cols);
}

std::set<PatternMatch> brute_force_matches(const DepPattern& pattern,
                                           const ParsedSentence& tree) {
  std::vector<std::vector<Edge>> disjuncts;
  expand(pattern, {0}, {}, disjuncts);
  const std::size_t n = tree.size();
  std::set<PatternMatch> out;
  for (const auto& edges : disjuncts) {
    std::vector<std::size_t> active = {0};
    for (const auto& [from, rel] : edges) active.push_back(rel.target);
    std::sort(active.begin(), active.end());
    active.erase(std::unique(active.begin(), active.end()), active.end());

    std::map<std::size_t, std::size_t> assign;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == active.size()) {
        for (const auto& [from, rel] : edges) {
          if (!relation_holds(rel, assign[from], assign[rel.target], tree)) return;
        }
        PatternMatch m;
        m.root = assign[0];
        for (const auto node : active) {
          if (const auto& cap = pattern.nodes()[node].capture) {
            m.captures[*cap] = assign[node];
          }
        }
        out.insert(m);
        return;
      }
      const std::size_t node = active[k];
      for (std::size_t tok = 0; tok < n; ++tok) {
        if (!pattern.node_matches(node, tree.tokens[tok])) continue;
        bool ok = true;
        for (std::size_t prev = 0; prev < k && ok; ++prev) {
          const auto other = active[prev];
          const auto& ca = pattern.nodes()[node].capture;
          const auto& cb = pattern.nodes()[other].capture;
          const bool shared = ca && cb && *ca == *cb;
          ok = shared ? assign[other] == tok : assign[other] != tok;
        }
        if (!ok) continue;
        assign[node] = tok;
        rec(k + 1);
      }
    };
    rec(0);
  }
  return out;
}

ParsedSentence random_tree(Rng& rng, std::size_t max_tokens) {
  static const std::array<const char*, 9> kTags = {"VB", "VBD", "VBZ", "NN", "NNS",
                                                   "NNP", "JJ", "RB", "DT"};
  static const std::array<const char*, 20> kRelations = {
      "nmod:in", "nmod:to",  "nmod:of",    "nmod:by",  "nmod:after",
      "nmod:without", "nsubj", "dobj",     "csubj",    "compound",
      "compound:prt", "advcl:as", "acomp", "xcomp",    "advmod",
      "amod",    "nmod:poss", "neg",       "det",      "nmod"};
  const std::size_t n = 1 + rng.uniform_index(max_tokens);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(std::span<std::size_t>(order));
  ParsedSentence tree;
  tree.tokens.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto& token = tree.tokens[order[k]];
    token.form = "w" + std::to_string(order[k]);
    token.lemma = token.form;
    token.xpos = kTags[rng.uniform_index(kTags.size())];
    token.upos = "X";
    if (k == 0) {
      token.head = 0;
      token.deprel = "root";
    } else {
      token.head = static_cast<int>(order[rng.uniform_index(k)]) + 1;
      token.deprel = kRelations[rng.uniform_index(kRelations.size())];
    }
  }
  return tree;
}

double pair_counting_ari(std::span<const int> a, std::span<const int> b) {
  double n11 = 0, n00 = 0, n01 = 0, n10 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const bool same_a = a[i] == a[j];
      const bool same_b = b[i] == b[j];
      if (same_a && same_b) {
        ++n11;
      } else if (!same_a && !same_b) {
        ++n00;
      } else if (same_a) {
        ++n10;
      } else {
        ++n01;
      }
    }
  }
  const double denom = (n00 + n01) * (n01 + n11) + (n00 + n10) * (n10 + n11);
  if (denom == 0.0) return 1.0;
  return 2.0 * (n00 * n11 - n01 * n10) / denom;
}

}  // namespace opdist::testing

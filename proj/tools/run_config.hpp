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

#ifndef OPDIST_TOOLS_RUN_CONFIG_HPP_
#define OPDIST_TOOLS_RUN_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "opdist/clustering.hpp"
#include "opdist/corpus.hpp"
#include "opdist/distance.hpp"
#include "opdist/semantics.hpp"
#include "opdist/supervised.hpp"

namespace opdist::cli {

// Every leaf of this document is a configuration field; its dotted path is
// also the name of the command-line flag overriding it.
nlohmann::json default_config();

// Leaves of a config document keyed by dotted path; arrays count as leaves.
std::vector<std::pair<std::string, nlohmann::json>> config_leaves(
    const nlohmann::json& config);

// Applies `value` (flag text) to the leaf at `dotted`, converting to the
// type of the default. Throws UsageError for unknown fields or bad values.
void set_field(nlohmann::json& config, const std::string& dotted,
               const std::string& value);

// Overlays a JSON config file onto the defaults; unknown keys and type
// mismatches throw UsageError.
void merge_config(nlohmann::json& config, const nlohmann::json& overlay);

// SHA-256 of the canonical dump without fields that cannot change results
// (output directory, thread count, response cache location).
std::string config_hash(const nlohmann::json& config);

struct ResourcePaths {
  std::string lexicon;
  std::string shifters;
  std::string gazetteer;
  std::string vectors;
  WordVectorFormat vectors_format = WordVectorFormat::kText;
  std::string stopwords;
  std::string conllu;
  std::string rules;
  std::string concept_embeddings;
  std::string embeddings;
};

struct TagMeSettings {
  bool enabled = false;
  std::string endpoint;
  std::string token;
  std::string cache_dir;
};

struct RunConfig {
  std::filesystem::path dataset_path;
  CorpusFormat dataset_format = CorpusFormat::kJsonl;
  std::vector<Measure> measures;
  Variant variant = Variant::kOd;
  DistanceConfig distance;
  ResourcePaths resources;
  TagMeSettings tagme;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::vector<ClusterAlgorithm> algorithms;
  bool supervised = true;
  PairFeatures pair_features = PairFeatures::kAbsDiff;
  bool supervised_tfidf = false;
  std::size_t neighbors = 2;
  std::filesystem::path output;
};

// Validates and converts; throws UsageError naming the offending field.
RunConfig parse_run_config(const nlohmann::json& config);

}  // namespace opdist::cli

#endif  // OPDIST_TOOLS_RUN_CONFIG_HPP_

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

#include "run_config.hpp"

#include "opdist/error.hpp"
#include "opdist/tagme.hpp"
#include "opdist/text_util.hpp"

namespace opdist::cli {
namespace {

using nlohmann::json;

void collect(const json& node, const std::string& prefix,
             std::vector<std::pair<std::string, json>>& out) {
  if (!node.is_object()) {
    out.emplace_back(prefix, node);
    return;
  }
  for (const auto& [key, value] : node.items()) {
    collect(value, prefix.empty() ? key : prefix + "." + key, out);
  }
}

json::json_pointer pointer(const std::string& dotted) {
  std::string path;
  for (const auto part : split(dotted, '.')) path += "/" + std::string(part);
  return json::json_pointer(path);
}

bool same_kind(const json& a, const json& b) {
  if (a.is_number() && b.is_number()) {
    return !(a.is_number_integer() && b.is_number_float());
  }
  return a.type() == b.type();
}

std::vector<std::string> string_list(const json& config, const char* field) {
  std::vector<std::string> out;
  for (const auto& v : config.at(pointer(field))) {
    if (!v.is_string()) throw UsageError(std::string(field) + " must list strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::string str(const json& config, const char* field) {
  return config.at(pointer(field)).get<std::string>();
}

template <typename T, typename Parser>
T enum_field(const json& config, const char* field, Parser parse) {
  const auto text = str(config, field);
  const auto value = parse(text);
  if (!value) throw UsageError("unknown value \"" + text + "\" for " + field);
  return *value;
}

}  // namespace

json default_config() {
  return json{
      {"dataset", {{"path", ""}, {"format", "jsonl"}}},
      {"measures", {"od", "tfidf"}},
      {"variant", "od"},
      {"polarity", "discrete"},
      {"fn", "abs"},
      {"shifters", {{"enabled", true}, {"scope", "local"}, {"window", 3}}},
      {"tau", kDefaultSemanticThreshold},
      {"lp_threshold", kDefaultLinkProbabilityThreshold},
      {"resources",
       {{"lexicon", ""},
        {"shifters", ""},
        {"gazetteer", ""},
        {"vectors", ""},
        {"vectors_format", "text"},
        {"stopwords", ""},
        {"conllu", ""},
        {"rules", ""},
        {"concept_embeddings", ""},
        {"embeddings", ""}}},
      {"tagme",
       {{"enabled", false},
        {"endpoint", TagMeConfig{}.endpoint},
        {"token", ""},
        {"cache_dir", ""}}},
      {"k", 0},
      {"seed", 42},
      {"algorithms", {"kmeans-rows", "spectral"}},
      {"supervised", {{"enabled", true}, {"features", "absdiff"}, {"tfidf", false}}},
      {"report", {{"neighbors", 2}}},
      {"output", "out"},
      {"threads", 0}};
}

std::vector<std::pair<std::string, json>> config_leaves(const json& config) {
  std::vector<std::pair<std::string, json>> out;
  collect(config, "", out);
  return out;
}

void set_field(json& config, const std::string& dotted, const std::string& value) {
  const auto ptr = pointer(dotted);
  if (!config.contains(ptr) || config.at(ptr).is_object()) {
    throw UsageError("unknown config field " + dotted);
  }
  json& slot = config.at(ptr);
  const auto bad = [&] { return UsageError("invalid value \"" + value + "\" for " + dotted); };
  if (slot.is_boolean()) {
    const auto v = to_lower(value);
    if (v == "true" || v == "on" || v == "1" || v == "yes") {
      slot = true;
    } else if (v == "false" || v == "off" || v == "0" || v == "no") {
      slot = false;
    } else {
      throw bad();
    }
  } else if (slot.is_number_integer()) {
    const auto v = parse_int(value);
    if (!v || *v < 0) throw bad();
    slot = *v;
  } else if (slot.is_number()) {
    const auto v = parse_double(value);
    if (!v) throw bad();
    slot = *v;
  } else if (slot.is_array()) {
    slot = json::array();
    for (const auto part : split(value, ',')) {
      const auto item = trim(part);
      if (!item.empty()) slot.push_back(std::string(item));
    }
  } else {
    slot = value;
  }
}

void merge_config(json& config, const json& overlay) {
  if (!overlay.is_object()) throw UsageError("config file must hold a JSON object");
  for (const auto& [dotted, value] : config_leaves(overlay)) {
    const auto ptr = pointer(dotted);
    if (!config.contains(ptr) || config.at(ptr).is_object()) {
      throw UsageError("unknown config field " + dotted);
    }
    if (!same_kind(config.at(ptr), value)) {
      throw UsageError("config field " + dotted + " has the wrong type");
    }
    config.at(ptr) = value;
  }
}

std::string config_hash(const json& config) {
  json relevant = config;
  relevant.erase("output");
  relevant.erase("threads");
  if (relevant.contains("tagme")) relevant["tagme"].erase("cache_dir");
  return sha256_hex(relevant.dump());
}

RunConfig parse_run_config(const json& config) {
  RunConfig rc;
  rc.dataset_path = str(config, "dataset.path");
  rc.dataset_format =
      enum_field<CorpusFormat>(config, "dataset.format", parse_corpus_format);
  for (const auto& name : string_list(config, "measures")) {
    const auto m = parse_measure(name);
    if (!m) throw UsageError("unknown measure \"" + name + "\"");
    rc.measures.push_back(*m);
  }
  rc.variant = enum_field<Variant>(config, "variant", parse_variant);
  rc.distance.represent.mode =
      enum_field<PolarityMode>(config, "polarity", parse_polarity_mode);
  rc.distance.fn = enum_field<DifferenceKind>(config, "fn", parse_difference_kind);
  rc.distance.represent.shifters.enabled =
      config.at(pointer("shifters.enabled")).get<bool>();
  rc.distance.represent.shifters.scope =
      enum_field<ShifterScope>(config, "shifters.scope", parse_shifter_scope);
  rc.distance.represent.shifters.window =
      config.at(pointer("shifters.window")).get<std::size_t>();
  rc.distance.tau = config.at("tau").get<double>();
  rc.distance.lp_threshold = config.at("lp_threshold").get<double>();
  rc.distance.threads = config.at("threads").get<unsigned>();
  validate(rc.distance);

  auto& r = rc.resources;
  r.lexicon = str(config, "resources.lexicon");
  r.shifters = str(config, "resources.shifters");
  r.gazetteer = str(config, "resources.gazetteer");
  r.vectors = str(config, "resources.vectors");
  const auto format = str(config, "resources.vectors_format");
  if (format == "text") {
    r.vectors_format = WordVectorFormat::kText;
  } else if (format == "binary") {
    r.vectors_format = WordVectorFormat::kBinary;
  } else {
    throw UsageError("unknown value \"" + format + "\" for resources.vectors_format");
  }
  r.stopwords = str(config, "resources.stopwords");
  r.conllu = str(config, "resources.conllu");
  r.rules = str(config, "resources.rules");
  r.concept_embeddings = str(config, "resources.concept_embeddings");
  r.embeddings = str(config, "resources.embeddings");

  rc.tagme.enabled = config.at(pointer("tagme.enabled")).get<bool>();
  rc.tagme.endpoint = str(config, "tagme.endpoint");
  rc.tagme.token = str(config, "tagme.token");
  rc.tagme.cache_dir = str(config, "tagme.cache_dir");

  rc.k = config.at("k").get<std::size_t>();
  rc.seed = config.at("seed").get<std::uint64_t>();
  for (const auto& name : string_list(config, "algorithms")) {
    const auto a = parse_cluster_algorithm(name);
    if (!a) throw UsageError("unknown clustering algorithm \"" + name + "\"");
    rc.algorithms.push_back(*a);
  }
  rc.supervised = config.at(pointer("supervised.enabled")).get<bool>();
  rc.pair_features =
      enum_field<PairFeatures>(config, "supervised.features", parse_pair_features);
  rc.supervised_tfidf = config.at(pointer("supervised.tfidf")).get<bool>();
  rc.neighbors = config.at(pointer("report.neighbors")).get<std::size_t>();
  rc.output = str(config, "output");
  if (rc.output.empty()) throw UsageError("output must name a directory");
  return rc;
}

}  // namespace opdist::cli

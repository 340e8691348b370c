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

#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "opdist/clustering.hpp"
#include "opdist/corpus.hpp"
#include "opdist/deppat.hpp"
#include "opdist/distance.hpp"
#include "opdist/error.hpp"
#include "opdist/lexicon.hpp"
#include "opdist/report.hpp"
#include "opdist/semantics.hpp"
#include "opdist/spotter.hpp"
#include "opdist/supervised.hpp"
#include "opdist/tagme.hpp"
#include "opdist/text_util.hpp"
#include "run_config.hpp"

namespace opdist::cli {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Owns whatever resources the config names; view() hands out pointers.
struct LoadedResources {
  std::optional<SentimentLexicon> lexicon;
  std::optional<ShifterSet> shifters;
  std::optional<Gazetteer> gazetteer;
  std::unique_ptr<TagMeClient> tagme;
  std::optional<ParseIndex> parses;
  std::optional<std::vector<DepPattern>> rules;
  std::optional<VectorStore> vectors;
  std::optional<VectorStore> concept_embeddings;
  std::optional<VectorStore> embeddings;
  std::optional<StopwordSet> stopwords;
  std::vector<std::string> inputs;

  Resources view() const {
    Resources r;
    r.lexicon = lexicon ? &*lexicon : nullptr;
    r.shifters = shifters ? &*shifters : nullptr;
    r.gazetteer = gazetteer ? &*gazetteer : nullptr;
    r.tagme = tagme.get();
    r.parses = parses ? &*parses : nullptr;
    r.rules = rules ? &*rules : nullptr;
    r.word_vectors = vectors ? &*vectors : nullptr;
    r.concept_embeddings = concept_embeddings ? &*concept_embeddings : nullptr;
    r.opinion_embeddings = embeddings ? &*embeddings : nullptr;
    r.stopwords = stopwords ? &*stopwords : nullptr;
    return r;
  }
};

LoadedResources load_resources(const RunConfig& rc, const Dataset& dataset) {
  LoadedResources out;
  const auto& p = rc.resources;
  auto note = [&](const std::string& path) { out.inputs.push_back(path); };
  if (!p.lexicon.empty()) {
    out.lexicon = load_sentiment_lexicon(p.lexicon);
    note(p.lexicon);
  }
  if (!p.shifters.empty()) {
    out.shifters = load_shifters(p.shifters);
    note(p.shifters);
  }
  if (!p.gazetteer.empty()) {
    out.gazetteer = load_gazetteer(p.gazetteer);
    note(p.gazetteer);
  }
  if (rc.tagme.enabled && !out.gazetteer) {
    TagMeConfig config;
    config.endpoint = rc.tagme.endpoint;
    config.token = rc.tagme.token;
    config.cache_dir = rc.tagme.cache_dir;
    out.tagme = std::make_unique<TagMeClient>(std::move(config));
  }
  if (!p.conllu.empty()) {
    std::set<std::string> ids;
    for (const auto& opinion : dataset.opinions) ids.insert(opinion.id);
    out.parses = load_conllu(p.conllu, &ids);
    note(p.conllu);
  }
  if (!p.rules.empty()) {
    out.rules = load_rules(p.rules);
    note(p.rules);
  }
  if (!p.vectors.empty()) {
    out.vectors = load_word_vectors(p.vectors, p.vectors_format);
    note(p.vectors);
  }
  if (!p.concept_embeddings.empty()) {
    out.concept_embeddings = load_precomputed_embeddings(p.concept_embeddings);
    note(p.concept_embeddings);
  }
  if (!p.embeddings.empty()) {
    out.embeddings = load_precomputed_embeddings(p.embeddings);
    note(p.embeddings);
  }
  if (!p.stopwords.empty()) {
    out.stopwords = load_stopwords(p.stopwords);
    note(p.stopwords);
  }
  return out;
}

void require(bool present, std::string_view what, std::string_view flag) {
  if (!present) {
    throw ResourceError(std::string(what) + " needs --" + std::string(flag));
  }
}

void check_measure_resources(Measure measure, const LoadedResources& r) {
  const auto name = "measure " + std::string(to_string(measure));
  switch (measure) {
    case Measure::kOd:
      require(r.lexicon.has_value(), name, "resources.lexicon");
      require(r.gazetteer || r.tagme, name, "resources.gazetteer (or --tagme.enabled)");
      break;
    case Measure::kOdParse:
      require(r.lexicon.has_value(), name, "resources.lexicon");
      require(r.parses.has_value(), name, "resources.conllu");
      break;
    case Measure::kTfidf:
      break;
    case Measure::kTextWmd:
      require(r.vectors.has_value(), name, "resources.vectors");
      break;
    case Measure::kPrecomputedEmbedding:
      require(r.embeddings.has_value(), name, "resources.embeddings");
      break;
  }
}

// All files of a command are rendered in memory first and then written by
// this single writer, followed by the manifest.
class OutputSet {
 public:
  void add(std::string name, std::string content) {
    files_.emplace_back(std::move(name), std::move(content));
  }

  void write(const RunConfig& rc, const json& config, std::string_view command,
             const std::vector<std::string>& inputs) const {
    std::error_code ec;
    std::filesystem::create_directories(rc.output, ec);
    if (ec) throw ResourceError("cannot create " + rc.output.string());
    ordered_json manifest;
    manifest["command"] = command;
    manifest["config_hash"] = config_hash(config);
    manifest["config"] = config;
    manifest["inputs"] = ordered_json::array();
    for (const auto& path : inputs) {
      manifest["inputs"].push_back({{"path", path}, {"sha256", sha256_hex(read_file(path))}});
    }
    manifest["outputs"] = ordered_json::array();
    for (const auto& [name, content] : files_) {
      write_file(rc.output / name, content);
      manifest["outputs"].push_back({{"file", name}, {"sha256", sha256_hex(content)}});
    }
    write_file(rc.output / ("manifest." + std::string(command) + ".json"),
               manifest.dump(2) + "\n");
  }

 private:
  static void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content)) throw ResourceError("cannot write " + path.string());
  }

  std::vector<std::pair<std::string, std::string>> files_;
};

ordered_json representation_json(const OpinionRepresentation& rep) {
  ordered_json record;
  record["opinion_id"] = rep.opinion_id;
  record["subjects"] = ordered_json::array();
  for (const auto& s : rep.subjects) {
    ordered_json js;
    js["key"] = s.key;
    js["phrase"] = s.phrase;
    js["mode"] = to_string(s.polarity.mode);
    if (s.polarity.mode == PolarityMode::kDistribution) {
      const auto& d = s.polarity.distribution;
      js["polarity"] = {{"negative", d.negative},
                        {"neutral", d.neutral},
                        {"positive", d.positive}};
    } else {
      js["polarity"] = s.polarity.value;
    }
    js["mentions"] = ordered_json::array();
    for (const auto& m : s.mentions) {
      js["mentions"].push_back({{"sentence", m.sentence},
                                {"token_begin", m.token_begin},
                                {"token_end", m.token_end},
                                {"surface", m.surface}});
    }
    js["words"] = ordered_json::array();
    for (const auto& w : s.words) {
      js["words"].push_back({{"word", w.word},
                             {"sentence", w.sentence},
                             {"token", w.token},
                             {"score", w.score},
                             {"distance", w.distance},
                             {"shifted", w.shifted}});
    }
    record["subjects"].push_back(std::move(js));
  }
  return record;
}

std::string matrix_file(Measure measure) {
  return std::string(to_string(measure)) + ".tsv";
}

std::vector<DistanceMatrix> compute_matrices(const RunConfig& rc, const Dataset& dataset,
                                             const LoadedResources& loaded) {
  if (rc.measures.empty()) throw UsageError("measures must name at least one measure");
  for (const auto m : rc.measures) check_measure_resources(m, loaded);
  std::vector<DistanceMatrix> out;
  for (const auto m : rc.measures) {
    out.push_back(distance_matrix(dataset, m, loaded.view(), rc.distance));
  }
  return out;
}

std::size_t resolve_k(const RunConfig& rc, const Dataset& dataset, bool labeled) {
  if (rc.k > 0) return rc.k;
  if (labeled && !dataset.label_set.empty()) return dataset.label_set.size();
  if (dataset.size() == 0) return 0;
  throw UsageError("k is required when the dataset is not fully labeled");
}

int cmd_represent(const RunConfig& rc, const json& config, const Dataset& dataset,
                  const LoadedResources& loaded, std::ostream& out) {
  const Measure measure = rc.variant == Variant::kOd ? Measure::kOd : Measure::kOdParse;
  if (rc.variant == Variant::kOdParse) {
    require(loaded.lexicon.has_value(), "variant od-parse", "resources.lexicon");
    require(loaded.parses.has_value(), "variant od-parse", "resources.conllu");
  } else {
    check_measure_resources(measure, loaded);
  }
  std::string content;
  if (dataset.size() > 0) {
    for (const auto& rep : represent_dataset(dataset, rc.variant, loaded.view(), rc.distance)) {
      content += representation_json(rep).dump() + "\n";
    }
  }
  OutputSet files;
  files.add("representations.jsonl", std::move(content));
  files.write(rc, config, "represent", loaded.inputs);
  out << "wrote " << dataset.size() << " representations to "
      << (rc.output / "representations.jsonl").string() << '\n';
  return kExitOk;
}

int cmd_distance(const RunConfig& rc, const json& config, const Dataset& dataset,
                 const LoadedResources& loaded, std::ostream& out) {
  const auto matrices = compute_matrices(rc, dataset, loaded);
  OutputSet files;
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    std::ostringstream values;
    std::ostringstream mask;
    write_distance_matrix(matrices[i], values, mask);
    const auto name = matrix_file(rc.measures[i]);
    files.add(name, values.str());
    files.add(mask_path(name).string(), mask.str());
    out << to_string(rc.measures[i]) << ": " << matrices[i].size() << " opinions, "
        << matrices[i].undefined_pairs() << " undefined pairs\n";
  }
  files.write(rc, config, "distance", loaded.inputs);
  return kExitOk;
}

int cmd_cluster(const RunConfig& rc, const json& config, const Dataset& dataset,
                const LoadedResources& loaded, std::ostream& out) {
  const auto matrices = compute_matrices(rc, dataset, loaded);
  const std::size_t k = resolve_k(rc, dataset, dataset.fully_labeled());
  std::string content = "measure\talgorithm\topinion_id\tlabel\n";
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    if (matrices[i].size() == 0) continue;
    for (const auto algorithm : rc.algorithms) {
      const auto result = cluster(matrices[i], algorithm, k, rc.seed);
      for (std::size_t j = 0; j < dataset.size(); ++j) {
        content += std::string(to_string(rc.measures[i])) + "\t" +
                   std::string(to_string(algorithm)) + "\t" + dataset.opinions[j].id +
                   "\t" + std::to_string(result.labels[j]) + "\n";
      }
    }
  }
  OutputSet files;
  files.add("clusters.tsv", std::move(content));
  files.write(rc, config, "cluster", loaded.inputs);
  out << "clustered " << dataset.size() << " opinions into k=" << k << '\n';
  return kExitOk;
}

int cmd_evaluate(const RunConfig& rc, const json& config, const Dataset& dataset,
                 const LoadedResources& loaded, std::ostream& out) {
  const auto matrices = compute_matrices(rc, dataset, loaded);
  const bool labeled = dataset.size() > 0 && dataset.fully_labeled();
  EvaluationReport report;
  report.dataset = dataset.name;
  report.k = resolve_k(rc, dataset, labeled);
  report.seed = rc.seed;
  report.labeled = labeled;
  const std::vector<int> truth = labeled ? dataset.label_ids() : std::vector<int>{};

  EvaluateOptions options;
  options.algorithms = rc.algorithms;
  options.supervised = rc.supervised;
  options.supervised_options.features = rc.pair_features;
  Eigen::MatrixXd tfidf;
  if (rc.supervised_tfidf) {
    const auto& stopwords = loaded.stopwords ? *loaded.stopwords : default_stopwords();
    tfidf = tfidf_rows(TfidfModel::fit(dataset, stopwords));
    options.extra_features = &tfidf;
  }
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    auto measure = evaluate_measure(std::string(to_string(rc.measures[i])), matrices[i],
                                    truth, report.k, rc.seed, options);
    if (!labeled && dataset.size() > 0) {
      measure.notes.push_back("labels missing: ARI, NMI, D and F1 not computed");
    }
    report.measures.push_back(std::move(measure));
  }
  const auto text = report_to_text(report);
  OutputSet files;
  files.add("evaluation.json", report_to_json(report));
  files.add("evaluation.txt", text);
  files.write(rc, config, "evaluate", loaded.inputs);
  out << text;
  return kExitOk;
}

int cmd_report(const RunConfig& rc, const json& config, const Dataset& dataset,
               const LoadedResources& loaded, std::ostream& out) {
  const auto matrices = compute_matrices(rc, dataset, loaded);
  std::vector<std::string> names;
  for (const auto m : rc.measures) names.emplace_back(to_string(m));
  const auto blocks = neighbor_report(names, matrices, rc.neighbors);
  const auto text = neighbors_to_text(blocks);
  OutputSet files;
  files.add("neighbors.txt", text);
  files.add("neighbors.json", neighbors_to_json(blocks));
  files.write(rc, config, "report", loaded.inputs);
  out << text;
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Opinion distance toolkit", "opdist"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);

  const json defaults = default_config();
  std::map<std::string, std::string> overrides;
  for (const auto& [name, value] : config_leaves(defaults)) {
    auto* option = app.add_option_function<std::string>(
        "--" + name,
        [&overrides, key = name](const std::string& v) { overrides[key] = v; },
        "default: " + value.dump());
    option->type_name(value.is_array() ? "LIST" : value.is_boolean() ? "BOOL" : "VALUE");
    option->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  }
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"represent", "Write subject representations (JSON lines)"},
      {"distance", "Write all-pairs distance matrices and masks"},
      {"cluster", "Cluster opinions under every measure"},
      {"evaluate", "Score clusterings and the supervised protocol"},
      {"report", "Nearest and farthest neighbors per opinion"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    json config = defaults;
    if (!config_path.empty()) {
      json file;
      try {
        file = json::parse(read_file(config_path));
      } catch (const json::exception& e) {
        throw UsageError("config " + config_path + ": " + e.what());
      }
      merge_config(config, file);
    }
    for (const auto& [name, value] : overrides) set_field(config, name, value);
    const RunConfig rc = parse_run_config(config);
    if (rc.dataset_path.empty()) throw UsageError("--dataset.path is required");

    const Dataset dataset = load_opinions(rc.dataset_path, rc.dataset_format);
    LoadedResources loaded = load_resources(rc, dataset);
    loaded.inputs.insert(loaded.inputs.begin(), rc.dataset_path.string());

    if (command == "represent") return cmd_represent(rc, config, dataset, loaded, out);
    if (command == "distance") return cmd_distance(rc, config, dataset, loaded, out);
    if (command == "cluster") return cmd_cluster(rc, config, dataset, loaded, out);
    if (command == "evaluate") return cmd_evaluate(rc, config, dataset, loaded, out);
    return cmd_report(rc, config, dataset, loaded, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::exception& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace opdist::cli

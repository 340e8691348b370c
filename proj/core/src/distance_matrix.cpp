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

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <functional>
#include <istream>
#include <mutex>
#include <ostream>
#include <thread>

#include "opdist/distance.hpp"
#include "opdist/error.hpp"
#include "opdist/tagme.hpp"
#include "opdist/text_util.hpp"

namespace opdist {
namespace {

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Fills the upper triangle in parallel; every pair writes its own cells, so
// the result does not depend on scheduling.
void fill_pairs(DistanceMatrix& matrix, unsigned threads,
                const std::function<std::optional<double>(std::size_t, std::size_t)>&
                    compute) {
  const std::size_t n = matrix.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < pairs.size(); k = next++) {
      const auto [i, j] = pairs[k];
      try {
        const auto value = compute(i, j);
        const auto r = static_cast<Eigen::Index>(i);
        const auto c = static_cast<Eigen::Index>(j);
        const double v = value ? std::clamp(*value, 0.0, 1.0) : kImputedDistance;
        matrix.values(r, c) = matrix.values(c, r) = v;
        matrix.undefined(r, c) = matrix.undefined(c, r) = !value.has_value();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = pairs.size();
      }
    }
  };
  const unsigned count =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), pairs.size()));
  if (count <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

const SentimentLexicon& require_lexicon(const Resources& resources) {
  if (resources.lexicon == nullptr) {
    throw ResourceError("a sentiment lexicon is required (resources.lexicon)");
  }
  return *resources.lexicon;
}

std::vector<std::string> opinion_ids(const Dataset& dataset) {
  std::vector<std::string> ids;
  ids.reserve(dataset.size());
  for (const auto& opinion : dataset.opinions) ids.push_back(opinion.id);
  return ids;
}

std::vector<std::string> header_fields(const std::string& line) {
  std::vector<std::string> out;
  for (const auto f : split(line, '\t')) out.emplace_back(f);
  return out;
}

}  // namespace

std::optional<Measure> parse_measure(std::string_view name) {
  if (name == "od") return Measure::kOd;
  if (name == "od-parse") return Measure::kOdParse;
  if (name == "tfidf") return Measure::kTfidf;
  if (name == "text-wmd") return Measure::kTextWmd;
  if (name == "precomputed-embedding") return Measure::kPrecomputedEmbedding;
  return std::nullopt;
}

std::string_view to_string(Measure measure) {
  switch (measure) {
    case Measure::kOd: return "od";
    case Measure::kOdParse: return "od-parse";
    case Measure::kTfidf: return "tfidf";
    case Measure::kTextWmd: return "text-wmd";
    case Measure::kPrecomputedEmbedding: return "precomputed-embedding";
  }
  return "od";
}

std::size_t DistanceMatrix::undefined_pairs() const {
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < undefined.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < undefined.cols(); ++j) count += undefined(i, j);
  }
  return count;
}

DistanceMatrix make_distance_matrix(std::vector<std::string> ids) {
  DistanceMatrix m;
  const auto n = static_cast<Eigen::Index>(ids.size());
  m.ids = std::move(ids);
  m.values = Eigen::MatrixXd::Zero(n, n);
  m.undefined = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n, false);
  return m;
}

void write_distance_matrix(const DistanceMatrix& matrix, std::ostream& values,
                           std::ostream& mask) {
  values << "id";
  mask << "id";
  for (const auto& id : matrix.ids) {
    values << '\t' << id;
    mask << '\t' << id;
  }
  values << '\n';
  mask << '\n';
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    values << matrix.ids[i];
    mask << matrix.ids[i];
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      const auto r = static_cast<Eigen::Index>(i);
      const auto c = static_cast<Eigen::Index>(j);
      values << '\t' << format_double(matrix.values(r, c));
      mask << '\t' << (matrix.undefined(r, c) ? '1' : '0');
    }
    values << '\n';
    mask << '\n';
  }
}

DistanceMatrix read_distance_matrix(std::istream& values, std::istream* mask) {
  std::string line;
  if (!std::getline(values, line)) throw DataError("distance matrix: empty input");
  auto header = header_fields(line);
  if (header.empty() || header.front() != "id") {
    throw DataError("distance matrix: header must start with \"id\"");
  }
  header.erase(header.begin());
  DistanceMatrix m = make_distance_matrix(header);
  const auto n = static_cast<Eigen::Index>(m.size());
  auto read_rows = [&](std::istream& in, bool is_mask) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!std::getline(in, line)) {
        throw DataError("distance matrix: expected " + std::to_string(n) + " rows");
      }
      const auto fields = split(line, '\t');
      const auto where = "distance matrix row " + std::to_string(i + 1) + ": ";
      if (static_cast<Eigen::Index>(fields.size()) != n + 1 ||
          fields[0] != m.ids[static_cast<std::size_t>(i)]) {
        throw DataError(where + "malformed row");
      }
      for (Eigen::Index j = 0; j < n; ++j) {
        const auto field = fields[static_cast<std::size_t>(j + 1)];
        if (is_mask) {
          if (field != "0" && field != "1") throw DataError(where + "mask must be 0/1");
          m.undefined(i, j) = field == "1";
        } else {
          const auto v = parse_double(field);
          if (!v) throw DataError(where + "malformed value");
          m.values(i, j) = *v;
        }
      }
    }
  };
  read_rows(values, false);
  if (mask != nullptr) {
    if (!std::getline(*mask, line) || line != [&] {
          std::string h = "id";
          for (const auto& id : m.ids) h += "\t" + id;
          return h;
        }()) {
      throw DataError("distance mask: header does not match the matrix");
    }
    read_rows(*mask, true);
  }
  return m;
}

std::filesystem::path mask_path(const std::filesystem::path& path) {
  auto out = path;
  out.replace_extension(".mask.tsv");
  return out;
}

void save_distance_matrix(const DistanceMatrix& matrix,
                          const std::filesystem::path& path) {
  std::ofstream values(path, std::ios::binary);
  std::ofstream mask(mask_path(path), std::ios::binary);
  if (!values || !mask) throw ResourceError("cannot write " + path.string());
  write_distance_matrix(matrix, values, mask);
}

DistanceMatrix load_distance_matrix(const std::filesystem::path& path) {
  std::ifstream values(path);
  if (!values) throw ResourceError("cannot open distance matrix: " + path.string());
  std::ifstream mask(mask_path(path));
  try {
    return read_distance_matrix(values, mask ? &mask : nullptr);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void validate(const DistanceConfig& config) {
  const bool distribution = config.represent.mode == PolarityMode::kDistribution;
  if (config.fn == DifferenceKind::kAbs && distribution) {
    throw UsageError("fn=abs needs polarity=discrete or continuous");
  }
  if (config.fn != DifferenceKind::kAbs && !distribution) {
    throw UsageError("fn=" + std::string(to_string(config.fn)) +
                     " needs polarity=distribution");
  }
  if (!(config.tau >= 0.0 && config.tau <= 1.0)) {
    throw UsageError("tau must lie in [0, 1]");
  }
  if (!(config.lp_threshold >= 0.0 && config.lp_threshold <= 1.0)) {
    throw UsageError("lp_threshold must lie in [0, 1]");
  }
}

std::vector<OpinionRepresentation> represent_dataset(
    const Dataset& dataset, Variant variant, const Resources& resources,
    const DistanceConfig& config) {
  validate(config);
  const auto& lexicon = require_lexicon(resources);
  std::vector<OpinionRepresentation> out;
  out.reserve(dataset.size());
  if (variant == Variant::kOdParse) {
    if (resources.parses == nullptr) {
      throw ResourceError("od-parse needs dependency parses (resources.conllu)");
    }
    const auto rules =
        resources.rules != nullptr ? *resources.rules : default_rules();
    for (const auto& opinion : dataset.opinions) {
      const auto it = resources.parses->find(opinion.id);
      const std::span<const ParsedSentence> sentences =
          it == resources.parses->end() ? std::span<const ParsedSentence>()
                                        : std::span<const ParsedSentence>(it->second);
      out.push_back(represent_opinion_parse(opinion.id, sentences, rules, lexicon,
                                            config.represent));
    }
    return out;
  }

  const ShifterSet fallback = resources.shifters ? ShifterSet() : default_shifters();
  const ShifterSet& shifters = resources.shifters ? *resources.shifters : fallback;
  std::vector<std::vector<OpinionSubject>> subjects;
  if (resources.gazetteer != nullptr) {
    for (const auto& opinion : dataset.opinions) {
      subjects.push_back(spot(*resources.gazetteer, opinion, config.lp_threshold));
    }
  } else if (resources.tagme != nullptr) {
    std::vector<std::string> texts;
    for (const auto& opinion : dataset.opinions) texts.push_back(opinion.text);
    auto annotations = resources.tagme->annotate_batch(texts);
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      for (auto& mention : annotations[i]) mention.opinion_id = dataset.opinions[i].id;
      subjects.push_back(group_mentions(
          align_mentions(dataset.opinions[i], std::move(annotations[i])),
          config.lp_threshold));
    }
  } else {
    throw ResourceError("od needs a gazetteer (resources.gazetteer) or TagMe");
  }
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    out.push_back(represent_opinion(dataset.opinions[i], subjects[i], lexicon,
                                    shifters, config.represent));
  }
  return out;
}

DistanceMatrix od_distance_matrix(
    const std::vector<OpinionRepresentation>& representations,
    const SubjectEmbedder& embedder, const DistanceConfig& config) {
  validate(config);
  std::vector<std::string> ids;
  std::vector<SubjectEmbeddings> embeddings;
  for (const auto& rep : representations) {
    ids.push_back(rep.opinion_id);
    embeddings.push_back(embed_subjects(rep, embedder));
  }
  DistanceMatrix matrix = make_distance_matrix(std::move(ids));
  fill_pairs(matrix, config.threads, [&](std::size_t i, std::size_t j) {
    return opinion_distance_detail(representations[i], embeddings[i],
                                   representations[j], embeddings[j], config.fn,
                                   config.tau)
        .value;
  });
  return matrix;
}

DistanceMatrix distance_matrix(const Dataset& dataset, Measure measure,
                               const Resources& resources,
                               const DistanceConfig& config) {
  validate(config);
  const StopwordSet& stopwords =
      resources.stopwords ? *resources.stopwords : default_stopwords();
  switch (measure) {
    case Measure::kOd:
    case Measure::kOdParse: {
      const auto variant = measure == Measure::kOd ? Variant::kOd : Variant::kOdParse;
      const auto reps = represent_dataset(dataset, variant, resources, config);
      const SubjectEmbedder embedder(resources.word_vectors,
                                     resources.concept_embeddings);
      return od_distance_matrix(reps, embedder, config);
    }
    case Measure::kTfidf: {
      const auto model = TfidfModel::fit(dataset, stopwords);
      DistanceMatrix matrix = make_distance_matrix(opinion_ids(dataset));
      fill_pairs(matrix, config.threads, [&](std::size_t i, std::size_t j) {
        return std::optional<double>(model.cosine_distance(i, j));
      });
      return matrix;
    }
    case Measure::kTextWmd: {
      if (resources.word_vectors == nullptr) {
        throw ResourceError("text-wmd needs word vectors (resources.vectors)");
      }
      DistanceMatrix matrix = make_distance_matrix(opinion_ids(dataset));
      fill_pairs(matrix, config.threads, [&](std::size_t i, std::size_t j) {
        return text_wmd(dataset.opinions[i], dataset.opinions[j],
                        *resources.word_vectors, stopwords);
      });
      return matrix;
    }
    case Measure::kPrecomputedEmbedding: {
      if (resources.opinion_embeddings == nullptr) {
        throw ResourceError(
            "precomputed-embedding needs an embedding table "
            "(resources.embeddings)");
      }
      std::vector<std::span<const float>> vectors;
      for (const auto& opinion : dataset.opinions) {
        const auto v = resources.opinion_embeddings->find(opinion.id);
        if (!v) throw DataError("no precomputed embedding for opinion " + opinion.id);
        vectors.push_back(*v);
      }
      DistanceMatrix matrix = make_distance_matrix(opinion_ids(dataset));
      fill_pairs(matrix, config.threads,
                 [&](std::size_t i, std::size_t j) -> std::optional<double> {
                   const auto zero = [](std::span<const float> v) {
                     return std::all_of(v.begin(), v.end(),
                                        [](float x) { return x == 0.0f; });
                   };
                   if (zero(vectors[i]) || zero(vectors[j])) return std::nullopt;
                   return semantic_distance(vectors[i], vectors[j]);
                 });
      return matrix;
    }
  }
  throw UsageError("unknown measure");
}

}  // namespace opdist

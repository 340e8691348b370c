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

#include "opdist/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_set>
#include <utility>

#include <nlohmann/json.hpp>

#include "opdist/error.hpp"
#include "opdist/text_util.hpp"

namespace opdist {
namespace {

using nlohmann::json;

[[noreturn]] void fail_line(std::size_t line, const std::string& message) {
  throw DataError("line " + std::to_string(line) + ": " + message);
}

std::string tsv_escape(std::string_view field) {
  std::string out;
  for (const char c : field) {
    switch (c) {
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\\': out += "\\\\"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string tsv_unescape(std::string_view field) {
  std::string out;
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field[i] == '\\' && i + 1 < field.size()) {
      const char next = field[i + 1];
      if (next == 't' || next == 'n' || next == 'r' || next == '\\') {
        out.push_back(next == 't' ? '\t' : next == 'n' ? '\n'
                                         : next == 'r' ? '\r' : '\\');
        ++i;
        continue;
      }
    }
    out.push_back(field[i]);
  }
  return out;
}

Opinion parse_jsonl_record(std::string_view line, std::size_t line_no) {
  json record;
  try {
    record = json::parse(line);
  } catch (const json::parse_error& e) {
    fail_line(line_no, std::string("malformed JSON: ") + e.what());
  }
  if (!record.is_object()) fail_line(line_no, "record is not a JSON object");
  const auto id = record.find("id");
  if (id == record.end() || !id->is_string()) {
    fail_line(line_no, "missing string field \"id\"");
  }
  const auto text = record.find("text");
  if (text == record.end() || !text->is_string()) {
    fail_line(line_no, "missing string field \"text\"");
  }
  std::optional<std::string> label;
  if (const auto it = record.find("label"); it != record.end()) {
    if (it->is_string()) {
      label = it->get<std::string>();
    } else if (!it->is_null()) {
      fail_line(line_no, "field \"label\" must be a string or null");
    }
  }
  return make_opinion(id->get<std::string>(), text->get<std::string>(),
                      std::move(label));
}

}  // namespace

bool Dataset::fully_labeled() const {
  for (const auto& opinion : opinions) {
    if (!opinion.label) return false;
  }
  return true;
}

std::vector<int> Dataset::label_ids() const {
  std::vector<int> ids;
  ids.reserve(opinions.size());
  for (const auto& opinion : opinions) {
    if (!opinion.label) {
      ids.push_back(-1);
      continue;
    }
    const auto it = label_set.find(*opinion.label);
    ids.push_back(static_cast<int>(std::distance(label_set.begin(), it)));
  }
  return ids;
}

std::optional<CorpusFormat> parse_corpus_format(std::string_view name) {
  if (name == "jsonl") return CorpusFormat::kJsonl;
  if (name == "tsv") return CorpusFormat::kTsv;
  return std::nullopt;
}

Opinion make_opinion(std::string id, std::string text,
                     std::optional<std::string> label) {
  Opinion opinion;
  opinion.id = std::move(id);
  opinion.text = std::move(text);
  opinion.label = std::move(label);
  opinion.sentences = tokenize(opinion.text);
  return opinion;
}

Dataset make_dataset(std::string name, std::vector<Opinion> opinions) {
  Dataset dataset;
  dataset.name = std::move(name);
  std::unordered_set<std::string> seen;
  for (const auto& opinion : opinions) {
    if (!seen.insert(opinion.id).second) {
      throw DataError("duplicate opinion id: " + opinion.id);
    }
    if (opinion.label) dataset.label_set.insert(*opinion.label);
  }
  dataset.opinions = std::move(opinions);
  return dataset;
}

Dataset read_opinions(std::istream& in, CorpusFormat format,
                      std::string name) {
  std::vector<Opinion> opinions;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> col_id, col_label, col_text;
  std::size_t columns = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!is_valid_utf8(line)) fail_line(line_no, "invalid UTF-8");
    if (trim(line).empty()) continue;

    Opinion opinion;
    if (format == CorpusFormat::kJsonl) {
      opinion = parse_jsonl_record(line, line_no);
    } else {
      const auto fields = split(line, '\t');
      if (!col_id) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
          const auto field = trim(fields[i]);
          if (field == "id") col_id = i;
          if (field == "label") col_label = i;
          if (field == "text") col_text = i;
        }
        if (!col_id || !col_label || !col_text) {
          fail_line(line_no, "TSV header must name columns id, label, text");
        }
        columns = fields.size();
        continue;
      }
      if (fields.size() != columns) {
        fail_line(line_no, "expected " + std::to_string(columns) +
                               " tab-separated fields, got " +
                               std::to_string(fields.size()));
      }
      const std::string label = tsv_unescape(fields[*col_label]);
      opinion = make_opinion(
          tsv_unescape(fields[*col_id]), tsv_unescape(fields[*col_text]),
          label.empty() ? std::nullopt : std::optional<std::string>(label));
    }
    if (opinion.id.empty()) fail_line(line_no, "empty opinion id");
    if (!seen.insert(opinion.id).second) {
      fail_line(line_no, "duplicate opinion id \"" + opinion.id + "\"");
    }
    opinions.push_back(std::move(opinion));
  }
  return make_dataset(std::move(name), std::move(opinions));
}

Dataset load_opinions(const std::filesystem::path& path, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open corpus file: " + path.string());
  try {
    return read_opinions(in, format, path.stem().string());
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_opinions(const Dataset& dataset, std::ostream& out,
                    CorpusFormat format) {
  if (format == CorpusFormat::kJsonl) {
    for (const auto& opinion : dataset.opinions) {
      json record = {{"id", opinion.id}, {"text", opinion.text}};
      record["label"] = opinion.label ? json(*opinion.label) : json(nullptr);
      out << record.dump() << '\n';
    }
    return;
  }
  out << "id\tlabel\ttext\n";
  for (const auto& opinion : dataset.opinions) {
    out << tsv_escape(opinion.id) << '\t'
        << tsv_escape(opinion.label.value_or("")) << '\t'
        << tsv_escape(opinion.text) << '\n';
  }
}

}  // namespace opdist

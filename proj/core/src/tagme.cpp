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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "opdist/tagme.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "opdist/error.hpp"
#include "opdist/text_util.hpp"

namespace opdist {
namespace {

using nlohmann::json;

std::string read_cache(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return {};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_cache(const std::filesystem::path& file, const std::string& body) {
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  // Write-then-rename: concurrent writers of the same key race benignly,
  // last rename wins and every candidate has identical content.
  std::ostringstream suffix;
  suffix << ".tmp." << std::this_thread::get_id();
  const auto tmp = file.string() + suffix.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    out << body;
  }
  std::filesystem::rename(tmp, file, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0x0F]);
  }
  return hex;
}

std::vector<SubjectMention> parse_tagme_response(std::string_view body) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("malformed TagMe response: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("annotations") ||
      !doc["annotations"].is_array()) {
    throw DataError("malformed TagMe response: missing \"annotations\" array");
  }
  std::vector<SubjectMention> mentions;
  for (const auto& annotation : doc["annotations"]) {
    if (!annotation.is_object()) {
      throw DataError("malformed TagMe response: annotation is not an object");
    }
    if (!annotation.contains("title")) continue;
    const auto spot = annotation.find("spot");
    const auto lp = annotation.find("link_probability");
    if (spot == annotation.end() || !spot->is_string() || lp == annotation.end() ||
        !lp->is_number() || !annotation["title"].is_string()) {
      throw DataError("malformed TagMe response: annotation fields");
    }
    SubjectMention mention;
    mention.surface = spot->get<std::string>();
    mention.concept_id = annotation["title"].get<std::string>();
    mention.link_probability = lp->get<double>();
    mention.char_begin = annotation.value("start", std::size_t{0});
    mention.char_end = annotation.value("end", mention.char_begin);
    mentions.push_back(std::move(mention));
  }
  return mentions;
}

TagMeClient::TagMeClient(TagMeConfig config) : config_(std::move(config)) {
  if (config_.max_attempts < 1) config_.max_attempts = 1;
  if (config_.max_in_flight < 1) config_.max_in_flight = 1;
}

std::string TagMeClient::fetch(std::string_view text) {
  httplib::Client client(config_.endpoint);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  const httplib::Params params = {{"gcube-token", config_.token},
                                  {"lang", config_.lang},
                                  {"text", std::string(text)}};
  std::string status = "no response";
  auto backoff = config_.initial_backoff;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    ++network_requests_;
    auto result = client.Get(config_.path, params, httplib::Headers{});
    if (result && result->status == 200) return result->body;
    status = result ? "HTTP " + std::to_string(result->status)
                    : "transport error: " + httplib::to_string(result.error());
    if (attempt < config_.max_attempts) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
  }
  throw ResourceError("TagMe request to " + config_.endpoint + config_.path +
                      " failed after " + std::to_string(config_.max_attempts) +
                      " attempts: " + status);
}

std::vector<SubjectMention> TagMeClient::annotate(std::string_view text) {
  std::filesystem::path cache_file;
  if (!config_.cache_dir.empty()) {
    cache_file = config_.cache_dir / (sha256_hex(text) + ".json");
    const std::string cached = read_cache(cache_file);
    if (!cached.empty()) return parse_tagme_response(cached);
  }
  const std::string body = fetch(text);
  auto mentions = parse_tagme_response(body);
  if (!cache_file.empty()) write_cache(cache_file, body);
  return mentions;
}

std::vector<std::vector<SubjectMention>> TagMeClient::annotate_batch(
    const std::vector<std::string>& texts) {
  std::vector<std::vector<SubjectMention>> results(texts.size());
  std::vector<std::exception_ptr> errors(texts.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (std::size_t i = next++; i < texts.size(); i = next++) {
      try {
        results[i] = annotate(texts[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min(config_.max_in_flight, texts.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
  return results;
}

std::vector<OpinionSubject> tagme_spot(TagMeClient& client,
                                       const Opinion& opinion,
                                       double lp_threshold) {
  auto mentions = align_mentions(opinion, client.annotate(opinion.text));
  return group_mentions(std::move(mentions), lp_threshold);
}

}  // namespace opdist

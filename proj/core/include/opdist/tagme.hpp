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

#ifndef OPDIST_TAGME_HPP_
#define OPDIST_TAGME_HPP_

#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "opdist/spotter.hpp"

namespace opdist {

struct TagMeConfig {
  // scheme://host[:port]; https requires OpenSSL support (always built in).
  std::string endpoint = "https://tagme.d4science.org";
  std::string path = "/tagme/tag";
  std::string token;
  std::string lang = "en";
  // Responses are cached here as <sha256(text)>.json; empty disables caching.
  std::filesystem::path cache_dir;
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::seconds timeout{30};
  std::size_t max_in_flight = 4;
};

// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

// Maps a TagMe JSON response to mentions carrying byte offsets and concept
// ids (page titles). Annotations without a title are skipped. Throws
// DataError on malformed JSON.
std::vector<SubjectMention> parse_tagme_response(std::string_view body);

// Client for the TagMe "tag" endpoint with an on-disk response cache, so
// that reruns over the same texts never touch the network.
class TagMeClient {
 public:
  explicit TagMeClient(TagMeConfig config);

  const TagMeConfig& config() const { return config_; }

  // Returns mentions for `text`. Non-200 responses are retried with
  // exponential backoff; the final failure throws ResourceError naming the
  // endpoint and status.
  std::vector<SubjectMention> annotate(std::string_view text);

  // Annotates texts concurrently with at most max_in_flight requests.
  // Results are in input order.
  std::vector<std::vector<SubjectMention>> annotate_batch(
      const std::vector<std::string>& texts);

  // Requests actually sent over the network (cache hits excluded).
  std::size_t network_requests() const { return network_requests_.load(); }

 private:
  std::string fetch(std::string_view text);

  TagMeConfig config_;
  std::atomic<std::size_t> network_requests_{0};
};

// Spots subjects for an opinion through TagMe: annotate, align to tokens,
// threshold and merge per concept.
std::vector<OpinionSubject> tagme_spot(
    TagMeClient& client, const Opinion& opinion,
    double lp_threshold = kDefaultLinkProbabilityThreshold);

}  // namespace opdist

#endif  // OPDIST_TAGME_HPP_

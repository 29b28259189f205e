// Copyright 2026 The Qgen Authors.
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

#ifndef QGEN_SERVICE_FAQ_SEARCH_H_
#define QGEN_SERVICE_FAQ_SEARCH_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qgen/common/paragraph.h"

namespace qgen::service {

// A published question with its answer paragraph.
struct FaqEntry {
  std::string item_id;
  std::string question;
  std::string paragraph;
  ArticleRef article_ref;
  std::string published_at;
  // Store sequence number of the publish event. Larger is more recent.
  uint64_t published_seq = 0;

  bool operator==(const FaqEntry&) const = default;
};

void to_json(nlohmann::json& j, const FaqEntry& e);

struct FaqSearchConfig {
  double jaccard_weight = 0.7;
  double trigram_weight = 0.3;
  double min_sim = 0.35;
  std::size_t top_k = 10;

  // Throws ConfigError on negative weights, weights not summing to 1, or
  // min_sim outside [0, 1].
  void Validate() const;
};

void to_json(nlohmann::json& j, const FaqSearchConfig& c);

struct FaqMatch {
  FaqEntry entry;
  double similarity = 0.0;
};

void to_json(nlohmann::json& j, const FaqMatch& m);

// Lowercased non-stopword word tokens joined by single spaces.
std::string NormalizeForSearch(std::string_view text);

// jaccard_weight * token-set Jaccard + trigram_weight * character-trigram
// cosine, both over normalized text. 0 when either side normalizes to
// nothing.
double FaqSimilarity(std::string_view query, std::string_view question,
                     const FaqSearchConfig& cfg = {});

// Entries with similarity >= min_sim, best first, ties by recency, at most
// top_k.
std::vector<FaqMatch> FaqSearch(std::string_view query,
                                const std::vector<FaqEntry>& corpus,
                                const FaqSearchConfig& cfg = {});

}  // namespace qgen::service

#endif  // QGEN_SERVICE_FAQ_SEARCH_H_

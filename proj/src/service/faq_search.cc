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

#include "qgen/service/faq_search.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "qgen/common/errors.h"
#include "qgen/text/tokenizer.h"

namespace qgen::service {
namespace {

using nlohmann::json;

std::set<std::string> TokenSet(const std::string& normalized) {
  std::set<std::string> out;
  std::size_t start = 0;
  while (start < normalized.size()) {
    auto end = normalized.find(' ', start);
    if (end == std::string::npos) end = normalized.size();
    out.insert(normalized.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

std::map<std::string, double> Trigrams(const std::string& s) {
  std::map<std::string, double> grams;
  if (s.size() < 3) {
    if (!s.empty()) grams[s] = 1.0;
    return grams;
  }
  for (std::size_t i = 0; i + 3 <= s.size(); ++i) grams[s.substr(i, 3)] += 1.0;
  return grams;
}

double Jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::size_t common = 0;
  for (const auto& t : a) common += b.count(t);
  std::size_t uni = a.size() + b.size() - common;
  return uni == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(uni);
}

double Cosine(const std::map<std::string, double>& a,
              const std::map<std::string, double>& b) {
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (const auto& [g, v] : a) {
    na += v * v;
    if (auto it = b.find(g); it != b.end()) dot += v * it->second;
  }
  for (const auto& [g, v] : b) nb += v * v;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / std::sqrt(na * nb);
}

}  // namespace

void to_json(json& j, const FaqEntry& e) {
  j = json{{"item_id", e.item_id},
           {"question", e.question},
           {"paragraph", e.paragraph},
           {"article_ref", e.article_ref},
           {"published_at", e.published_at},
           {"published_seq", e.published_seq}};
}

void FaqSearchConfig::Validate() const {
  if (jaccard_weight < 0.0 || trigram_weight < 0.0 ||
      std::abs(jaccard_weight + trigram_weight - 1.0) > 1e-9) {
    throw ConfigError("faq weights must be non-negative and sum to 1");
  }
  if (!(min_sim >= 0.0 && min_sim <= 1.0)) {
    throw ConfigError("faq min_sim must be in [0, 1]");
  }
}

void to_json(json& j, const FaqSearchConfig& c) {
  j = json{{"jaccard_weight", c.jaccard_weight},
           {"trigram_weight", c.trigram_weight},
           {"min_sim", c.min_sim},
           {"top_k", c.top_k}};
}

void to_json(json& j, const FaqMatch& m) {
  j = m.entry;
  j["similarity"] = m.similarity;
}

std::string NormalizeForSearch(std::string_view text) {
  std::string out;
  for (const auto& token : text::Tokenize(text)) {
    if (token.is_stopword) continue;
    if (!out.empty()) out.push_back(' ');
    out += token.normalized;
  }
  return out;
}

double FaqSimilarity(std::string_view query, std::string_view question,
                     const FaqSearchConfig& cfg) {
  std::string q = NormalizeForSearch(query);
  std::string d = NormalizeForSearch(question);
  if (q.empty() || d.empty()) return 0.0;
  return cfg.jaccard_weight * Jaccard(TokenSet(q), TokenSet(d)) +
         cfg.trigram_weight * Cosine(Trigrams(q), Trigrams(d));
}

std::vector<FaqMatch> FaqSearch(std::string_view query,
                                const std::vector<FaqEntry>& corpus,
                                const FaqSearchConfig& cfg) {
  std::vector<FaqMatch> matches;
  if (NormalizeForSearch(query).empty()) return matches;
  for (const auto& entry : corpus) {
    double sim = FaqSimilarity(query, entry.question, cfg);
    if (sim >= cfg.min_sim) matches.push_back({entry, sim});
  }
  std::sort(matches.begin(), matches.end(), [](const FaqMatch& a, const FaqMatch& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    if (a.entry.published_seq != b.entry.published_seq) {
      return a.entry.published_seq > b.entry.published_seq;
    }
    return a.entry.item_id < b.entry.item_id;
  });
  if (matches.size() > cfg.top_k) matches.resize(cfg.top_k);
  return matches;
}

}  // namespace qgen::service

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

#include "qgen/text/keyphrase.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "qgen/common/errors.h"
#include "qgen/text/similarity.h"

namespace qgen::text {
namespace {

bool HasLetter(std::string_view s) {
  for (unsigned char c : s) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80) {
      return true;
    }
  }
  return false;
}

double Median(std::vector<std::size_t> values) {
  std::sort(values.begin(), values.end());
  std::size_t n = values.size();
  if (n % 2 == 1) return static_cast<double>(values[n / 2]);
  return (static_cast<double>(values[n / 2 - 1]) +
          static_cast<double>(values[n / 2])) /
         2.0;
}

}  // namespace

bool IsUsableTerm(const Token& token) {
  return !token.is_stopword && HasLetter(token.normalized);
}

TermStatsMap TermStatistics(const std::vector<Token>& tokens,
                            std::size_t window) {
  if (window == 0) window = 1;
  TermStatsMap stats;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& tok = tokens[i];
    if (!IsUsableTerm(tok)) continue;
    TermStats& ts = stats[tok.normalized];
    ts.term = tok.normalized;
    ++ts.tf;
    bool sentence_initial =
        i == 0 || tokens[i - 1].sentence_index != tok.sentence_index;
    if (tok.is_acronym) {
      ++ts.tf_acronym;
      ++ts.tf_upper;
    } else if (tok.is_uppercase_initial && !sentence_initial) {
      ++ts.tf_upper;
    }
    if (ts.positions.empty() || ts.positions.back() != tok.sentence_index) {
      ++ts.sentence_spread;
    }
    ts.positions.push_back(tok.sentence_index);
    for (std::size_t d = 1; d <= window && d <= i; ++d) {
      const Token& left = tokens[i - d];
      if (left.sentence_index != tok.sentence_index) break;
      if (IsUsableTerm(left)) ++ts.cooccurrence_left[left.normalized];
    }
    for (std::size_t d = 1; d <= window && i + d < tokens.size(); ++d) {
      const Token& right = tokens[i + d];
      if (right.sentence_index != tok.sentence_index) break;
      if (IsUsableTerm(right)) ++ts.cooccurrence_right[right.normalized];
    }
  }
  return stats;
}

DocStats ComputeDocStats(const TermStatsMap& stats,
                         const std::vector<Token>& tokens) {
  DocStats doc;
  doc.total_sentences = tokens.empty() ? 0 : tokens.back().sentence_index + 1;
  if (stats.empty()) return doc;
  double sum = 0.0;
  for (const auto& [term, ts] : stats) {
    sum += static_cast<double>(ts.tf);
    doc.max_tf = std::max(doc.max_tf, ts.tf);
  }
  doc.mean_tf = sum / static_cast<double>(stats.size());
  double sq = 0.0;
  for (const auto& [term, ts] : stats) {
    double d = static_cast<double>(ts.tf) - doc.mean_tf;
    sq += d * d;
  }
  doc.stddev_tf = std::sqrt(sq / static_cast<double>(stats.size()));
  return doc;
}

std::map<std::string, double> ScoreTerms(const TermStatsMap& stats,
                                         const DocStats& doc) {
  std::map<std::string, double> scores;
  const double total_sentences =
      static_cast<double>(std::max<std::size_t>(doc.total_sentences, 1));
  const double max_tf = static_cast<double>(std::max<std::size_t>(doc.max_tf, 1));
  for (const auto& [term, ts] : stats) {
    const double tf = static_cast<double>(ts.tf);
    const double t_case =
        static_cast<double>(std::max(ts.tf_upper, ts.tf_acronym)) /
        (1.0 + std::log(tf));
    const double t_pos = std::log(std::log(3.0 + Median(ts.positions)));
    const double t_tfnorm = tf / (doc.mean_tf + doc.stddev_tf);
    const double t_rel =
        1.0 + (static_cast<double>(ts.cooccurrence_left.size()) / tf +
               static_cast<double>(ts.cooccurrence_right.size()) / tf) *
                  (tf / max_tf);
    const double t_spread =
        static_cast<double>(ts.sentence_spread) / total_sentences;
    scores[term] =
        (t_rel * t_pos) / (t_case + t_tfnorm / t_rel + t_spread / t_rel);
  }
  return scores;
}

std::vector<Keyphrase> ScoreCandidates(std::string_view text,
                                       std::size_t max_ngram,
                                       std::size_t window) {
  const std::vector<Token> tokens = Tokenize(text);
  if (tokens.empty() || max_ngram == 0) return {};
  const TermStatsMap stats = TermStatistics(tokens, window);
  if (stats.empty()) return {};
  const std::map<std::string, double> term_scores =
      ScoreTerms(stats, ComputeDocStats(stats, tokens));

  // Collect n-grams, keyed by normalized form, remembering the first
  // occurrence.
  std::unordered_map<std::string, std::size_t> index;
  std::vector<Keyphrase> candidates;
  std::vector<std::size_t> first_token;
  for (std::size_t begin = 0; begin < tokens.size(); ++begin) {
    if (!IsUsableTerm(tokens[begin])) continue;
    std::string normalized;
    for (std::size_t len = 1; len <= max_ngram; ++len) {
      std::size_t last = begin + len - 1;
      if (last >= tokens.size() ||
          tokens[last].chunk_index != tokens[begin].chunk_index) {
        break;
      }
      if (len > 1) normalized.push_back(' ');
      normalized += tokens[last].normalized;
      if (!IsUsableTerm(tokens[last])) continue;
      auto [it, inserted] = index.emplace(normalized, candidates.size());
      if (inserted) {
        Keyphrase kp;
        kp.normalized = normalized;
        kp.ngram_len = len;
        kp.offset = tokens[begin].offset;
        kp.length = tokens[last].offset + tokens[last].length - kp.offset;
        kp.phrase = std::string(text.substr(kp.offset, kp.length));
        candidates.push_back(std::move(kp));
        first_token.push_back(begin);
      }
      ++candidates[it->second].tf;
    }
  }

  for (std::size_t c = 0; c < candidates.size(); ++c) {
    Keyphrase& kp = candidates[c];
    double product = 1.0;
    double sum = 0.0;
    for (std::size_t k = 0; k < kp.ngram_len; ++k) {
      const Token& tok = tokens[first_token[c] + k];
      if (!IsUsableTerm(tok)) continue;
      double s = term_scores.at(tok.normalized);
      product *= s;
      sum += s;
    }
    kp.score = product / (static_cast<double>(kp.tf) * (1.0 + sum));
  }

  std::sort(candidates.begin(), candidates.end(),
            [](const Keyphrase& a, const Keyphrase& b) {
              if (a.score != b.score) return a.score < b.score;
              return a.normalized < b.normalized;
            });
  return candidates;
}

std::vector<Keyphrase> ExtractKeyphrases(std::string_view text,
                                         const KeyphraseOptions& options) {
  if (options.max_ngram < 1) throw ConfigError("max_ngram must be >= 1");
  if (options.top_k < 1) throw ConfigError("top_k must be >= 1");
  if (!(options.dedup_threshold > 0.0 && options.dedup_threshold <= 1.0)) {
    throw ConfigError("dedup threshold must be in (0, 1]");
  }
  std::vector<Keyphrase> accepted;
  for (Keyphrase& kp : ScoreCandidates(text, options.max_ngram,
                                       options.window)) {
    if (accepted.size() >= options.top_k) break;
    bool duplicate = std::any_of(
        accepted.begin(), accepted.end(), [&](const Keyphrase& prev) {
          return LevenshteinSimilarity(prev.normalized, kp.normalized) >=
                 options.dedup_threshold;
        });
    if (!duplicate) accepted.push_back(std::move(kp));
  }
  return accepted;
}

}  // namespace qgen::text

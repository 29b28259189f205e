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

#ifndef QGEN_TEXT_KEYPHRASE_H_
#define QGEN_TEXT_KEYPHRASE_H_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qgen/text/tokenizer.h"

namespace qgen::text {

// Per-term statistics over one document. Only usable terms get an entry:
// stopwords and tokens without any letter are excluded.
struct TermStats {
  std::string term;
  std::size_t tf = 0;
  // Occurrences with an uppercase initial that is not sentence-initial, or
  // in acronym form. Always >= tf_acronym.
  std::size_t tf_upper = 0;
  std::size_t tf_acronym = 0;
  // Sentence index of every occurrence, in document order.
  std::vector<std::size_t> positions;
  // Usable neighbor terms within the window, never crossing a sentence
  // boundary. Stopwords take up window slots but are not recorded.
  // Multisets keyed by term.
  std::map<std::string, std::size_t> cooccurrence_left;
  std::map<std::string, std::size_t> cooccurrence_right;
  std::size_t sentence_spread = 0;
};

// Document-level aggregates the term score needs.
struct DocStats {
  std::size_t total_sentences = 0;
  double mean_tf = 0.0;
  // Population standard deviation of tf over usable terms.
  double stddev_tf = 0.0;
  std::size_t max_tf = 0;
};

using TermStatsMap = std::map<std::string, TermStats>;

// True if a token may be part of a term's statistics and may start or end a
// candidate phrase.
bool IsUsableTerm(const Token& token);

TermStatsMap TermStatistics(const std::vector<Token>& tokens,
                            std::size_t window = 2);

DocStats ComputeDocStats(const TermStatsMap& stats,
                         const std::vector<Token>& tokens);

// Per-term salience, lower is more salient:
//   Tcase   = max(tf_upper, tf_acronym) / (1 + ln tf)
//   Tpos    = ln(ln(3 + median sentence index))
//   TFnorm  = tf / (mean_tf + stddev_tf)
//   Trel    = 1 + (distinct_left / tf + distinct_right / tf) * (tf / max_tf)
//   Tspread = sentence_spread / total_sentences
//   S(t)    = Trel * Tpos / (Tcase + TFnorm / Trel + Tspread / Trel)
std::map<std::string, double> ScoreTerms(const TermStatsMap& stats,
                                         const DocStats& doc);

struct Keyphrase {
  // Verbatim text of the first occurrence.
  std::string phrase;
  // Case-folded tokens joined by single spaces. Identity of the candidate.
  std::string normalized;
  double score = 0.0;
  std::size_t ngram_len = 0;
  // Occurrences of the normalized n-gram in the document.
  std::size_t tf = 0;
  // Byte span of the first occurrence.
  std::size_t offset = 0;
  std::size_t length = 0;
};

struct KeyphraseOptions {
  std::size_t max_ngram = 3;
  std::size_t top_k = 10;
  double dedup_threshold = 0.9;
  std::size_t window = 2;
};

// Every candidate n-gram of the document with its score, sorted ascending
// by (score, normalized). A candidate is 1..max_ngram contiguous tokens of
// one sentence chunk that starts and ends with a usable term. Its score is
//   S(p) = prod S(t_i) / (tf(p) * (1 + sum S(t_i)))
// over the usable member terms.
std::vector<Keyphrase> ScoreCandidates(std::string_view text,
                                       std::size_t max_ngram = 3,
                                       std::size_t window = 2);

// Top keyphrases in ascending score order, greedily skipping any candidate
// whose normalized Levenshtein similarity to an accepted one reaches
// dedup_threshold. Throws ConfigError on invalid options.
std::vector<Keyphrase> ExtractKeyphrases(std::string_view text,
                                         const KeyphraseOptions& options = {});

}  // namespace qgen::text

#endif  // QGEN_TEXT_KEYPHRASE_H_

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

#ifndef QGEN_CODES_CONTROL_CODES_H_
#define QGEN_CODES_CONTROL_CODES_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qgen/backends/client.h"
#include "qgen/common/paragraph.h"

namespace qgen::codes {

enum class CodeSource { kKeyword, kSpan, kQuestionDerived, kManual };

std::string_view CodeSourceName(CodeSource source);

// A salient phrase the generator is conditioned on.
struct ControlCode {
  std::string phrase;
  CodeSource source = CodeSource::kKeyword;
  // Per-source normalization in [0, 1], higher is more salient. Not
  // comparable across sources.
  double salience = 0.0;
  // Byte span of the phrase in the source paragraph, when known.
  std::optional<std::pair<std::size_t, std::size_t>> origin_offsets;

  bool operator==(const ControlCode&) const = default;
};

void to_json(nlohmann::json& j, const ControlCode& code);
void from_json(const nlohmann::json& j, ControlCode& code);

struct CodeSelectionConfig {
  int max_codes = 5;
  int top_k_keywords = 3;
  int top_k_spans = 3;

  // Throws ConfigError on negative counts or max_codes < 1.
  void Validate() const;

  bool operator==(const CodeSelectionConfig&) const = default;
};

void to_json(nlohmann::json& j, const CodeSelectionConfig& c);

// Longest extracted span, in tokens.
inline constexpr std::size_t kMaxSpanTokens = 30;

// Spans from the extractor, sorted by descending probability, at most
// top_k. Spans longer than kMaxSpanTokens are cut at a token boundary and
// flagged. Backend errors propagate.
std::vector<backends::ExtractedSpan> SpansFromBackend(
    const Paragraph& paragraph, const backends::BackendClient& extractor,
    int top_k);

struct CodeSelection {
  std::vector<ControlCode> codes;
  // Set when the extractor failed and selection fell back to keywords.
  std::optional<std::string> extractor_error;
};

// Merges the top keyphrases of the paragraph with the top extractor spans.
//
// Keyword salience is 1 - rank / top_k_keywords; span salience is the
// extraction probability. Spans that do not occur in the paragraph are
// dropped. Two codes collide when one contains the other (case-insensitive)
// or their normalized Levenshtein similarity is >= 0.9. A collision between
// sources keeps the span; within one source the more salient entry stays.
// Survivors are interleaved span, keyword, span, ... and capped at
// max_codes. Without an extractor, or when it fails, only keywords are used.
//
// Throws InputError for an empty paragraph.
CodeSelection SelectControlCodes(const Paragraph& paragraph,
                                 const backends::BackendClient* extractor,
                                 const CodeSelectionConfig& config);

// Training-time code: the top trigram-or-shorter keyphrase of the question.
// Throws NoCodeExtractable when the question has no usable term.
ControlCode CodeFromQuestion(std::string_view question);

}  // namespace qgen::codes

#endif  // QGEN_CODES_CONTROL_CODES_H_

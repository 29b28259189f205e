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

#include "qgen/codes/control_codes.h"

#include <algorithm>
#include <string>

#include "qgen/common/errors.h"
#include "qgen/text/keyphrase.h"
#include "qgen/text/similarity.h"
#include "qgen/text/tokenizer.h"

namespace qgen::codes {
namespace {

using nlohmann::json;

constexpr double kCollisionSimilarity = 0.9;

bool IsBlank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  });
}

bool Collide(const ControlCode& a, const ControlCode& b) {
  std::string fa = text::FoldCase(a.phrase);
  std::string fb = text::FoldCase(b.phrase);
  if (fa.find(fb) != std::string::npos || fb.find(fa) != std::string::npos) {
    return true;
  }
  return text::LevenshteinSimilarity(fa, fb) >= kCollisionSimilarity;
}

// Locates a span in the paragraph: the backend offsets if they hold the
// text, else the first case-insensitive occurrence.
std::optional<std::pair<std::size_t, std::size_t>> LocateSpan(
    const std::string& paragraph, const std::string& folded_paragraph,
    const backends::ExtractedSpan& span) {
  const std::string folded = text::FoldCase(span.text);
  if (span.end <= paragraph.size() && span.end - span.start == span.text.size() &&
      folded_paragraph.compare(span.start, folded.size(), folded) == 0) {
    return std::make_pair(span.start, span.end);
  }
  auto pos = folded_paragraph.find(folded);
  if (pos == std::string::npos) return std::nullopt;
  return std::make_pair(pos, pos + folded.size());
}

}  // namespace

std::string_view CodeSourceName(CodeSource source) {
  switch (source) {
    case CodeSource::kKeyword:
      return "keyword";
    case CodeSource::kSpan:
      return "span";
    case CodeSource::kQuestionDerived:
      return "question_derived";
    case CodeSource::kManual:
      return "manual";
  }
  return "keyword";
}

void to_json(json& j, const ControlCode& code) {
  j = json{{"phrase", code.phrase},
           {"source", CodeSourceName(code.source)},
           {"salience", code.salience}};
  if (code.origin_offsets) {
    j["origin_offsets"] = {code.origin_offsets->first,
                           code.origin_offsets->second};
  }
}

void from_json(const json& j, ControlCode& code) {
  code.phrase = j.at("phrase").get<std::string>();
  std::string source = j.at("source").get<std::string>();
  bool known = false;
  for (CodeSource s : {CodeSource::kKeyword, CodeSource::kSpan,
                       CodeSource::kQuestionDerived, CodeSource::kManual}) {
    if (CodeSourceName(s) == source) {
      code.source = s;
      known = true;
    }
  }
  if (!known) throw InputError("unknown control code source \"" + source + "\"");
  code.salience = j.at("salience").get<double>();
  code.origin_offsets.reset();
  if (auto it = j.find("origin_offsets"); it != j.end() && it->is_array()) {
    code.origin_offsets = std::make_pair(it->at(0).get<std::size_t>(),
                                         it->at(1).get<std::size_t>());
  }
}

void CodeSelectionConfig::Validate() const {
  if (max_codes < 1) throw ConfigError("codes.max_codes must be >= 1");
  if (top_k_keywords < 0) throw ConfigError("codes.top_k_keywords must be >= 0");
  if (top_k_spans < 0) throw ConfigError("codes.top_k_spans must be >= 0");
}

void to_json(json& j, const CodeSelectionConfig& c) {
  j = json{{"max_codes", c.max_codes},
           {"top_k_keywords", c.top_k_keywords},
           {"top_k_spans", c.top_k_spans}};
}

std::vector<backends::ExtractedSpan> SpansFromBackend(
    const Paragraph& paragraph, const backends::BackendClient& extractor,
    int top_k) {
  if (top_k <= 0) return {};
  auto spans = extractor.ExtractSpans(paragraph.text, top_k);
  for (auto& span : spans) {
    auto tokens = text::Tokenize(span.text);
    if (tokens.size() <= kMaxSpanTokens) continue;
    const text::Token& last = tokens[kMaxSpanTokens - 1];
    std::size_t cut = last.offset + last.length;
    span.text.resize(cut);
    span.end = span.start + cut;
    span.truncated = true;
  }
  return spans;
}

CodeSelection SelectControlCodes(const Paragraph& paragraph,
                                 const backends::BackendClient* extractor,
                                 const CodeSelectionConfig& config) {
  config.Validate();
  if (IsBlank(paragraph.text)) {
    throw InputError("paragraph " + paragraph.id + " has no text");
  }
  CodeSelection selection;
  const std::string folded_paragraph = text::FoldCase(paragraph.text);

  std::vector<ControlCode> spans;
  if (extractor != nullptr && config.top_k_spans > 0) {
    try {
      for (const auto& span :
           SpansFromBackend(paragraph, *extractor, config.top_k_spans)) {
        if (IsBlank(span.text)) continue;
        auto where = LocateSpan(paragraph.text, folded_paragraph, span);
        if (!where) continue;
        spans.push_back({span.text, CodeSource::kSpan, span.probability, where});
      }
    } catch (const Error& e) {
      spans.clear();
      selection.extractor_error = e.what();
    }
  }

  std::vector<ControlCode> keywords;
  if (config.top_k_keywords > 0) {
    const auto k = static_cast<std::size_t>(config.top_k_keywords);
    auto phrases = text::ExtractKeyphrases(
        paragraph.text, {.max_ngram = 3, .top_k = k, .dedup_threshold = 0.9});
    for (std::size_t rank = 0; rank < phrases.size(); ++rank) {
      const auto& kp = phrases[rank];
      keywords.push_back(
          {kp.phrase, CodeSource::kKeyword,
           1.0 - static_cast<double>(rank) / static_cast<double>(k),
           std::make_pair(kp.offset, kp.offset + kp.length)});
    }
  }

  // Each source is deduplicated on its own before spans shadow keywords, so
  // the keyword survivors never depend on what the extractor returned.
  auto collides = [](const std::vector<ControlCode>& accepted,
                     const ControlCode& code) {
    return std::any_of(accepted.begin(), accepted.end(),
                       [&](const ControlCode& a) { return Collide(a, code); });
  };
  auto dedup = [&](std::vector<ControlCode> codes) {
    std::vector<ControlCode> kept;
    for (auto& code : codes) {
      if (!collides(kept, code)) kept.push_back(std::move(code));
    }
    return kept;
  };
  std::vector<ControlCode> kept_spans = dedup(std::move(spans));
  std::vector<ControlCode> kept_keywords;
  for (auto& code : dedup(std::move(keywords))) {
    if (!collides(kept_spans, code)) kept_keywords.push_back(std::move(code));
  }

  const auto cap = static_cast<std::size_t>(config.max_codes);
  for (std::size_t i = 0;
       selection.codes.size() < cap &&
       (i < kept_spans.size() || i < kept_keywords.size());
       ++i) {
    if (i < kept_spans.size()) selection.codes.push_back(kept_spans[i]);
    if (selection.codes.size() < cap && i < kept_keywords.size()) {
      selection.codes.push_back(kept_keywords[i]);
    }
  }
  return selection;
}

ControlCode CodeFromQuestion(std::string_view question) {
  auto phrases = text::ExtractKeyphrases(
      question, {.max_ngram = 3, .top_k = 1, .dedup_threshold = 0.9});
  if (phrases.empty()) {
    throw NoCodeExtractable("no control code in question \"" +
                            std::string(question) + "\"");
  }
  return {phrases.front().phrase, CodeSource::kQuestionDerived, 1.0,
          std::nullopt};
}

}  // namespace qgen::codes

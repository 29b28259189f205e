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

#include "qgen/pipeline/filters.h"

#include <algorithm>
#include <cctype>
#include <tuple>
#include <utility>

#include "qgen/common/errors.h"

namespace qgen::pipeline {
namespace {

using nlohmann::json;

std::size_t CountOccurrences(std::string_view haystack, std::string_view needle) {
  std::size_t count = 0;
  for (auto pos = haystack.find(needle); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

bool IsSpace(unsigned char c) { return std::isspace(c) != 0; }

CandidateQuestion Discard(CandidateQuestion cand, DiscardReason reason) {
  cand.stage = Stage::kDiscarded;
  cand.discard_reason = reason;
  return cand;
}

}  // namespace

void FilterConfig::Validate() const {
  if (!(kappa >= 0.0 && kappa <= 1.0)) {
    throw ConfigError("filter.kappa must be in [0, 1], got " +
                      std::to_string(kappa));
  }
  for (auto placeholder : {kParagraphPlaceholder, kQuestionPlaceholder}) {
    if (CountOccurrences(answerability_template, placeholder) != 1) {
      throw ConfigError("filter.answerability_template must contain " +
                        std::string(placeholder) + " exactly once");
    }
  }
  if (accept_tokens.empty()) {
    throw ConfigError("filter.accept_tokens must not be empty");
  }
  if (candidates_per_code < 1) {
    throw ConfigError("filter.candidates_per_code must be >= 1");
  }
}

void to_json(json& j, const FilterConfig& c) {
  j = json{{"kappa", c.kappa},
           {"answerability_template", c.answerability_template},
           {"accept_tokens", c.accept_tokens},
           {"candidates_per_code", c.candidates_per_code}};
}

std::string BuildGenerationPrompt(const codes::ControlCode& code,
                                  const Paragraph& paragraph,
                                  std::string_view separator) {
  std::string prompt;
  prompt.reserve(code.phrase.size() + separator.size() + paragraph.text.size());
  prompt.append(code.phrase).append(separator).append(paragraph.text);
  return prompt;
}

std::string BuildAnswerabilityPrompt(std::string_view paragraph,
                                     std::string_view question,
                                     std::string_view tmpl) {
  std::string out;
  out.reserve(tmpl.size() + paragraph.size() + question.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    std::string_view rest = tmpl.substr(i);
    if (rest.starts_with(kParagraphPlaceholder)) {
      out.append(paragraph);
      i += kParagraphPlaceholder.size();
    } else if (rest.starts_with(kQuestionPlaceholder)) {
      out.append(question);
      i += kQuestionPlaceholder.size();
    } else {
      out.push_back(tmpl[i++]);
    }
  }
  return out;
}

CandidateQuestion PrimaryFilter(CandidateQuestion cand,
                                const Paragraph& paragraph,
                                const backends::BackendClient& scorer,
                                const FilterConfig& cfg) {
  try {
    cand.qa = scorer.QaConfidence(cand.text, paragraph.text);
  } catch (const Error& e) {
    cand.error = e.what();
    return Discard(std::move(cand), DiscardReason::kBackendFailure);
  }
  if (cand.qa->confidence >= cfg.kappa) {
    cand.stage = Stage::kPassedPrimary;
    return cand;
  }
  return Discard(std::move(cand), DiscardReason::kBelowKappa);
}

bool ParseVerdict(std::string_view raw,
                  const std::set<std::string>& accept_tokens) {
  std::size_t b = 0;
  while (b < raw.size() && IsSpace(raw[b])) ++b;
  std::size_t e = b;
  while (e < raw.size() && !IsSpace(raw[e])) ++e;
  std::string token(raw.substr(b, e - b));
  auto is_punct = [](unsigned char c) { return std::ispunct(c) != 0; };
  while (!token.empty() && is_punct(token.back())) token.pop_back();
  std::size_t lead = 0;
  while (lead < token.size() && is_punct(token[lead])) ++lead;
  token.erase(0, lead);
  std::transform(token.begin(), token.end(), token.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return !token.empty() && accept_tokens.count(token) > 0;
}

CandidateQuestion SecondaryFilter(CandidateQuestion cand,
                                  const Paragraph& paragraph,
                                  const backends::BackendClient& instruct,
                                  const FilterConfig& cfg) {
  std::string reply;
  try {
    reply = instruct.Instruct(BuildAnswerabilityPrompt(
        paragraph.text, cand.text, cfg.answerability_template));
  } catch (const Error& e) {
    cand.error = e.what();
    return Discard(std::move(cand), DiscardReason::kBackendFailure);
  }
  cand.answerable = ParseVerdict(reply, cfg.accept_tokens);
  cand.verdict = std::move(reply);
  if (*cand.answerable) {
    cand.stage = Stage::kPassedSecondary;
    return cand;
  }
  return Discard(std::move(cand), DiscardReason::kNotAnswerable);
}

std::vector<CandidateQuestion> Rank(std::vector<CandidateQuestion> cands) {
  auto confidence = [](const CandidateQuestion& c) {
    return c.qa ? c.qa->confidence : 0.0;
  };
  std::sort(cands.begin(), cands.end(),
            [&](const CandidateQuestion& a, const CandidateQuestion& b) {
              double ca = confidence(a);
              double cb = confidence(b);
              if (ca != cb) return ca > cb;
              return std::tie(a.text, a.code.phrase) <
                     std::tie(b.text, b.code.phrase);
            });
  return cands;
}

}  // namespace qgen::pipeline

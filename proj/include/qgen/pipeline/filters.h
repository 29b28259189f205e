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

#ifndef QGEN_PIPELINE_FILTERS_H_
#define QGEN_PIPELINE_FILTERS_H_

#include <array>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qgen/backends/client.h"
#include "qgen/codes/control_codes.h"
#include "qgen/common/paragraph.h"
#include "qgen/pipeline/candidate.h"

namespace qgen::pipeline {

inline constexpr std::string_view kParagraphPlaceholder = "{{paragraph}}";
inline constexpr std::string_view kQuestionPlaceholder = "{{question}}";
inline constexpr std::string_view kDefaultAnswerabilityTemplate =
    "Given paragraph {{paragraph}}, is the question {{question}} answerable? "
    "Please answer in Yes or No";
inline constexpr std::string_view kDefaultSeparator = " [SEP] ";

// Threshold values of the kappa selection sweep.
inline constexpr std::array<double, 3> kKappaSweep = {0.35, 0.4, 0.45};

struct FilterConfig {
  double kappa = 0.4;
  std::string answerability_template{kDefaultAnswerabilityTemplate};
  std::set<std::string> accept_tokens = {"yes"};
  int candidates_per_code = 1;

  // Throws ConfigError unless kappa is in [0, 1], the template holds each
  // placeholder exactly once, accept_tokens is nonempty and
  // candidates_per_code >= 1.
  void Validate() const;

  bool operator==(const FilterConfig&) const = default;
};

void to_json(nlohmann::json& j, const FilterConfig& c);

// code.phrase + separator + paragraph.text, byte for byte.
std::string BuildGenerationPrompt(const codes::ControlCode& code,
                                  const Paragraph& paragraph,
                                  std::string_view separator);

// Replaces each placeholder of the template in a single left-to-right pass;
// placeholder text inside the substituted values is left alone.
std::string BuildAnswerabilityPrompt(std::string_view paragraph,
                                     std::string_view question,
                                     std::string_view tmpl);

// Sets qa and moves the candidate to kPassedPrimary when confidence >= kappa,
// else discards it as kBelowKappa. A backend error discards it as
// kBackendFailure.
CandidateQuestion PrimaryFilter(CandidateQuestion cand,
                                const Paragraph& paragraph,
                                const backends::BackendClient& scorer,
                                const FilterConfig& cfg);

// Trims and lowercases the reply, takes its first whitespace-separated
// token and strips surrounding punctuation. True iff the result is one of
// accept_tokens.
bool ParseVerdict(std::string_view raw, const std::set<std::string>& accept_tokens);

// Asks the instruction model whether the question is answerable. Moves the
// candidate to kPassedSecondary or discards it as kNotAnswerable or
// kBackendFailure.
CandidateQuestion SecondaryFilter(CandidateQuestion cand,
                                  const Paragraph& paragraph,
                                  const backends::BackendClient& instruct,
                                  const FilterConfig& cfg);

// Descending confidence, then text, then code phrase.
std::vector<CandidateQuestion> Rank(std::vector<CandidateQuestion> cands);

}  // namespace qgen::pipeline

#endif  // QGEN_PIPELINE_FILTERS_H_

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

#ifndef QGEN_PIPELINE_CANDIDATE_H_
#define QGEN_PIPELINE_CANDIDATE_H_

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "qgen/backends/wire.h"
#include "qgen/codes/control_codes.h"

namespace qgen::pipeline {

enum class Stage { kGenerated, kPassedPrimary, kPassedSecondary, kDiscarded };

enum class DiscardReason {
  kBelowKappa,
  kNotAnswerable,
  kEmptyGeneration,
  kDuplicate,
  kBackendFailure,
};

std::string_view StageName(Stage stage);
std::string_view DiscardReasonName(DiscardReason reason);

// A generated question and the evidence the filters attached to it.
struct CandidateQuestion {
  std::string text;
  codes::ControlCode code;
  std::optional<backends::QaScore> qa;
  std::optional<bool> answerable;
  // Raw instruction-model reply behind `answerable`.
  std::optional<std::string> verdict;
  Stage stage = Stage::kGenerated;
  std::optional<DiscardReason> discard_reason;
  // Backend error text for kBackendFailure.
  std::optional<std::string> error;

  bool operator==(const CandidateQuestion&) const = default;
};

// Optional fields are omitted when unset.
void to_json(nlohmann::json& j, const CandidateQuestion& c);
void from_json(const nlohmann::json& j, CandidateQuestion& c);

}  // namespace qgen::pipeline

#endif  // QGEN_PIPELINE_CANDIDATE_H_

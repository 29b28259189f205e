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

#include "qgen/pipeline/candidate.h"

#include <string>

#include "qgen/common/errors.h"

namespace qgen::pipeline {

using nlohmann::json;

std::string_view StageName(Stage stage) {
  switch (stage) {
    case Stage::kGenerated:
      return "generated";
    case Stage::kPassedPrimary:
      return "passed_primary";
    case Stage::kPassedSecondary:
      return "passed_secondary";
    case Stage::kDiscarded:
      return "discarded";
  }
  return "generated";
}

std::string_view DiscardReasonName(DiscardReason reason) {
  switch (reason) {
    case DiscardReason::kBelowKappa:
      return "below_kappa";
    case DiscardReason::kNotAnswerable:
      return "not_answerable";
    case DiscardReason::kEmptyGeneration:
      return "empty_generation";
    case DiscardReason::kDuplicate:
      return "duplicate";
    case DiscardReason::kBackendFailure:
      return "backend_failure";
  }
  return "backend_failure";
}

namespace {

Stage ParseStage(const std::string& name) {
  for (Stage s : {Stage::kGenerated, Stage::kPassedPrimary,
                  Stage::kPassedSecondary, Stage::kDiscarded}) {
    if (StageName(s) == name) return s;
  }
  throw InputError("unknown candidate stage \"" + name + "\"");
}

DiscardReason ParseReason(const std::string& name) {
  for (DiscardReason r :
       {DiscardReason::kBelowKappa, DiscardReason::kNotAnswerable,
        DiscardReason::kEmptyGeneration, DiscardReason::kDuplicate,
        DiscardReason::kBackendFailure}) {
    if (DiscardReasonName(r) == name) return r;
  }
  throw InputError("unknown discard reason \"" + name + "\"");
}

}  // namespace

void to_json(json& j, const CandidateQuestion& c) {
  j = json{{"text", c.text}, {"code", c.code}, {"stage", StageName(c.stage)}};
  if (c.qa) j["qa"] = *c.qa;
  if (c.answerable) j["answerable"] = *c.answerable;
  if (c.verdict) j["verdict"] = *c.verdict;
  if (c.discard_reason) j["discard_reason"] = DiscardReasonName(*c.discard_reason);
  if (c.error) j["error"] = *c.error;
}

void from_json(const json& j, CandidateQuestion& c) {
  c = CandidateQuestion{};
  c.text = j.at("text").get<std::string>();
  c.code = j.at("code").get<codes::ControlCode>();
  c.stage = ParseStage(j.at("stage").get<std::string>());
  if (j.contains("qa")) c.qa = j["qa"].get<backends::QaScore>();
  if (j.contains("answerable")) c.answerable = j["answerable"].get<bool>();
  if (j.contains("verdict")) c.verdict = j["verdict"].get<std::string>();
  if (j.contains("discard_reason")) {
    c.discard_reason = ParseReason(j["discard_reason"].get<std::string>());
  }
  if (j.contains("error")) c.error = j["error"].get<std::string>();
}

}  // namespace qgen::pipeline

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

#include "qgen/pipeline/pipeline.h"

#include <algorithm>
#include <cctype>
#include <set>
#include <utility>

#include "qgen/common/errors.h"
#include "qgen/common/hash.h"
#include "qgen/text/keyphrase.h"
#include "qgen/text/tokenizer.h"

namespace qgen::pipeline {
namespace {

using backends::BackendClient;
using nlohmann::json;

bool IsBlank(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

// Case-folded, whitespace-collapsed form used for exact-duplicate checks.
std::string DuplicateKey(std::string_view question) {
  std::string key;
  bool pending_space = false;
  for (char c : text::FoldCase(question)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !key.empty();
      continue;
    }
    if (pending_space) key.push_back(' ');
    pending_space = false;
    key.push_back(c);
  }
  return key;
}

void RequireText(const Paragraph& paragraph) {
  if (IsBlank(paragraph.text)) {
    throw InputError("paragraph " + paragraph.id + " has no text");
  }
}

const BackendClient& Require(const std::optional<BackendClient>& client,
                             std::string_view role, std::string_view purpose) {
  if (!client) {
    throw ConfigError("backend \"" + std::string(role) + "\" is required for " +
                      std::string(purpose));
  }
  return *client;
}

PipelineResult NewResult(const Paragraph& paragraph, std::string_view variant,
                         const PipelineConfig& cfg,
                         const PipelineBackends& backends) {
  PipelineResult result;
  result.paragraph = paragraph;
  result.variant = variant;
  result.config_snapshot = ConfigSnapshot(cfg, backends);
  return result;
}

CandidateQuestion Slot(const codes::ControlCode& code, std::string text) {
  CandidateQuestion cand;
  cand.code = code;
  if (IsBlank(text)) {
    cand.stage = Stage::kDiscarded;
    cand.discard_reason = DiscardReason::kEmptyGeneration;
  } else {
    cand.text = std::move(text);
  }
  return cand;
}

// One slot per requested candidate; missing outputs become empty slots.
void AppendSlots(std::vector<CandidateQuestion>& slots,
                 const codes::ControlCode& code,
                 std::vector<std::string> outputs, int n) {
  for (int i = 0; i < n; ++i) {
    auto idx = static_cast<std::size_t>(i);
    slots.push_back(
        Slot(code, idx < outputs.size() ? std::move(outputs[idx]) : ""));
  }
}

void CollapseDuplicates(std::vector<CandidateQuestion>& slots) {
  std::set<std::string> seen;
  for (auto& cand : slots) {
    if (cand.stage != Stage::kGenerated) continue;
    if (!seen.insert(DuplicateKey(cand.text)).second) {
      cand.stage = Stage::kDiscarded;
      cand.discard_reason = DiscardReason::kDuplicate;
    }
  }
}

// Unfiltered outputs go to ranked, everything else to discarded.
void SplitUnfiltered(PipelineResult& result,
                     std::vector<CandidateQuestion> slots) {
  CollapseDuplicates(slots);
  result.generated_count = slots.size();
  for (auto& cand : slots) {
    (cand.stage == Stage::kGenerated ? result.ranked : result.discarded)
        .push_back(std::move(cand));
  }
}

std::vector<std::string> GenerateOrThrow(const BackendClient& generator,
                                         const std::string& prompt,
                                         const backends::DecodeConfig& decode,
                                         int n) {
  try {
    return generator.Generate(prompt, decode, n);
  } catch (const Error& e) {
    throw PipelineUnavailable(std::string("generator: ") + e.what());
  }
}

backends::DecodeConfig SeededDecode(const backends::DecodeConfig& decode,
                                    uint64_t seed) {
  backends::DecodeConfig seeded = decode;
  if (!seeded.seed) seeded.seed = seed;
  return seeded;
}

}  // namespace

void PipelineConfig::Validate() const {
  codes.Validate();
  filter.Validate();
  decode.Validate();
}

json ConfigSnapshot(const PipelineConfig& cfg,
                    const PipelineBackends& backends) {
  json endpoints = json::object();
  auto add = [&](std::string_view name,
                 const std::optional<BackendClient>& client) {
    if (client) endpoints[std::string(name)] = client->handle().endpoint;
  };
  add("generator", backends.generator);
  add("qa_scorer", backends.qa_scorer);
  add("instruct", backends.instruct);
  add("span_extractor", backends.span_extractor);
  add("squad_generator", backends.squad_generator);
  return json{{"codes", cfg.codes},
              {"filter", cfg.filter},
              {"decode", cfg.decode},
              {"separator", cfg.separator},
              {"backends", endpoints}};
}

void to_json(json& j, const PipelineResult& r) {
  j = json{{"paragraph_id", r.paragraph.id},
           {"paragraph", r.paragraph},
           {"variant", r.variant},
           {"codes", r.codes},
           {"generated_count", r.generated_count},
           {"ranked", r.ranked},
           {"discarded", r.discarded},
           {"warnings", r.warnings},
           {"config_snapshot", r.config_snapshot}};
}

void from_json(const json& j, PipelineResult& r) {
  try {
    r = PipelineResult{};
    r.paragraph = j.at("paragraph").get<Paragraph>();
    if (j.contains("paragraph_id")) {
      const json& id = j["paragraph_id"];
      r.paragraph.id = id.is_string() ? id.get<std::string>() : id.dump();
    }
    r.variant = j.value("variant", std::string("consistent"));
    r.codes = j.value("codes", std::vector<codes::ControlCode>{});
    r.ranked = j.at("ranked").get<std::vector<CandidateQuestion>>();
    r.discarded = j.value("discarded", std::vector<CandidateQuestion>{});
    r.generated_count = j.value("generated_count",
                                r.ranked.size() + r.discarded.size());
    r.warnings = j.value("warnings", std::vector<std::string>{});
    r.config_snapshot = j.value("config_snapshot", json::object());
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed pipeline result: ") + e.what());
  }
}

PipelineResult RunPipeline(const Paragraph& paragraph,
                           const PipelineBackends& backends,
                           const PipelineConfig& cfg) {
  cfg.Validate();
  RequireText(paragraph);
  const BackendClient& generator = Require(backends.generator, "generator", "run");
  const BackendClient& scorer = Require(backends.qa_scorer, "qa_scorer", "run");
  const BackendClient& instruct = Require(backends.instruct, "instruct", "run");

  PipelineResult result = NewResult(paragraph, "consistent", cfg, backends);
  auto selection = codes::SelectControlCodes(
      paragraph, backends.span_extractor ? &*backends.span_extractor : nullptr,
      cfg.codes);
  if (selection.extractor_error) {
    result.warnings.push_back("span_extractor: " + *selection.extractor_error);
  }
  result.codes = std::move(selection.codes);

  const int n = cfg.filter.candidates_per_code;
  std::vector<CandidateQuestion> slots;
  std::size_t failed_codes = 0;
  std::string last_error;
  for (const auto& code : result.codes) {
    std::vector<std::string> outputs;
    try {
      outputs = generator.Generate(
          BuildGenerationPrompt(code, paragraph, cfg.separator), cfg.decode, n);
    } catch (const Error& e) {
      ++failed_codes;
      last_error = e.what();
      for (int i = 0; i < n; ++i) {
        CandidateQuestion cand;
        cand.code = code;
        cand.stage = Stage::kDiscarded;
        cand.discard_reason = DiscardReason::kBackendFailure;
        cand.error = last_error;
        slots.push_back(std::move(cand));
      }
      continue;
    }
    AppendSlots(slots, code, std::move(outputs), n);
  }
  if (!result.codes.empty() && failed_codes == result.codes.size()) {
    throw PipelineUnavailable("generator: " + last_error);
  }
  CollapseDuplicates(slots);

  std::vector<CandidateQuestion> passed;
  result.generated_count = slots.size();
  for (auto& cand : slots) {
    if (cand.stage == Stage::kGenerated) {
      cand = PrimaryFilter(std::move(cand), paragraph, scorer, cfg.filter);
    }
    if (cand.stage == Stage::kPassedPrimary) {
      cand = SecondaryFilter(std::move(cand), paragraph, instruct, cfg.filter);
    }
    (cand.stage == Stage::kPassedSecondary ? passed : result.discarded)
        .push_back(std::move(cand));
  }
  result.ranked = Rank(std::move(passed));
  return result;
}

std::string_view BaselineName(BaselineVariant variant) {
  switch (variant) {
    case BaselineVariant::kLead:
      return "lead";
    case BaselineVariant::kRandomIn:
      return "random_in";
    case BaselineVariant::kRandomOut:
      return "random_out";
    case BaselineVariant::kSquadStyle:
      return "squad_style";
  }
  return "lead";
}

std::optional<BaselineVariant> ParseBaseline(std::string_view name) {
  if (name == "lead") return BaselineVariant::kLead;
  if (name == "random_in" || name == "random-in") return BaselineVariant::kRandomIn;
  if (name == "random_out" || name == "random-out") {
    return BaselineVariant::kRandomOut;
  }
  if (name == "squad_style" || name == "squad" || name == "squad-style") {
    return BaselineVariant::kSquadStyle;
  }
  return std::nullopt;
}

std::string LeadSentence(std::string_view text) {
  auto tokens = text::Tokenize(text);
  if (tokens.empty()) return "";
  std::size_t end = text.size();
  for (const auto& token : tokens) {
    if (token.sentence_index > 0) {
      end = token.offset;
      break;
    }
  }
  std::size_t begin = 0;
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) {
    ++begin;
  }
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) {
    --end;
  }
  return std::string(text.substr(begin, end - begin));
}

PipelineResult RunBaseline(BaselineVariant variant, const Paragraph& paragraph,
                           const PipelineBackends& backends,
                           const PipelineConfig& cfg, uint64_t seed) {
  cfg.Validate();
  RequireText(paragraph);
  PipelineResult result =
      NewResult(paragraph, BaselineName(variant), cfg, backends);
  result.config_snapshot["seed"] = seed;
  const int n = cfg.filter.candidates_per_code;
  const backends::DecodeConfig decode = SeededDecode(cfg.decode, seed);
  std::vector<CandidateQuestion> slots;

  switch (variant) {
    case BaselineVariant::kLead: {
      const BackendClient& instruct =
          Require(backends.instruct, "instruct", "the lead baseline");
      std::string sentence = LeadSentence(paragraph.text);
      auto begin = paragraph.text.find(sentence);
      codes::ControlCode code{sentence, codes::CodeSource::kManual, 1.0,
                              std::make_pair(begin, begin + sentence.size())};
      std::string reply;
      try {
        reply = instruct.Instruct(std::string(kLeadPromptPrefix) + sentence);
      } catch (const Error& e) {
        throw PipelineUnavailable(std::string("instruct: ") + e.what());
      }
      result.codes = {code};
      slots.push_back(Slot(code, std::move(reply)));
      break;
    }
    case BaselineVariant::kRandomIn: {
      const BackendClient& generator =
          Require(backends.generator, "generator", "the random_in baseline");
      auto candidates = text::ScoreCandidates(paragraph.text);
      if (candidates.empty()) {
        throw InputError("paragraph " + paragraph.id + " has no keyphrase");
      }
      HashChain rng(Fnv1a64(paragraph.text, seed));
      auto pick = rng.Below(candidates.size());
      const auto& kp = candidates[pick];
      codes::ControlCode code{
          kp.phrase, codes::CodeSource::kKeyword,
          1.0 - static_cast<double>(pick) / static_cast<double>(candidates.size()),
          std::make_pair(kp.offset, kp.offset + kp.length)};
      result.codes = {code};
      AppendSlots(slots, code,
                  GenerateOrThrow(generator,
                                  BuildGenerationPrompt(code, paragraph,
                                                        cfg.separator),
                                  decode, n),
                  n);
      break;
    }
    case BaselineVariant::kRandomOut: {
      if (cfg.out_vocabulary.empty()) {
        throw ConfigError(
            "baselines.out_vocabulary is required for the random_out baseline");
      }
      const BackendClient& generator =
          Require(backends.generator, "generator", "the random_out baseline");
      const std::string folded = text::FoldCase(paragraph.text);
      std::vector<std::string> outside;
      for (const auto& word : cfg.out_vocabulary) {
        if (!IsBlank(word) && folded.find(text::FoldCase(word)) == std::string::npos) {
          outside.push_back(word);
        }
      }
      if (outside.empty()) {
        throw InputError("every out_vocabulary entry occurs in paragraph " +
                         paragraph.id);
      }
      HashChain rng(Fnv1a64(paragraph.text, seed));
      codes::ControlCode code{outside[rng.Below(outside.size())],
                              codes::CodeSource::kManual, 1.0, std::nullopt};
      result.codes = {code};
      AppendSlots(slots, code,
                  GenerateOrThrow(generator,
                                  BuildGenerationPrompt(code, paragraph,
                                                        cfg.separator),
                                  decode, n),
                  n);
      break;
    }
    case BaselineVariant::kSquadStyle: {
      const BackendClient& squad = Require(
          backends.squad_generator, "squad_generator", "the squad baseline");
      PipelineResult full = RunPipeline(paragraph, backends, cfg);
      result.warnings = full.warnings;
      if (full.ranked.empty()) {
        result.warnings.push_back("no ranked question to take a control code from");
        break;
      }
      const codes::ControlCode& code = full.ranked.front().code;
      result.codes = {code};
      AppendSlots(slots, code,
                  GenerateOrThrow(squad,
                                  BuildGenerationPrompt(code, paragraph,
                                                        cfg.separator),
                                  decode, n),
                  n);
      break;
    }
  }
  SplitUnfiltered(result, std::move(slots));
  return result;
}

}  // namespace qgen::pipeline

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

#ifndef QGEN_PIPELINE_PIPELINE_H_
#define QGEN_PIPELINE_PIPELINE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qgen/backends/client.h"
#include "qgen/backends/wire.h"
#include "qgen/codes/control_codes.h"
#include "qgen/common/paragraph.h"
#include "qgen/pipeline/candidate.h"
#include "qgen/pipeline/filters.h"

namespace qgen::pipeline {

struct PipelineBackends {
  std::optional<backends::BackendClient> generator;
  std::optional<backends::BackendClient> qa_scorer;
  std::optional<backends::BackendClient> instruct;
  std::optional<backends::BackendClient> span_extractor;
  // Generator used by the squad_style baseline.
  std::optional<backends::BackendClient> squad_generator;
};

struct PipelineConfig {
  codes::CodeSelectionConfig codes;
  FilterConfig filter;
  backends::DecodeConfig decode;
  std::string separator{kDefaultSeparator};
  // Vocabulary for the random_out baseline.
  std::vector<std::string> out_vocabulary;

  void Validate() const;
};

// Everything a run decided, with the full audit trail.
struct PipelineResult {
  Paragraph paragraph;
  std::string variant;
  std::vector<codes::ControlCode> codes;
  // Every candidate slot, kept or not.
  std::size_t generated_count = 0;
  // Filtered runs: passed_secondary candidates in rank order. Baselines:
  // their unfiltered outputs in generation order.
  std::vector<CandidateQuestion> ranked;
  // Generation order.
  std::vector<CandidateQuestion> discarded;
  std::vector<std::string> warnings;
  nlohmann::json config_snapshot;
};

void to_json(nlohmann::json& j, const PipelineResult& r);
void from_json(const nlohmann::json& j, PipelineResult& r);

// Effective configuration and backend endpoints, without credentials.
nlohmann::json ConfigSnapshot(const PipelineConfig& cfg,
                              const PipelineBackends& backends);

// Control codes, one generation request per code, duplicate collapse,
// primary filter, secondary filter, ranking.
//
// Each code owns candidates_per_code slots; a slot without output is
// discarded as kEmptyGeneration and a repeat of an earlier question
// (case-folded, whitespace-normalized) as kDuplicate. Filter backend errors
// discard the affected candidate. Throws InputError for an empty paragraph,
// ConfigError when a required backend is missing and PipelineUnavailable
// when no generator call succeeds.
PipelineResult RunPipeline(const Paragraph& paragraph,
                           const PipelineBackends& backends,
                           const PipelineConfig& cfg);

enum class BaselineVariant { kLead, kRandomIn, kRandomOut, kSquadStyle };

std::string_view BaselineName(BaselineVariant variant);
// Accepts the snake_case names and the CLI spellings ("random-in", "squad").
std::optional<BaselineVariant> ParseBaseline(std::string_view name);

// The comparison systems. None of them is filtered: outputs are returned in
// `ranked` with stage kGenerated.
//
//   lead         the first sentence rewritten as a question by the
//                instruction model.
//   random_in    a keyphrase candidate of the paragraph drawn with `seed`.
//   random_out   a word of out_vocabulary absent from the paragraph, drawn
//                with `seed`; ConfigError if the vocabulary is empty.
//   squad_style  the code of the top-ranked question of a full run, fed to
//                squad_generator.
PipelineResult RunBaseline(BaselineVariant variant, const Paragraph& paragraph,
                           const PipelineBackends& backends,
                           const PipelineConfig& cfg, uint64_t seed);

inline constexpr std::string_view kLeadPromptPrefix =
    "Rewrite the following statement as a question: ";

// The first sentence of the text, trailing punctuation included.
std::string LeadSentence(std::string_view text);

}  // namespace qgen::pipeline

#endif  // QGEN_PIPELINE_PIPELINE_H_

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

#ifndef QGEN_DATAPREP_TRIPLES_H_
#define QGEN_DATAPREP_TRIPLES_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"

namespace qgen::dataprep {

// One question/answer thread of a long-form QA corpus.
struct QaPair {
  std::string question;
  std::string answer;
  std::string source_id;

  bool operator==(const QaPair&) const = default;
};

// Input line format: {"question","answer","source_id"}. A numeric source_id
// is accepted.
void from_json(const nlohmann::json& j, QaPair& pair);

// Supervision record for a code-conditioned generator: the model reads
// control_code and input_text and learns to emit target_question.
struct TrainingTriple {
  std::string control_code;
  std::string input_text;
  std::string target_question;
  std::string source_id;

  bool operator==(const TrainingTriple&) const = default;
};

void to_json(nlohmann::json& j, const TrainingTriple& t);
void from_json(const nlohmann::json& j, TrainingTriple& t);

enum class RejectReason { kMalformed, kEmptyFields, kNoCode, kAnswerTooShort };

std::string_view RejectReasonName(RejectReason reason);

struct RejectEntry {
  // 1-based line number in the input.
  std::size_t line = 0;
  std::string source_id;
  RejectReason reason = RejectReason::kMalformed;
  std::string detail;
};

void to_json(nlohmann::json& j, const RejectEntry& r);

struct TripleOptions {
  // Minimum answer length in word tokens.
  std::size_t min_answer_tokens = 20;
};

// Question and answer are trimmed; the code is the top keyphrase of the
// question.
std::variant<TrainingTriple, RejectReason> BuildTriple(const QaPair& pair,
                                                       const TripleOptions& options);

struct TripleStats {
  std::size_t pairs = 0;
  std::size_t triples = 0;
  std::size_t rejects = 0;
};

// Streams JSONL pairs from `in`, writing one JSON line per triple to `out`
// and one per rejected pair to `rejects`, in input order. Blank lines are
// skipped; every other line counts as a pair. Never throws on bad records.
TripleStats BuildTriples(std::istream& in, std::ostream& out,
                         std::ostream& rejects, const TripleOptions& options);

}  // namespace qgen::dataprep

#endif  // QGEN_DATAPREP_TRIPLES_H_

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

#ifndef QGEN_BACKENDS_WIRE_H_
#define QGEN_BACKENDS_WIRE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace qgen::backends {

// External model roles. Each has one POST route.
enum class Role { kGenerator, kQaScorer, kInstruct, kSpanExtractor };

std::string_view RoleName(Role role);
std::string_view RoleRoute(Role role);
std::optional<Role> ParseRole(std::string_view name);

enum class DecodeStrategy { kTopKSampling, kGreedy };

// Decoding parameters handed to the generator. Defaults are the published
// generation hyperparameters.
struct DecodeConfig {
  DecodeStrategy strategy = DecodeStrategy::kTopKSampling;
  int k = 5;
  double temperature = 0.8;
  int no_repeat_ngram_size = 2;
  std::optional<uint64_t> seed;

  // Throws ConfigError when sampling parameters are out of range.
  void Validate() const;

  bool operator==(const DecodeConfig&) const = default;
};

struct QaScore {
  // Empty when the model abstains.
  std::string answer_span;
  double confidence = 0.0;

  bool operator==(const QaScore&) const = default;
};

struct ExtractedSpan {
  std::string text;
  std::size_t start = 0;
  std::size_t end = 0;
  double probability = 0.0;
  // Set when the span was cut down to the token cap.
  bool truncated = false;

  bool operator==(const ExtractedSpan&) const = default;
};

struct GenerateRequest {
  std::string prompt;
  DecodeConfig decode;
  int n = 1;
  bool operator==(const GenerateRequest&) const = default;
};

struct GenerateResponse {
  std::vector<std::string> outputs;
  bool operator==(const GenerateResponse&) const = default;
};

struct QaScoreRequest {
  std::string question;
  std::string paragraph;
  bool operator==(const QaScoreRequest&) const = default;
};

struct InstructRequest {
  std::string prompt;
  bool operator==(const InstructRequest&) const = default;
};

struct InstructResponse {
  std::string text;
  bool operator==(const InstructResponse&) const = default;
};

struct ExtractSpansRequest {
  std::string paragraph;
  int top_k = 0;
  bool operator==(const ExtractSpansRequest&) const = default;
};

struct ExtractSpansResponse {
  std::vector<ExtractedSpan> spans;
  bool operator==(const ExtractSpansResponse&) const = default;
};

// JSON mapping. Field names are the wire contract:
//   generate      {"prompt","decode":{...},"n"}        -> {"outputs":[...]}
//   qa_score      {"question","paragraph"}             -> {"answer","confidence"}
//   instruct      {"prompt"}                           -> {"text"}
//   extract_spans {"paragraph","top_k"}                -> {"spans":[{"text","start","end","probability"}]}
// from_json throws ProtocolError on shape or range violations.
void to_json(nlohmann::json& j, const DecodeConfig& c);
void from_json(const nlohmann::json& j, DecodeConfig& c);
void to_json(nlohmann::json& j, const QaScore& s);
void from_json(const nlohmann::json& j, QaScore& s);
void to_json(nlohmann::json& j, const ExtractedSpan& s);
void from_json(const nlohmann::json& j, ExtractedSpan& s);
void to_json(nlohmann::json& j, const GenerateRequest& r);
void from_json(const nlohmann::json& j, GenerateRequest& r);
void to_json(nlohmann::json& j, const GenerateResponse& r);
void from_json(const nlohmann::json& j, GenerateResponse& r);
void to_json(nlohmann::json& j, const QaScoreRequest& r);
void from_json(const nlohmann::json& j, QaScoreRequest& r);
void to_json(nlohmann::json& j, const InstructRequest& r);
void from_json(const nlohmann::json& j, InstructRequest& r);
void to_json(nlohmann::json& j, const InstructResponse& r);
void from_json(const nlohmann::json& j, InstructResponse& r);
void to_json(nlohmann::json& j, const ExtractSpansRequest& r);
void from_json(const nlohmann::json& j, ExtractSpansRequest& r);
void to_json(nlohmann::json& j, const ExtractSpansResponse& r);
void from_json(const nlohmann::json& j, ExtractSpansResponse& r);

[[noreturn]] void ThrowMalformedBody(std::string_view body);

// Parses a wire body, converting JSON syntax errors into ProtocolError.
template <typename T>
T ParseWire(std::string_view body) {
  nlohmann::json j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_discarded()) ThrowMalformedBody(body);
  return j.get<T>();
}

}  // namespace qgen::backends

#endif  // QGEN_BACKENDS_WIRE_H_

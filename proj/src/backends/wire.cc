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

#include "qgen/backends/wire.h"

#include <array>
#include <string>

#include "qgen/common/errors.h"

namespace qgen::backends {
namespace {

using nlohmann::json;

struct RoleInfo {
  Role role;
  std::string_view name;
  std::string_view route;
};

constexpr std::array<RoleInfo, 4> kRoles = {{
    {Role::kGenerator, "generator", "/v1/generate"},
    {Role::kQaScorer, "qa_scorer", "/v1/qa_score"},
    {Role::kInstruct, "instruct", "/v1/instruct"},
    {Role::kSpanExtractor, "span_extractor", "/v1/extract_spans"},
}};

const json& Field(const json& j, const char* name) {
  if (!j.is_object()) throw ProtocolError("expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) {
    throw ProtocolError(std::string("missing field \"") + name + "\"");
  }
  return *it;
}

std::string StringField(const json& j, const char* name) {
  const json& v = Field(j, name);
  if (!v.is_string()) {
    throw ProtocolError(std::string("field \"") + name + "\" must be a string");
  }
  return v.get<std::string>();
}

double NumberField(const json& j, const char* name) {
  const json& v = Field(j, name);
  if (!v.is_number()) {
    throw ProtocolError(std::string("field \"") + name + "\" must be a number");
  }
  return v.get<double>();
}

long long IntField(const json& j, const char* name) {
  const json& v = Field(j, name);
  if (!v.is_number_integer()) {
    throw ProtocolError(std::string("field \"") + name +
                        "\" must be an integer");
  }
  return v.get<long long>();
}

double Probability(const json& j, const char* name) {
  double p = NumberField(j, name);
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ProtocolError(std::string("field \"") + name + "\" out of [0, 1]: " +
                        std::to_string(p));
  }
  return p;
}

}  // namespace

std::string_view RoleName(Role role) {
  for (const auto& info : kRoles) {
    if (info.role == role) return info.name;
  }
  return "unknown";
}

std::string_view RoleRoute(Role role) {
  for (const auto& info : kRoles) {
    if (info.role == role) return info.route;
  }
  return "";
}

std::optional<Role> ParseRole(std::string_view name) {
  for (const auto& info : kRoles) {
    if (info.name == name) return info.role;
  }
  return std::nullopt;
}

void DecodeConfig::Validate() const {
  if (strategy == DecodeStrategy::kTopKSampling) {
    if (k < 1) throw ConfigError("decode.k must be >= 1 for top-k sampling");
    if (!(temperature > 0.0)) {
      throw ConfigError("decode.temperature must be > 0 for top-k sampling");
    }
  }
  if (no_repeat_ngram_size < 0) {
    throw ConfigError("decode.no_repeat_ngram_size must be >= 0");
  }
}

[[noreturn]] void ThrowMalformedBody(std::string_view body) {
  constexpr std::size_t kExcerpt = 200;
  throw ProtocolError("malformed JSON body: " +
                      std::string(body.substr(0, kExcerpt)));
}

void to_json(json& j, const DecodeConfig& c) {
  j = json{{"strategy", c.strategy == DecodeStrategy::kGreedy
                            ? "greedy"
                            : "top_k_sampling"},
           {"k", c.k},
           {"temperature", c.temperature},
           {"no_repeat_ngram_size", c.no_repeat_ngram_size}};
  if (c.seed) j["seed"] = *c.seed;
}

void from_json(const json& j, DecodeConfig& c) {
  std::string strategy = StringField(j, "strategy");
  if (strategy == "top_k_sampling") {
    c.strategy = DecodeStrategy::kTopKSampling;
  } else if (strategy == "greedy") {
    c.strategy = DecodeStrategy::kGreedy;
  } else {
    throw ProtocolError("unknown decode strategy \"" + strategy + "\"");
  }
  c.k = static_cast<int>(IntField(j, "k"));
  c.temperature = NumberField(j, "temperature");
  c.no_repeat_ngram_size = static_cast<int>(IntField(j, "no_repeat_ngram_size"));
  auto seed = j.find("seed");
  if (seed != j.end() && !seed->is_null()) {
    if (!seed->is_number_unsigned() && !seed->is_number_integer()) {
      throw ProtocolError("field \"seed\" must be an integer");
    }
    c.seed = seed->get<uint64_t>();
  } else {
    c.seed.reset();
  }
}

void to_json(json& j, const QaScore& s) {
  j = json{{"answer", s.answer_span}, {"confidence", s.confidence}};
}

void from_json(const json& j, QaScore& s) {
  const json& answer = Field(j, "answer");
  if (answer.is_null()) {
    s.answer_span.clear();
  } else if (answer.is_string()) {
    s.answer_span = answer.get<std::string>();
  } else {
    throw ProtocolError("field \"answer\" must be a string");
  }
  s.confidence = Probability(j, "confidence");
}

void to_json(json& j, const ExtractedSpan& s) {
  j = json{{"text", s.text},
           {"start", s.start},
           {"end", s.end},
           {"probability", s.probability}};
}

void from_json(const json& j, ExtractedSpan& s) {
  s.text = StringField(j, "text");
  long long start = IntField(j, "start");
  long long end = IntField(j, "end");
  if (start < 0 || end <= start) {
    throw ProtocolError("span offsets must satisfy 0 <= start < end");
  }
  s.start = static_cast<std::size_t>(start);
  s.end = static_cast<std::size_t>(end);
  s.probability = Probability(j, "probability");
  s.truncated = false;
}

void to_json(json& j, const GenerateRequest& r) {
  j = json{{"prompt", r.prompt}, {"decode", r.decode}, {"n", r.n}};
}

void from_json(const json& j, GenerateRequest& r) {
  r.prompt = StringField(j, "prompt");
  r.decode = Field(j, "decode").get<DecodeConfig>();
  r.n = static_cast<int>(IntField(j, "n"));
}

void to_json(json& j, const GenerateResponse& r) {
  j = json{{"outputs", r.outputs}};
}

void from_json(const json& j, GenerateResponse& r) {
  const json& outputs = Field(j, "outputs");
  if (!outputs.is_array()) throw ProtocolError("\"outputs\" must be an array");
  r.outputs.clear();
  for (const json& o : outputs) {
    if (!o.is_string()) throw ProtocolError("generator outputs must be strings");
    r.outputs.push_back(o.get<std::string>());
  }
}

void to_json(json& j, const QaScoreRequest& r) {
  j = json{{"question", r.question}, {"paragraph", r.paragraph}};
}

void from_json(const json& j, QaScoreRequest& r) {
  r.question = StringField(j, "question");
  r.paragraph = StringField(j, "paragraph");
}

void to_json(json& j, const InstructRequest& r) { j = json{{"prompt", r.prompt}}; }

void from_json(const json& j, InstructRequest& r) {
  r.prompt = StringField(j, "prompt");
}

void to_json(json& j, const InstructResponse& r) { j = json{{"text", r.text}}; }

void from_json(const json& j, InstructResponse& r) {
  const json& text = Field(j, "text");
  if (text.is_null()) {
    r.text.clear();
  } else if (text.is_string()) {
    r.text = text.get<std::string>();
  } else {
    throw ProtocolError("field \"text\" must be a string");
  }
}

void to_json(json& j, const ExtractSpansRequest& r) {
  j = json{{"paragraph", r.paragraph}, {"top_k", r.top_k}};
}

void from_json(const json& j, ExtractSpansRequest& r) {
  r.paragraph = StringField(j, "paragraph");
  r.top_k = static_cast<int>(IntField(j, "top_k"));
}

void to_json(json& j, const ExtractSpansResponse& r) {
  j = json{{"spans", r.spans}};
}

void from_json(const json& j, ExtractSpansResponse& r) {
  const json& spans = Field(j, "spans");
  if (!spans.is_array()) throw ProtocolError("\"spans\" must be an array");
  r.spans.clear();
  for (const json& s : spans) r.spans.push_back(s.get<ExtractedSpan>());
}

}  // namespace qgen::backends

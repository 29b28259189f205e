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

#include "qgen/dataprep/triples.h"

#include <cctype>
#include <istream>
#include <ostream>
#include <string>
#include <utility>

#include "qgen/codes/control_codes.h"
#include "qgen/common/errors.h"
#include "qgen/text/tokenizer.h"

namespace qgen::dataprep {
namespace {

using nlohmann::json;

std::string Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string IdString(const json& id) {
  return id.is_string() ? id.get<std::string>() : id.dump();
}

void WriteLine(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

}  // namespace

void from_json(const json& j, QaPair& pair) {
  if (!j.is_object()) throw InputError("QA pair must be a JSON object");
  for (const char* key : {"question", "answer"}) {
    if (!j.contains(key) || !j[key].is_string()) {
      throw InputError(std::string("QA pair needs a string \"") + key + "\"");
    }
  }
  pair.question = j["question"].get<std::string>();
  pair.answer = j["answer"].get<std::string>();
  pair.source_id.clear();
  if (auto it = j.find("source_id"); it != j.end() && !it->is_null()) {
    if (!it->is_string() && !it->is_number_integer()) {
      throw InputError("QA pair source_id must be a string or integer");
    }
    pair.source_id = IdString(*it);
  }
}

void to_json(json& j, const TrainingTriple& t) {
  j = json{{"control_code", t.control_code},
           {"input_text", t.input_text},
           {"target_question", t.target_question},
           {"source_id", t.source_id}};
}

void from_json(const json& j, TrainingTriple& t) {
  t.control_code = j.at("control_code").get<std::string>();
  t.input_text = j.at("input_text").get<std::string>();
  t.target_question = j.at("target_question").get<std::string>();
  t.source_id = j.value("source_id", std::string());
}

std::string_view RejectReasonName(RejectReason reason) {
  switch (reason) {
    case RejectReason::kMalformed:
      return "malformed";
    case RejectReason::kEmptyFields:
      return "empty_fields";
    case RejectReason::kNoCode:
      return "no_extractable_code";
    case RejectReason::kAnswerTooShort:
      return "answer_too_short";
  }
  return "malformed";
}

void to_json(json& j, const RejectEntry& r) {
  j = json{{"line", r.line},
           {"source_id", r.source_id},
           {"reason", RejectReasonName(r.reason)},
           {"detail", r.detail}};
}

std::variant<TrainingTriple, RejectReason> BuildTriple(
    const QaPair& pair, const TripleOptions& options) {
  std::string question = Trim(pair.question);
  std::string answer = Trim(pair.answer);
  if (question.empty() || answer.empty()) return RejectReason::kEmptyFields;
  if (text::Tokenize(answer).size() < options.min_answer_tokens) {
    return RejectReason::kAnswerTooShort;
  }
  try {
    auto code = codes::CodeFromQuestion(question);
    return TrainingTriple{std::move(code.phrase), std::move(answer),
                          std::move(question), pair.source_id};
  } catch (const NoCodeExtractable&) {
    return RejectReason::kNoCode;
  }
}

TripleStats BuildTriples(std::istream& in, std::ostream& out,
                         std::ostream& rejects, const TripleOptions& options) {
  TripleStats stats;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    ++stats.pairs;
    RejectEntry reject;
    reject.line = line_no;
    json parsed = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (parsed.is_discarded()) {
      reject.detail = "invalid JSON";
      WriteLine(rejects, reject);
      ++stats.rejects;
      continue;
    }
    QaPair pair;
    try {
      pair = parsed.get<QaPair>();
    } catch (const InputError& e) {
      reject.detail = e.what();
      if (parsed.is_object() && parsed.contains("source_id")) {
        reject.source_id = IdString(parsed["source_id"]);
      }
      WriteLine(rejects, reject);
      ++stats.rejects;
      continue;
    }
    auto built = BuildTriple(pair, options);
    if (auto* triple = std::get_if<TrainingTriple>(&built)) {
      WriteLine(out, *triple);
      ++stats.triples;
    } else {
      reject.source_id = pair.source_id;
      reject.reason = std::get<RejectReason>(built);
      WriteLine(rejects, reject);
      ++stats.rejects;
    }
  }
  return stats;
}

}  // namespace qgen::dataprep

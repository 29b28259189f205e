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

#include "qgen/dataprep/eval_set.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <string>

#include "qgen/common/errors.h"
#include "qgen/text/tokenizer.h"

namespace qgen::dataprep {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(std::size_t index, const std::string& what) {
  throw InputError("eval record " + std::to_string(index) + ": " + what);
}

std::string RequireString(const json& j, const char* key, std::size_t index) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    Fail(index, std::string("missing string field \"") + key + "\"");
  }
  std::string value = it->get<std::string>();
  if (std::all_of(value.begin(), value.end(),
                  [](unsigned char c) { return std::isspace(c) != 0; })) {
    Fail(index, std::string("field \"") + key + "\" is empty");
  }
  return value;
}

}  // namespace

bool IsEvalDomain(std::string_view domain) {
  return std::any_of(kEvalDomainCounts.begin(), kEvalDomainCounts.end(),
                     [&](const auto& entry) { return entry.first == domain; });
}

void to_json(json& j, const EvalRecord& r) {
  j = r.paragraph;
  j["reference_question"] = r.reference_question;
}

void to_json(json& j, const EvalReport& r) {
  j = json{{"domain_counts", r.domain_counts},
           {"total", r.total},
           {"conforming", r.conforming}};
}

EvalSet LoadEvalSet(std::istream& in, bool strict) {
  EvalSet set;
  for (const auto& [domain, count] : kEvalDomainCounts) {
    set.report.domain_counts[std::string(domain)] = 0;
  }
  std::set<std::string> ids;
  std::string line;
  std::size_t index = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) Fail(index, "not a JSON object");
    if (!j.contains("id") || !(j["id"].is_string() || j["id"].is_number_integer())) {
      Fail(index, "missing field \"id\"");
    }
    RequireString(j, "text", index);
    RequireString(j, "headline", index);
    std::string domain = text::FoldCase(RequireString(j, "domain", index));
    if (!IsEvalDomain(domain)) Fail(index, "unknown domain \"" + domain + "\"");

    EvalRecord record;
    record.paragraph = j.get<Paragraph>();
    record.paragraph.article.domain = domain;
    record.reference_question = RequireString(j, "reference_question", index);
    if (!ids.insert(record.paragraph.id).second) {
      Fail(index, "duplicate paragraph id \"" + record.paragraph.id + "\"");
    }
    ++set.report.domain_counts[domain];
    set.records.push_back(std::move(record));
    ++index;
  }
  set.report.total = set.records.size();
  set.report.conforming =
      std::all_of(kEvalDomainCounts.begin(), kEvalDomainCounts.end(),
                  [&](const auto& entry) {
                    return set.report.domain_counts.at(std::string(entry.first)) ==
                           entry.second;
                  });
  if (strict && !set.report.conforming) {
    std::string detail;
    for (const auto& [domain, expected] : kEvalDomainCounts) {
      std::size_t got = set.report.domain_counts.at(std::string(domain));
      if (got != expected) {
        detail += " " + std::string(domain) + "=" + std::to_string(got) +
                  " (expected " + std::to_string(expected) + ")";
      }
    }
    throw InputError("eval set domain counts do not match:" + detail);
  }
  return set;
}

EvalSet LoadEvalSet(const std::filesystem::path& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return LoadEvalSet(in, strict);
}

}  // namespace qgen::dataprep

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

#ifndef QGEN_DATAPREP_EVAL_SET_H_
#define QGEN_DATAPREP_EVAL_SET_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qgen/common/paragraph.h"

namespace qgen::dataprep {

// Paragraphs per domain in the full evaluation set.
inline constexpr std::array<std::pair<std::string_view, std::size_t>, 6>
    kEvalDomainCounts = {{{"science", 55},
                          {"climate", 66},
                          {"technology", 98},
                          {"health", 110},
                          {"nyregion", 100},
                          {"business", 100}}};
inline constexpr std::size_t kEvalSetSize = 529;

bool IsEvalDomain(std::string_view domain);

// The domain lives in paragraph.article.domain, lowercased.
struct EvalRecord {
  Paragraph paragraph;
  std::string reference_question;

  bool operator==(const EvalRecord&) const = default;
};

// {"id","text","domain","headline","url"?,"reference_question"}
void to_json(nlohmann::json& j, const EvalRecord& r);

struct EvalReport {
  std::map<std::string, std::size_t> domain_counts;
  std::size_t total = 0;
  // True when every domain count matches kEvalDomainCounts.
  bool conforming = false;
};

void to_json(nlohmann::json& j, const EvalReport& r);

struct EvalSet {
  std::vector<EvalRecord> records;
  EvalReport report;
};

// Parses and validates an evaluation JSONL stream. Throws InputError naming
// the 0-based record index on a schema violation, unknown domain, or
// duplicate id. In strict mode a set whose domain counts differ from
// kEvalDomainCounts is also an InputError.
EvalSet LoadEvalSet(std::istream& in, bool strict);
EvalSet LoadEvalSet(const std::filesystem::path& path, bool strict);

}  // namespace qgen::dataprep

#endif  // QGEN_DATAPREP_EVAL_SET_H_

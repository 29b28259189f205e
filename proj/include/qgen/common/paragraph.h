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

#ifndef QGEN_COMMON_PARAGRAPH_H_
#define QGEN_COMMON_PARAGRAPH_H_

#include <string>

#include "json.hpp"

namespace qgen {

// Where a paragraph came from. Carried through to review items and FAQ
// entries so editors see the article context.
struct ArticleRef {
  std::string url;
  std::string headline;
  std::string domain;

  bool operator==(const ArticleRef&) const = default;
};

// An input news passage.
struct Paragraph {
  std::string id;
  std::string text;
  ArticleRef article;

  bool operator==(const Paragraph&) const = default;
};

void to_json(nlohmann::json& j, const ArticleRef& ref);
void from_json(const nlohmann::json& j, ArticleRef& ref);

// Wire form is flat: {"id","text","domain","headline","url"}. Only "id" and
// "text" are required.
void to_json(nlohmann::json& j, const Paragraph& p);
void from_json(const nlohmann::json& j, Paragraph& p);

}  // namespace qgen

#endif  // QGEN_COMMON_PARAGRAPH_H_

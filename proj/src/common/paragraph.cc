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

#include "qgen/common/paragraph.h"

#include "qgen/common/errors.h"

namespace qgen {

using nlohmann::json;

void to_json(json& j, const ArticleRef& ref) {
  j = json{{"url", ref.url}, {"headline", ref.headline}, {"domain", ref.domain}};
}

void from_json(const json& j, ArticleRef& ref) {
  if (!j.is_object()) throw InputError("article_ref must be an object");
  ref.url = j.value("url", "");
  ref.headline = j.value("headline", "");
  ref.domain = j.value("domain", "");
}

void to_json(json& j, const Paragraph& p) {
  j = json{{"id", p.id},
           {"text", p.text},
           {"domain", p.article.domain},
           {"headline", p.article.headline},
           {"url", p.article.url}};
}

void from_json(const json& j, Paragraph& p) {
  if (!j.is_object()) throw InputError("paragraph record must be an object");
  auto id = j.find("id");
  auto text = j.find("text");
  if (id == j.end() || !(id->is_string() || id->is_number_integer())) {
    throw InputError("paragraph record is missing \"id\"");
  }
  if (text == j.end() || !text->is_string()) {
    throw InputError("paragraph record is missing \"text\"");
  }
  p.id = id->is_string() ? id->get<std::string>() : id->dump();
  p.text = text->get<std::string>();
  p.article.domain = j.value("domain", "");
  p.article.headline = j.value("headline", "");
  p.article.url = j.value("url", "");
}

}  // namespace qgen

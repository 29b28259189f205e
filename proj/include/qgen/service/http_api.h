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

#ifndef QGEN_SERVICE_HTTP_API_H_
#define QGEN_SERVICE_HTTP_API_H_

#include <filesystem>
#include <optional>
#include <string>

#include "qgen/service/faq_search.h"
#include "qgen/service/review_store.h"

namespace httplib {
class Server;
}  // namespace httplib

namespace qgen::service {

struct ServiceOptions {
  // When nonempty, every /v1 request must send "Authorization: Bearer <token>".
  std::string auth_token;
  // Static assets served at "/".
  std::optional<std::filesystem::path> ui_dir;
  FaqSearchConfig faq;
};

// JSON API over a ReviewStore:
//
//   GET  /v1/review?state=&domain=&article=
//   POST /v1/review/{id}/transition  {"action","actor","edited_text"?,"expected_version"}
//   GET  /v1/faq/search?q=&top_k=&min_sim=
//   POST /v1/ingest                  PipelineResult, [PipelineResult], or
//                                    {"results": [...], "article_ref"?}
//   GET  /v1/items/{id}
//   GET  /v1/items/{id}/history
//
// Every body carries "version": the item version for item responses, the
// store sequence number otherwise. Errors are {"error", "version"} with 400
// (bad request), 401 (token), 404 (unknown item), 409 (stale
// expected_version; "version" is the current one) or 422 (illegal
// transition).
class ReviewApi {
 public:
  // Throws ConfigError for an unusable ui_dir or FAQ config.
  ReviewApi(ReviewStore& store, ServiceOptions options);

  void Register(httplib::Server& server) const;

 private:
  ReviewStore& store_;
  ServiceOptions options_;
};

}  // namespace qgen::service

#endif  // QGEN_SERVICE_HTTP_API_H_

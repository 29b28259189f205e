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

#include "qgen/service/http_api.h"

#include <charconv>
#include <functional>
#include <string>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "qgen/common/errors.h"

namespace qgen::service {
namespace {

using nlohmann::json;

constexpr char kJson[] = "application/json";

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

// Runs a handler and maps library errors onto HTTP statuses.
void Guard(const ReviewStore& store, httplib::Response& res,
           const std::function<void()>& handler) {
  auto fail = [&](int status, const std::string& message) {
    Reply(res, status, json{{"error", message}, {"version", store.version()}});
  };
  try {
    handler();
  } catch (const ConflictError& e) {
    Reply(res, 409, json{{"error", e.what()}, {"version", e.current_version()}});
  } catch (const NotFoundError& e) {
    fail(404, e.what());
  } catch (const StateError& e) {
    fail(422, e.what());
  } catch (const InputError& e) {
    fail(400, e.what());
  } catch (const json::exception& e) {
    fail(400, std::string("bad request: ") + e.what());
  }
}

json ParseBody(const httplib::Request& req) {
  json body = json::parse(req.body, nullptr, /*allow_exceptions=*/false);
  if (body.is_discarded()) throw InputError("request body is not valid JSON");
  return body;
}

template <typename T>
T NumberParam(const httplib::Request& req, const char* name, T fallback) {
  if (!req.has_param(name)) return fallback;
  std::string raw = req.get_param_value(name);
  T value{};
  auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
  if (ec != std::errc() || ptr != raw.data() + raw.size()) {
    throw InputError(std::string("bad ") + name + " parameter \"" + raw + "\"");
  }
  return value;
}

std::vector<pipeline::PipelineResult> ResultsFrom(const json& body,
                                                  std::optional<ArticleRef>& ref) {
  std::vector<pipeline::PipelineResult> results;
  const json* list = &body;
  if (body.is_object() && body.contains("results")) {
    list = &body["results"];
    if (body.contains("article_ref")) ref = body["article_ref"].get<ArticleRef>();
  }
  if (list->is_array()) {
    for (const auto& r : *list) results.push_back(r.get<pipeline::PipelineResult>());
  } else if (list->is_object()) {
    results.push_back(list->get<pipeline::PipelineResult>());
  } else {
    throw InputError("ingest expects a pipeline result or a list of them");
  }
  return results;
}

}  // namespace

ReviewApi::ReviewApi(ReviewStore& store, ServiceOptions options)
    : store_(store), options_(std::move(options)) {
  options_.faq.Validate();
  if (options_.ui_dir && !std::filesystem::is_directory(*options_.ui_dir)) {
    throw ConfigError("ui directory " + options_.ui_dir->string() +
                      " does not exist");
  }
}

void ReviewApi::Register(httplib::Server& server) const {
  if (options_.ui_dir) server.set_mount_point("/", options_.ui_dir->string());

  server.set_pre_routing_handler(
      [this](const httplib::Request& req, httplib::Response& res) {
        if (options_.auth_token.empty() || req.path.rfind("/v1/", 0) != 0) {
          return httplib::Server::HandlerResponse::Unhandled;
        }
        if (req.get_header_value("Authorization") !=
            "Bearer " + options_.auth_token) {
          Reply(res, 401, json{{"error", "missing or invalid bearer token"},
                               {"version", store_.version()}});
          return httplib::Server::HandlerResponse::Handled;
        }
        return httplib::Server::HandlerResponse::Unhandled;
      });

  server.Get("/v1/review", [this](const httplib::Request& req,
                                  httplib::Response& res) {
    Guard(store_, res, [&] {
      ReviewFilter filter;
      if (req.has_param("state")) {
        filter.state = ParseState(req.get_param_value("state"));
        if (!filter.state) {
          throw InputError("unknown state \"" + req.get_param_value("state") + "\"");
        }
      }
      if (req.has_param("domain")) filter.domain = req.get_param_value("domain");
      if (req.has_param("article")) filter.article = req.get_param_value("article");
      uint64_t version = store_.version();
      Reply(res, 200, json{{"version", version}, {"items", store_.List(filter)}});
    });
  });

  server.Post(R"(/v1/review/([^/]+)/transition)",
              [this](const httplib::Request& req, httplib::Response& res) {
                Guard(store_, res, [&] {
                  json body = ParseBody(req);
                  auto action = ParseAction(body.at("action").get<std::string>());
                  if (!action) {
                    throw InputError("unknown action " + body["action"].dump());
                  }
                  if (!body.contains("expected_version")) {
                    throw InputError("expected_version is required");
                  }
                  std::optional<std::string> edited;
                  if (body.contains("edited_text") && !body["edited_text"].is_null()) {
                    edited = body["edited_text"].get<std::string>();
                  }
                  auto item = store_.Transition(
                      req.matches[1], *action, body.at("actor").get<std::string>(),
                      edited, body["expected_version"].get<int64_t>());
                  Reply(res, 200, json{{"version", item.version}, {"item", item}});
                });
              });

  server.Get("/v1/faq/search", [this](const httplib::Request& req,
                                      httplib::Response& res) {
    Guard(store_, res, [&] {
      std::string q = req.get_param_value("q");
      if (q.empty()) throw InputError("q is required");
      FaqSearchConfig cfg = options_.faq;
      cfg.top_k = NumberParam<std::size_t>(req, "top_k", cfg.top_k);
      if (req.has_param("min_sim")) {
        try {
          cfg.min_sim = std::stod(req.get_param_value("min_sim"));
        } catch (const std::exception&) {
          throw InputError("bad min_sim parameter");
        }
        if (!(cfg.min_sim >= 0.0 && cfg.min_sim <= 1.0)) {
          throw InputError("min_sim must be in [0, 1]");
        }
      }
      uint64_t version = store_.version();
      Reply(res, 200, json{{"version", version},
                           {"results", FaqSearch(q, store_.PublishedFaq(), cfg)}});
    });
  });

  server.Post("/v1/ingest", [this](const httplib::Request& req,
                                   httplib::Response& res) {
    Guard(store_, res, [&] {
      std::optional<ArticleRef> ref;
      auto results = ResultsFrom(ParseBody(req), ref);
      auto report = store_.Ingest(results, ref);
      Reply(res, 200, json{{"version", store_.version()},
                           {"created", report.created},
                           {"collapsed", report.collapsed},
                           {"audit_rows", report.audit_rows}});
    });
  });

  server.Get(R"(/v1/items/([^/]+))", [this](const httplib::Request& req,
                                            httplib::Response& res) {
    Guard(store_, res, [&] {
      auto item = store_.Get(req.matches[1]);
      Reply(res, 200, json{{"version", item.version}, {"item", item}});
    });
  });

  server.Get(R"(/v1/items/([^/]+)/history)", [this](const httplib::Request& req,
                                                    httplib::Response& res) {
    Guard(store_, res, [&] {
      auto item = store_.Get(req.matches[1]);
      Reply(res, 200, json{{"version", item.version},
                           {"id", item.id},
                           {"state", StateName(item.state)},
                           {"history", item.history}});
    });
  });
}

}  // namespace qgen::service

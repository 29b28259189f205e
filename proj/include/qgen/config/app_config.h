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

#ifndef QGEN_CONFIG_APP_CONFIG_H_
#define QGEN_CONFIG_APP_CONFIG_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qgen/backends/client.h"
#include "qgen/pipeline/pipeline.h"
#include "qgen/service/faq_search.h"

namespace qgen::config {

// Backend slots. squad_generator talks the generator protocol.
enum class BackendSlot {
  kGenerator,
  kQaScorer,
  kInstruct,
  kSpanExtractor,
  kSquadGenerator,
};

inline constexpr BackendSlot kAllSlots[] = {
    BackendSlot::kGenerator,     BackendSlot::kQaScorer,
    BackendSlot::kInstruct,      BackendSlot::kSpanExtractor,
    BackendSlot::kSquadGenerator,
};

std::string_view SlotName(BackendSlot slot);
backends::Role SlotRole(BackendSlot slot);

struct BackendEndpoint {
  std::string url;
  int timeout_ms = 30000;
  int max_retries = 2;
  std::string token;
};

struct ServiceConfig {
  std::string listen_addr = "127.0.0.1:8080";
  std::string store_path;
  std::string auth_token;
  std::string ui_dir;
};

struct AppConfig {
  std::map<BackendSlot, BackendEndpoint> backends;
  pipeline::PipelineConfig pipeline;
  ServiceConfig service;
  service::FaqSearchConfig faq;
};

using EnvMap = std::map<std::string, std::string>;

// The CONSISTENT_* variables of the process environment.
EnvMap ProcessEnv();

// Reads a JSON config file (or defaults when path is empty), applies env
// overrides and validates. Unknown keys in the file or unknown CONSISTENT_*
// variables are a ConfigError, as is any out-of-range value.
//
// Env names: CONSISTENT_<SECTION>_<KEY> for the filter, codes, decode,
// service, faq and baselines sections, CONSISTENT_SEPARATOR and
// CONSISTENT_BACKEND_<ROLE>_{URL,TIMEOUT_MS,MAX_RETRIES,TOKEN}. List values
// are comma separated.
AppConfig LoadConfig(const std::optional<std::filesystem::path>& path,
                     const EnvMap& env);

// Same, from an already parsed document.
AppConfig ConfigFromJson(const nlohmann::json& doc, const EnvMap& env);

// Effective configuration with tokens replaced by "***".
nlohmann::json RedactedJson(const AppConfig& cfg);

// ConfigError naming the first slot in `slots` without an endpoint.
void RequireBackends(const AppConfig& cfg,
                     const std::vector<BackendSlot>& slots);

// Clients for every configured slot. Mock endpoints get an in-process
// backend.
pipeline::PipelineBackends ConnectBackends(const AppConfig& cfg);

}  // namespace qgen::config

#endif  // QGEN_CONFIG_APP_CONFIG_H_

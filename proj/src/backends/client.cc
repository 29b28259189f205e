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

#include "qgen/backends/client.h"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

#include "qgen/common/errors.h"

namespace qgen::backends {
namespace {

using nlohmann::json;

constexpr std::size_t kBodyExcerpt = 200;

void DefaultSleep(std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }

}  // namespace

BackendClient::BackendClient(BackendHandle handle,
                             std::shared_ptr<Transport> transport,
                             Sleeper sleeper)
    : handle_(std::move(handle)),
      transport_(std::move(transport)),
      sleeper_(sleeper ? std::move(sleeper) : Sleeper(DefaultSleep)) {}

std::string BackendClient::Call(Role expected, const std::string& body) const {
  if (handle_.role != expected) {
    throw std::logic_error("backend handle for role " +
                           std::string(RoleName(handle_.role)) +
                           " used as " + std::string(RoleName(expected)));
  }
  const std::string_view route = RoleRoute(expected);
  const int attempts = 1 + std::max(0, handle_.max_retries);
  std::string last_error;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    if (attempt > 1) {
      sleeper_(std::chrono::milliseconds(
          static_cast<long long>(handle_.backoff_base_ms) << (attempt - 2)));
    }
    WireResponse resp;
    try {
      resp = transport_->Post(handle_, route, body);
    } catch (const TransportFailure& e) {
      last_error = e.what();
      continue;
    }
    if (resp.status < 200 || resp.status >= 300) {
      throw ProtocolError(std::string(RoleName(expected)) + " backend returned " +
                              std::to_string(resp.status) + ": " +
                              resp.body.substr(0, kBodyExcerpt),
                          resp.status);
    }
    return std::move(resp.body);
  }
  throw BackendUnavailable(std::string(RoleName(expected)) + " backend at " +
                               handle_.endpoint + " unavailable after " +
                               std::to_string(attempts) +
                               " attempts: " + last_error,
                           attempts);
}

std::vector<std::string> BackendClient::Generate(const std::string& prompt,
                                                 const DecodeConfig& decode,
                                                 int n) const {
  if (n < 1) throw std::invalid_argument("Generate: n must be >= 1");
  GenerateRequest req{prompt, decode, n};
  auto resp = ParseWire<GenerateResponse>(
      Call(Role::kGenerator, json(req).dump()));
  std::vector<std::string> outputs;
  for (auto& o : resp.outputs) {
    if (static_cast<int>(outputs.size()) >= n) break;
    if (!o.empty()) outputs.push_back(std::move(o));
  }
  return outputs;
}

QaScore BackendClient::QaConfidence(const std::string& question,
                                    const std::string& paragraph) const {
  QaScoreRequest req{question, paragraph};
  return ParseWire<QaScore>(Call(Role::kQaScorer, json(req).dump()));
}

std::string BackendClient::Instruct(const std::string& prompt) const {
  InstructRequest req{prompt};
  return ParseWire<InstructResponse>(Call(Role::kInstruct, json(req).dump()))
      .text;
}

std::vector<ExtractedSpan> BackendClient::ExtractSpans(
    const std::string& paragraph, int top_k) const {
  if (top_k <= 0) return {};
  ExtractSpansRequest req{paragraph, top_k};
  auto resp = ParseWire<ExtractSpansResponse>(
      Call(Role::kSpanExtractor, json(req).dump()));
  std::stable_sort(resp.spans.begin(), resp.spans.end(),
                   [](const ExtractedSpan& a, const ExtractedSpan& b) {
                     if (a.probability != b.probability) {
                       return a.probability > b.probability;
                     }
                     return a.start < b.start;
                   });
  if (resp.spans.size() > static_cast<std::size_t>(top_k)) {
    resp.spans.resize(static_cast<std::size_t>(top_k));
  }
  return resp.spans;
}

}  // namespace qgen::backends

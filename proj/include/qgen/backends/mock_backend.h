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

#ifndef QGEN_BACKENDS_MOCK_BACKEND_H_
#define QGEN_BACKENDS_MOCK_BACKEND_H_

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qgen/backends/client.h"
#include "qgen/backends/transport.h"
#include "qgen/backends/wire.h"

namespace qgen::backends {

// Records every request body a transport sends, in call order.
class WireLog {
 public:
  struct Entry {
    std::string route;
    std::string body;
  };

  void Record(std::string_view route, const std::string& body);
  std::vector<Entry> Entries() const;
  std::vector<Entry> EntriesFor(std::string_view route) const;
  void Clear();

 private:
  mutable std::mutex mu_;
  std::vector<Entry> entries_;
};

// Fixture-driven stand-in for all four model roles.
//
// A fixture is a JSON document with one optional section per role. Lookups
// try explicit rules first and fall back to a per-role default:
//
//   {
//     "seed": 7,
//     "separator": " [SEP] ",
//     "generator": {
//       "rules": [{"prompt": "...", "outputs": ["..."]},
//                 {"code": "...", "outputs": ["..."]}],
//       "templates": ["What does {{code}} mean for readers?"]
//     },
//     "qa_scorer": {
//       "rules": [{"question": "...", "paragraph": "...",
//                  "answer": "...", "confidence": 0.8}],
//       "default": {"mode": "strict"}            // or "hash" with "grid"
//     },
//     "instruct": {
//       "rules": [{"prompt": "..."|"contains": "...", "reply": "Yes"}],
//       "default": {"mode": "fixed", "reply": "Yes"}  // or "hash" + "replies"
//     },
//     "span_extractor": {
//       "rules": [{"paragraph_contains": "...",
//                  "spans": [{"text": "...", "probability": 0.9}]}]
//     },
//     "failures": {"generator": {"mode": "unavailable"}}
//   }
//
// "code" rules match prompts that begin with code + separator. Without a
// matching rule the generator fills a template chosen by a hash chain over
// (prompt, decode seed, fixture seed, sample index); greedy decoding ignores
// the seeds. The "hash" qa default maps (question, paragraph, seed) to a
// confidence on a grid of 1/grid steps, the strict default answers
// confidence 0. Failure modes: "unavailable" (transport failure on every
// call), "flaky" with "fail_first" (the first N calls fail), and "status"
// with "status"/"body" (a fixed non-2xx reply).
//
// Responses depend only on the fixture and the request, so runs are
// byte-reproducible.
class MockBackend {
 public:
  explicit MockBackend(nlohmann::json fixture);

  // Serves one request the way an HTTP backend would.
  WireResponse Handle(std::string_view route, const std::string& body);

  const nlohmann::json& fixture() const { return fixture_; }

 private:
  GenerateResponse Generate(const GenerateRequest& req) const;
  QaScore Score(const QaScoreRequest& req) const;
  InstructResponse Instruct(const InstructRequest& req) const;
  ExtractSpansResponse Spans(const ExtractSpansRequest& req) const;

  nlohmann::json fixture_;
  uint64_t seed_ = 0;
  std::map<std::string, std::atomic<int>> calls_;
};

// Transport that answers from a MockBackend in-process, still going through
// the JSON wire encoding. Optionally logs every request.
class MockTransport : public Transport {
 public:
  explicit MockTransport(std::shared_ptr<MockBackend> backend,
                         std::shared_ptr<WireLog> log = nullptr);

  WireResponse Post(const BackendHandle& handle, std::string_view route,
                    const std::string& body) override;

  const std::shared_ptr<WireLog>& log() const { return log_; }

 private:
  std::shared_ptr<MockBackend> backend_;
  std::shared_ptr<WireLog> log_;
};

// Resolves the <fixture-id> of a "mock:<fixture-id>" endpoint: a built-in
// fixture name ("bitcoin", "random") or a path to a fixture file. Throws
// ConfigError if neither exists.
nlohmann::json LoadMockFixture(std::string_view fixture_id);

// The built-in fixture names.
std::vector<std::string> BuiltinFixtureNames();

// Client for a handle: in-process mock for "mock:" endpoints, HTTP
// otherwise. Every call builds a fresh mock backend from its fixture.
BackendClient ConnectBackend(const BackendHandle& handle,
                             std::shared_ptr<WireLog> log = nullptr,
                             Sleeper sleeper = {});

}  // namespace qgen::backends

#endif  // QGEN_BACKENDS_MOCK_BACKEND_H_

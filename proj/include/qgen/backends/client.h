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

#ifndef QGEN_BACKENDS_CLIENT_H_
#define QGEN_BACKENDS_CLIENT_H_

#include <chrono>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "qgen/backends/transport.h"
#include "qgen/backends/wire.h"

namespace qgen::backends {

// Addressing and retry policy for one model role. Immutable once built.
struct BackendHandle {
  Role role = Role::kGenerator;
  // "http://host:port[/prefix]" or "mock:<fixture-id>".
  std::string endpoint;
  int timeout_ms = 30000;
  int max_retries = 2;
  // Delay before retry i (1-based) is backoff_base_ms * 2^(i-1).
  int backoff_base_ms = 200;
  // Sent as "Authorization: Bearer <token>" when non-empty.
  std::string bearer_token;

  bool IsMock() const { return endpoint.rfind("mock:", 0) == 0; }
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

// Typed calls for one backend role. Calls are independent; a client may be
// shared across threads.
//
// Every call makes at most 1 + max_retries attempts. Transport failures are
// retried with exponential backoff and end in BackendUnavailable; a non-2xx
// status or a payload that violates the wire contract raises ProtocolError
// immediately. Calling a method that does not match the handle's role is a
// programming error and throws std::logic_error.
class BackendClient {
 public:
  BackendClient(BackendHandle handle, std::shared_ptr<Transport> transport,
                Sleeper sleeper = {});

  const BackendHandle& handle() const { return handle_; }

  // At most n non-empty outputs.
  std::vector<std::string> Generate(const std::string& prompt,
                                    const DecodeConfig& decode, int n) const;

  QaScore QaConfidence(const std::string& question,
                       const std::string& paragraph) const;

  // Raw reply text, unmodified.
  std::string Instruct(const std::string& prompt) const;

  // At most top_k spans, sorted by descending probability (ties by start
  // offset).
  std::vector<ExtractedSpan> ExtractSpans(const std::string& paragraph,
                                          int top_k) const;

 private:
  std::string Call(Role expected, const std::string& body) const;

  BackendHandle handle_;
  std::shared_ptr<Transport> transport_;
  Sleeper sleeper_;
};

}  // namespace qgen::backends

#endif  // QGEN_BACKENDS_CLIENT_H_

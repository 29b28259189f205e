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

#ifndef QGEN_BACKENDS_TRANSPORT_H_
#define QGEN_BACKENDS_TRANSPORT_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace qgen::backends {

struct BackendHandle;

struct WireResponse {
  int status = 200;
  std::string body;
};

// Retryable delivery failure: timeout, refused connection, reset.
class TransportFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Moves one JSON request body to a backend and returns the raw reply.
// Implementations must be safe to call concurrently; payloads of concurrent
// calls never interleave.
class Transport {
 public:
  virtual ~Transport() = default;

  virtual WireResponse Post(const BackendHandle& handle, std::string_view route,
                            const std::string& body) = 0;
};

// JSON over HTTP. One short-lived connection per call.
class HttpTransport : public Transport {
 public:
  WireResponse Post(const BackendHandle& handle, std::string_view route,
                    const std::string& body) override;
};

}  // namespace qgen::backends

#endif  // QGEN_BACKENDS_TRANSPORT_H_

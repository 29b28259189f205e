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

#include "qgen/backends/transport.h"

#include <string>

#include "httplib.h"
#include "qgen/backends/client.h"
#include "qgen/common/errors.h"

namespace qgen::backends {

WireResponse HttpTransport::Post(const BackendHandle& handle,
                                 std::string_view route,
                                 const std::string& body) {
  // Split "http://host:port/prefix" into the client base and a path prefix.
  std::string base = handle.endpoint;
  std::string prefix;
  if (auto scheme = base.find("://"); scheme != std::string::npos) {
    if (auto slash = base.find('/', scheme + 3); slash != std::string::npos) {
      prefix = base.substr(slash);
      base.resize(slash);
    }
  }
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();

  httplib::Client client(base);
  if (!client.is_valid()) {
    throw ConfigError("invalid backend endpoint \"" + handle.endpoint + "\"");
  }
  const auto timeout = std::chrono::milliseconds(handle.timeout_ms);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  client.set_keep_alive(false);

  httplib::Headers headers;
  if (!handle.bearer_token.empty()) {
    headers.emplace("Authorization", "Bearer " + handle.bearer_token);
  }
  auto res = client.Post(prefix + std::string(route), headers, body,
                         "application/json");
  if (!res) {
    throw TransportFailure(handle.endpoint + std::string(route) + ": " +
                           httplib::to_string(res.error()));
  }
  return {res->status, res->body};
}

}  // namespace qgen::backends

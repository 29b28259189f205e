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

#ifndef QGEN_COMMON_ERRORS_H_
#define QGEN_COMMON_ERRORS_H_

#include <stdexcept>
#include <string>

namespace qgen {

// Base class for every error raised by the library. The CLI maps the
// subclasses below onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid or inconsistent configuration. Raised at load time.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed or unusable user input (paragraphs, eval records, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// A backend could not be reached within the retry budget.
class BackendUnavailable : public Error {
 public:
  BackendUnavailable(const std::string& message, int attempts)
      : Error(message), attempts_(attempts) {}

  // Number of attempts made before giving up.
  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

// A backend answered, but the answer violates the wire contract.
class ProtocolError : public Error {
 public:
  explicit ProtocolError(const std::string& message, int status = 0)
      : Error(message), status_(status) {}

  // HTTP status of the offending response, 0 when not applicable.
  int status() const { return status_; }

 private:
  int status_;
};

// No control code could be extracted (e.g. a stopword-only question).
class NoCodeExtractable : public Error {
 public:
  using Error::Error;
};

// Every required backend failed; the pipeline cannot produce candidates.
class PipelineUnavailable : public Error {
 public:
  using Error::Error;
};

// Review workflow: the requested action is illegal from the current state.
class StateError : public Error {
 public:
  using Error::Error;
};

// Review workflow: optimistic version check failed.
class ConflictError : public Error {
 public:
  ConflictError(const std::string& message, long current_version)
      : Error(message), current_version_(current_version) {}

  long current_version() const { return current_version_; }

 private:
  long current_version_;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

}  // namespace qgen

#endif  // QGEN_COMMON_ERRORS_H_

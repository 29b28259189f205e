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

#ifndef QGEN_SRC_BACKENDS_BUILTIN_FIXTURES_H_
#define QGEN_SRC_BACKENDS_BUILTIN_FIXTURES_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qgen::backends {

// JSON text of a built-in mock fixture, if one has this id.
std::optional<std::string_view> BuiltinFixture(std::string_view id);

std::vector<std::string> BuiltinFixtureIds();

}  // namespace qgen::backends

#endif  // QGEN_SRC_BACKENDS_BUILTIN_FIXTURES_H_

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

#ifndef QGEN_TEXT_SIMILARITY_H_
#define QGEN_TEXT_SIMILARITY_H_

#include <cstddef>
#include <string_view>

namespace qgen::text {

// Classic edit distance over bytes.
std::size_t Levenshtein(std::string_view a, std::string_view b);

// 1 - Levenshtein(a, b) / max(|a|, |b|). Two empty strings are identical.
double LevenshteinSimilarity(std::string_view a, std::string_view b);

}  // namespace qgen::text

#endif  // QGEN_TEXT_SIMILARITY_H_

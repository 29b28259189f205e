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

#ifndef QGEN_TEXT_TOKENIZER_H_
#define QGEN_TEXT_TOKENIZER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qgen::text {

// A word token. Punctuation is never emitted as a token; it only separates
// sentences and phrase chunks.
struct Token {
  std::string surface;
  // ASCII case-folded surface. Non-ASCII bytes are kept as-is.
  std::string normalized;
  std::size_t sentence_index = 0;
  // Token offset in the document. Strictly increasing.
  std::size_t position = 0;
  // Punctuation-delimited run within a sentence. Candidate phrases never
  // span two chunks.
  std::size_t chunk_index = 0;
  // Byte span of the surface form in the source text.
  std::size_t offset = 0;
  std::size_t length = 0;
  bool is_uppercase_initial = false;
  bool is_acronym = false;
  bool is_stopword = false;
};

// Splits UTF-8 text into word tokens and assigns sentence indices.
//
// Words are runs of letters and digits (any byte >= 0x80 counts as a letter).
// Inside a word, '-', '\'', '.' and the right single quote are kept when they
// are followed by another letter or digit, so "B.1.351", "Wi-Fi" and "don't"
// stay whole. A trailing period is attached to the word only for entries of
// the abbreviation guard list ("Dr.", "U.S.") and for single-letter
// initials; such periods never end a sentence. Any other '.', '!' or '?'
// ends the current sentence.
std::vector<Token> Tokenize(std::string_view text);

// Lower-cases ASCII letters.
std::string FoldCase(std::string_view s);

// True if the lower-cased word (without trailing period) is an abbreviation
// that never ends a sentence.
bool IsGuardedAbbreviation(std::string_view word);

}  // namespace qgen::text

#endif  // QGEN_TEXT_TOKENIZER_H_

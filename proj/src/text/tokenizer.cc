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

#include "qgen/text/tokenizer.h"

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qgen/text/stopwords.h"

namespace qgen::text {
namespace {

enum class CharClass { kWord, kSpace, kNewline, kConnector, kTerminator,
                       kPunct };

struct Char {
  char32_t code = 0;
  std::size_t offset = 0;
  std::size_t length = 0;
  CharClass cls = CharClass::kPunct;
};

// Abbreviations whose trailing period never ends a sentence. Lower-case,
// without the trailing period. Sorted.
constexpr auto kAbbreviations = std::to_array<std::string_view>({
    "adm", "apr", "aug", "capt", "cmdr", "co", "col", "corp", "dec", "dept",
    "dr", "e.g", "est", "etc", "feb", "fig", "gen", "gov", "i.e", "inc",
    "jan", "jr", "jul", "jun", "lt", "ltd", "mar", "mr", "mrs", "ms", "mt",
    "nov", "oct", "prof", "rep", "rev", "sen", "sep", "sept", "sgt",
    "sr", "st", "u.k", "u.n", "u.s", "vs",
});

CharClass Classify(char32_t c) {
  if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
    return CharClass::kSpace;
  }
  if (c == '\n') return CharClass::kNewline;
  if (c < 0x80) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
        (c >= '0' && c <= '9')) {
      return CharClass::kWord;
    }
    if (c == '-' || c == '\'') return CharClass::kConnector;
    if (c == '.' || c == '!' || c == '?') return CharClass::kTerminator;
    return CharClass::kPunct;
  }
  if (c == 0x2019) return CharClass::kConnector;  // right single quote
  if (c == 0x2026) return CharClass::kTerminator;  // ellipsis
  if (c == 0x00A0 || (c >= 0x2000 && c <= 0x200B) || c == 0x3000) {
    return CharClass::kSpace;
  }
  if ((c >= 0x00A1 && c <= 0x00BF) || c == 0x00D7 || c == 0x00F7 ||
      (c >= 0x2010 && c <= 0x206F) || (c >= 0x3001 && c <= 0x3003)) {
    return CharClass::kPunct;
  }
  return CharClass::kWord;
}

// Decodes UTF-8 leniently: invalid sequences become single-byte letters so
// that no input is rejected.
std::vector<Char> Decode(std::string_view text) {
  std::vector<Char> out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    auto b = static_cast<unsigned char>(text[i]);
    char32_t code = b;
    std::size_t len = 1;
    if (b >= 0xC0) {
      std::size_t want = b >= 0xF0 ? 4 : b >= 0xE0 ? 3 : 2;
      if (i + want <= text.size()) {
        char32_t c = b & (0x3F >> (want - 1));
        bool ok = true;
        for (std::size_t k = 1; k < want; ++k) {
          auto cb = static_cast<unsigned char>(text[i + k]);
          if ((cb & 0xC0) != 0x80) {
            ok = false;
            break;
          }
          c = (c << 6) | (cb & 0x3F);
        }
        if (ok) {
          code = c;
          len = want;
        }
      }
    }
    out.push_back({code, i, len, Classify(code)});
    i += len;
  }
  return out;
}

bool IsDottedInitials(std::string_view word) {
  // "a.m", "p.m", "u.s.a": single letters separated by periods.
  if (word.size() < 3) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    bool letter = (word[i] >= 'a' && word[i] <= 'z');
    if (i % 2 == 0 ? !letter : word[i] != '.') return false;
  }
  return word.size() % 2 == 1;
}

bool IsSingleLetter(std::string_view word) {
  return word.size() == 1 && word[0] >= 'a' && word[0] <= 'z';
}

void FillFlags(Token& tok) {
  int letters = 0;
  int upper = 0;
  for (char c : tok.surface) {
    if (c >= 'A' && c <= 'Z') {
      ++letters;
      ++upper;
    } else if (c >= 'a' && c <= 'z') {
      ++letters;
    }
  }
  tok.is_uppercase_initial = !tok.surface.empty() && tok.surface[0] >= 'A' &&
                             tok.surface[0] <= 'Z';
  tok.is_acronym = letters >= 2 && upper == letters;
  std::string_view key = tok.normalized;
  if (!key.empty() && key.back() == '.') key.remove_suffix(1);
  tok.is_stopword = IsStopword(key);
}

}  // namespace

std::string FoldCase(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool IsGuardedAbbreviation(std::string_view word) {
  return std::binary_search(kAbbreviations.begin(), kAbbreviations.end(),
                            word) ||
         IsDottedInitials(word) || IsSingleLetter(word);
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  const std::vector<Char> chars = Decode(text);

  std::size_t sentence = 0;
  std::size_t chunk = 0;
  bool sentence_has_tokens = false;
  bool pending_sentence_break = false;
  bool pending_chunk_break = false;
  int newline_run = 0;

  std::size_t i = 0;
  while (i < chars.size()) {
    const Char& ch = chars[i];
    if (ch.cls != CharClass::kWord) {
      switch (ch.cls) {
        case CharClass::kNewline:
          // A blank line separates sentences.
          if (++newline_run >= 2) pending_sentence_break = true;
          break;
        case CharClass::kSpace:
          break;
        case CharClass::kTerminator:
          pending_sentence_break = true;
          pending_chunk_break = true;
          newline_run = 0;
          break;
        default:
          pending_chunk_break = true;
          newline_run = 0;
          break;
      }
      ++i;
      continue;
    }
    newline_run = 0;

    // Scan one word.
    std::size_t end = i + 1;
    while (end < chars.size()) {
      CharClass cls = chars[end].cls;
      if (cls == CharClass::kWord) {
        ++end;
      } else if ((cls == CharClass::kConnector ||
                  (cls == CharClass::kTerminator && chars[end].code == '.')) &&
                 end + 1 < chars.size() &&
                 chars[end + 1].cls == CharClass::kWord) {
        end += 2;
      } else {
        break;
      }
    }
    std::size_t byte_begin = chars[i].offset;
    std::size_t byte_end = chars[end - 1].offset + chars[end - 1].length;
    std::string surface(text.substr(byte_begin, byte_end - byte_begin));
    std::string folded = FoldCase(surface);

    // Guarded abbreviation keeps its period, which then ends nothing.
    if (end < chars.size() && chars[end].code == '.' &&
        IsGuardedAbbreviation(folded)) {
      surface.push_back('.');
      folded.push_back('.');
      byte_end += 1;
      ++end;
    }

    if (pending_sentence_break && sentence_has_tokens) {
      ++sentence;
      sentence_has_tokens = false;
      pending_chunk_break = true;
    }
    pending_sentence_break = false;
    if (pending_chunk_break && !tokens.empty()) ++chunk;
    pending_chunk_break = false;

    Token tok;
    tok.surface = std::move(surface);
    tok.normalized = std::move(folded);
    tok.sentence_index = sentence;
    tok.position = tokens.size();
    tok.chunk_index = chunk;
    tok.offset = byte_begin;
    tok.length = byte_end - byte_begin;
    FillFlags(tok);
    tokens.push_back(std::move(tok));
    sentence_has_tokens = true;
    i = end;
  }
  return tokens;
}

}  // namespace qgen::text

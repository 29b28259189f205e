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

#include "builtin_fixtures.h"

#include <array>
#include <utility>

namespace qgen::backends {
namespace {

// Synthetic answers for any paragraph. Confidences land on a 0.01 grid, so
// the 0.4 threshold itself is hit regularly.
constexpr std::string_view kRandom = R"json({
  "seed": 11,
  "separator": " [SEP] ",
  "generator": {
    "templates": [
      "What does {{code}} mean for readers?",
      "How did {{code}} come about?",
      "Why does {{code}} matter now?",
      "What is the story behind {{code}}?",
      "How will {{code}} change things?",
      "What are the issues with {{code}}?"
    ]
  },
  "qa_scorer": {"default": {"mode": "hash", "grid": 100}},
  "instruct": {
    "rules": [
      {"contains": "Rewrite the following statement as a question:",
       "reply": "What does the opening statement tell us?"}
    ],
    "default": {
      "mode": "hash",
      "replies": ["Yes", "Yes.", "yes", "Yes, it is answerable", "No",
                  "no.", "", "Maybe"]
    }
  },
  "span_extractor": {"default": {"mode": "windows", "count": 3}}
})json";

// Bitcoin news paragraph: three control codes, three questions, one of
// them below the confidence threshold.
constexpr std::string_view kBitcoin = R"json({
  "seed": 3,
  "separator": " [SEP] ",
  "generator": {
    "rules": [
      {"code": "once-niche world",
       "outputs": ["How did Bitcoins and NFTs move from a once-niche world into the mainstream?"]},
      {"code": "Bitcoins",
       "outputs": ["What are Bitcoins and how have the made a lot of people very rich?"]},
      {"code": "NFTs have moved",
       "outputs": ["How have NFTs reached a wider audience?"]}
    ],
    "templates": ["What is {{code}}?"]
  },
  "qa_scorer": {
    "rules": [
      {"question": "How did Bitcoins and NFTs move from a once-niche world into the mainstream?",
       "answer": "Bitcoins have made a lot of people very rich.", "confidence": 0.86},
      {"question": "What are Bitcoins and how have the made a lot of people very rich?",
       "answer": "", "confidence": 0.21},
      {"question": "How have NFTs reached a wider audience?",
       "answer": "via art, sports, entertainment and media.", "confidence": 0.8}
    ],
    "default": {"mode": "strict"}
  },
  "instruct": {
    "rules": [
      {"contains": "Rewrite the following statement as a question:",
       "reply": "How have Bitcoins and NFTs moved into the mainstream?"}
    ],
    "default": {"mode": "fixed", "reply": "Yes"}
  },
  "span_extractor": {
    "rules": [
      {"paragraph_contains": "once-niche world",
       "spans": [{"text": "once-niche world", "probability": 0.8},
                 {"text": "Bitcoins", "probability": 0.6}]}
    ]
  }
})json";

constexpr std::array<std::pair<std::string_view, std::string_view>, 2>
    kFixtures = {{{"random", kRandom}, {"bitcoin", kBitcoin}}};

}  // namespace

std::optional<std::string_view> BuiltinFixture(std::string_view id) {
  for (const auto& [name, body] : kFixtures) {
    if (name == id) return body;
  }
  return std::nullopt;
}

std::vector<std::string> BuiltinFixtureIds() {
  std::vector<std::string> ids;
  for (const auto& [name, body] : kFixtures) ids.emplace_back(name);
  return ids;
}

}  // namespace qgen::backends

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

#include "qgen/codes/control_codes.h"

#include <gtest/gtest.h>

#include <set>
#include <string>

#include "mock_clients.h"
#include "qgen/common/errors.h"
#include "qgen/common/hash.h"
#include "qgen/text/keyphrase.h"
#include "qgen/text/tokenizer.h"
#include "random_text.h"

namespace qgen::codes {
namespace {

using backends::Role;
using nlohmann::json;
using testing::InlineMock;

constexpr char kVaccine[] =
    "The current rate of COVID-19 vaccination is slowing in rural counties. "
    "Health officials said the vaccine push will continue through the "
    "summer, with pop-up clinics planned near schools.";

Paragraph Para(std::string text) { return {"p1", std::move(text), {}}; }

json SpanFixture(json spans, std::string contains = "") {
  return json{{"span_extractor",
               {{"rules", json::array({{{"paragraph_contains", contains},
                                        {"spans", std::move(spans)}}})}}}};
}

bool VerbatimCaseInsensitive(const std::string& paragraph,
                             const std::string& phrase) {
  return text::FoldCase(paragraph).find(text::FoldCase(phrase)) !=
         std::string::npos;
}

TEST(SpansFromBackendTest, EchoesFixtureSpan) {
  auto client = InlineMock(
      Role::kSpanExtractor,
      SpanFixture(json::parse(
          R"([{"text": "current rate of COVID-19 vaccination", "probability": 0.9}])")));
  auto spans = SpansFromBackend(Para(kVaccine), client, 3);
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].text, "current rate of COVID-19 vaccination");
  EXPECT_DOUBLE_EQ(spans[0].probability, 0.9);
  EXPECT_EQ(std::string(kVaccine).substr(spans[0].start,
                                         spans[0].end - spans[0].start),
            spans[0].text);
  EXPECT_FALSE(spans[0].truncated);
}

TEST(SpansFromBackendTest, ZeroTopKIsEmpty) {
  auto client = InlineMock(
      Role::kSpanExtractor,
      SpanFixture(json::parse(R"([{"text": "vaccine push", "probability": 0.9}])")));
  EXPECT_TRUE(SpansFromBackend(Para(kVaccine), client, 0).empty());
}

TEST(SpansFromBackendTest, OrdersByProbability) {
  const std::string bitcoin =
      "Bitcoins have moved from a once-niche world into the mainstream.";
  auto client = InlineMock(
      Role::kSpanExtractor,
      SpanFixture(json::parse(R"([{"text": "Bitcoins", "probability": 0.6},
                                  {"text": "once-niche world", "probability": 0.8}])")));
  auto spans = SpansFromBackend(Para(bitcoin), client, 5);
  ASSERT_EQ(spans.size(), 2u);
  EXPECT_EQ(spans[0].text, "once-niche world");
  EXPECT_EQ(spans[1].text, "Bitcoins");
}

TEST(SpansFromBackendTest, TruncatesLongSpansAtTokenBoundary) {
  std::string paragraph;
  for (int i = 0; i < 40; ++i) paragraph += "word" + std::to_string(i) + " ";
  paragraph += "end.";
  std::string span_text = paragraph.substr(0, paragraph.size() - 5);
  json spans = json::array(
      {{{"text", span_text}, {"probability", 0.5}, {"start", 0},
        {"end", span_text.size()}}});
  auto client = InlineMock(Role::kSpanExtractor, SpanFixture(spans));
  auto out = SpansFromBackend(Para(paragraph), client, 1);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(out[0].truncated);
  EXPECT_EQ(text::Tokenize(out[0].text).size(), kMaxSpanTokens);
  EXPECT_EQ(out[0].text.back(), '9');
  EXPECT_EQ(out[0].text, paragraph.substr(out[0].start, out[0].end - out[0].start));
}

TEST(SpansFromBackendTest, BackendFailurePropagates) {
  json fixture = {{"failures", {{"span_extractor", {{"mode", "unavailable"}}}}}};
  auto client = InlineMock(Role::kSpanExtractor, fixture);
  EXPECT_THROW(SpansFromBackend(Para(kVaccine), client, 3), BackendUnavailable);
}

TEST(SelectControlCodesTest, KeywordsOnlyWithoutExtractor) {
  auto sel = SelectControlCodes(Para("Bluetooth. Pairing."), nullptr, {});
  ASSERT_EQ(sel.codes.size(), 2u);
  std::set<std::string> phrases;
  for (const auto& c : sel.codes) {
    EXPECT_EQ(c.source, CodeSource::kKeyword);
    phrases.insert(c.phrase);
  }
  EXPECT_EQ(phrases, (std::set<std::string>{"Bluetooth", "Pairing"}));
  EXPECT_FALSE(sel.extractor_error.has_value());
}

TEST(SelectControlCodesTest, KeywordSalienceIsRankBased) {
  auto sel = SelectControlCodes(Para(kVaccine), nullptr, {});
  ASSERT_EQ(sel.codes.size(), 3u);
  EXPECT_DOUBLE_EQ(sel.codes[0].salience, 1.0);
  EXPECT_DOUBLE_EQ(sel.codes[1].salience, 1.0 - 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(sel.codes[2].salience, 1.0 - 2.0 / 3.0);
  auto expected = text::ExtractKeyphrases(kVaccine, {.top_k = 3});
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(sel.codes[i].phrase, expected[i].phrase);
  }
}

TEST(SelectControlCodesTest, SpanWinsCollisionWithKeyword) {
  const std::string paragraph = "The vaccine push.";
  auto top = text::ExtractKeyphrases(paragraph, {.top_k = 1});
  ASSERT_EQ(top.size(), 1u);
  ASSERT_EQ(top[0].phrase, "vaccine push");

  auto client = InlineMock(
      Role::kSpanExtractor,
      SpanFixture(json::parse(R"([{"text": "vaccine push", "probability": 0.2}])")));
  CodeSelectionConfig cfg;
  cfg.top_k_keywords = 1;
  auto sel = SelectControlCodes(Para(paragraph), &client, cfg);
  ASSERT_EQ(sel.codes.size(), 1u);
  EXPECT_EQ(sel.codes[0].phrase, "vaccine push");
  EXPECT_EQ(sel.codes[0].source, CodeSource::kSpan);
  EXPECT_DOUBLE_EQ(sel.codes[0].salience, 0.2);
}

TEST(SelectControlCodesTest, ContainmentCollapsesWithinSource) {
  auto client = InlineMock(
      Role::kSpanExtractor,
      SpanFixture(json::parse(R"([{"text": "pop-up clinics", "probability": 0.7},
                                  {"text": "pop-up clinics planned near schools", "probability": 0.9},
                                  {"text": "rural counties", "probability": 0.5}])")));
  CodeSelectionConfig cfg;
  cfg.top_k_keywords = 0;
  auto sel = SelectControlCodes(Para(kVaccine), &client, cfg);
  ASSERT_EQ(sel.codes.size(), 2u);
  EXPECT_EQ(sel.codes[0].phrase, "pop-up clinics planned near schools");
  EXPECT_EQ(sel.codes[1].phrase, "rural counties");
}

TEST(SelectControlCodesTest, InterleavesSpansAndKeywords) {
  auto client = InlineMock(
      Role::kSpanExtractor,
      SpanFixture(json::parse(R"([{"text": "through the summer", "probability": 0.9},
                                  {"text": "near schools", "probability": 0.8},
                                  {"text": "is slowing", "probability": 0.7}])")));
  auto sel = SelectControlCodes(Para(kVaccine), &client, {});
  ASSERT_EQ(sel.codes.size(), 5u);
  EXPECT_EQ(sel.codes[0].source, CodeSource::kSpan);
  EXPECT_EQ(sel.codes[1].source, CodeSource::kKeyword);
  EXPECT_EQ(sel.codes[2].source, CodeSource::kSpan);
  EXPECT_EQ(sel.codes[3].source, CodeSource::kKeyword);
  EXPECT_EQ(sel.codes[4].source, CodeSource::kSpan);
  EXPECT_EQ(sel.codes[0].phrase, "through the summer");
}

TEST(SelectControlCodesTest, DropsSpansNotInParagraph) {
  auto client = InlineMock(
      Role::kSpanExtractor,
      SpanFixture(json::parse(R"([{"text": "hallucinated phrase", "probability": 0.99},
                                  {"text": "RURAL COUNTIES", "probability": 0.4}])")));
  CodeSelectionConfig cfg;
  cfg.top_k_keywords = 0;
  auto sel = SelectControlCodes(Para(kVaccine), &client, cfg);
  ASSERT_EQ(sel.codes.size(), 1u);
  EXPECT_EQ(sel.codes[0].phrase, "RURAL COUNTIES");
  ASSERT_TRUE(sel.codes[0].origin_offsets.has_value());
  auto [b, e] = *sel.codes[0].origin_offsets;
  EXPECT_EQ(std::string(kVaccine).substr(b, e - b), "rural counties");
}

TEST(SelectControlCodesTest, ExtractorFailureDegradesToKeywords) {
  json fixture = {{"failures", {{"span_extractor", {{"mode", "unavailable"}}}}}};
  auto client = InlineMock(Role::kSpanExtractor, fixture);
  auto degraded = SelectControlCodes(Para(kVaccine), &client, {});
  auto plain = SelectControlCodes(Para(kVaccine), nullptr, {});
  EXPECT_EQ(degraded.codes, plain.codes);
  EXPECT_TRUE(degraded.extractor_error.has_value());
}

TEST(SelectControlCodesTest, EmptyParagraphIsInputError) {
  EXPECT_THROW(SelectControlCodes(Para("  \n "), nullptr, {}), InputError);
}

TEST(SelectControlCodesTest, InvalidConfig) {
  CodeSelectionConfig cfg;
  cfg.max_codes = 0;
  EXPECT_THROW(SelectControlCodes(Para(kVaccine), nullptr, cfg), ConfigError);
}

TEST(SelectControlCodesTest, RandomizedInvariants) {
  json fixture = json::parse(R"({"seed": 5,
      "span_extractor": {"default": {"mode": "windows", "count": 3}}})");
  auto client = InlineMock(Role::kSpanExtractor, fixture);
  HashChain rng(99);
  for (int i = 0; i < 200; ++i) {
    Paragraph p = Para(testing::RandomDocument(rng, 60));
    if (text::ExtractKeyphrases(p.text, {}).empty()) continue;
    CodeSelectionConfig cfg;
    cfg.max_codes = 1 + static_cast<int>(rng.Below(6));
    auto with = SelectControlCodes(p, &client, cfg);
    auto again = SelectControlCodes(p, &client, cfg);
    auto without = SelectControlCodes(p, nullptr, cfg);
    EXPECT_EQ(with.codes, again.codes);
    EXPECT_LE(with.codes.size(), static_cast<std::size_t>(cfg.max_codes));

    std::set<std::string> keyword_only;
    CodeSelectionConfig wide = cfg;
    wide.max_codes = 100;
    for (const auto& c : SelectControlCodes(p, nullptr, wide).codes) {
      keyword_only.insert(c.phrase);
    }
    for (const auto& c : with.codes) {
      EXPECT_TRUE(VerbatimCaseInsensitive(p.text, c.phrase)) << c.phrase;
      EXPECT_GE(c.salience, 0.0);
      EXPECT_LE(c.salience, 1.0);
      if (c.source == CodeSource::kKeyword) {
        EXPECT_TRUE(keyword_only.count(c.phrase)) << c.phrase;
      }
    }
    for (const auto& c : without.codes) {
      EXPECT_EQ(c.source, CodeSource::kKeyword);
    }
  }
}

TEST(CodeFromQuestionTest, PresidentialCampaignDonations) {
  auto code =
      CodeFromQuestion("Where do presidential campaign donations actually get spent?");
  EXPECT_EQ(code.phrase, "presidential campaign donations");
  EXPECT_EQ(code.source, CodeSource::kQuestionDerived);
  EXPECT_FALSE(code.origin_offsets.has_value());
}

TEST(CodeFromQuestionTest, StopwordOnlyQuestion) {
  EXPECT_THROW(CodeFromQuestion("Why?"), NoCodeExtractable);
  EXPECT_THROW(CodeFromQuestion(""), NoCodeExtractable);
}

TEST(CodeFromQuestionTest, BluetoothQuestionMatchesExtractor) {
  const std::string q = "How come bluetooth is so much slower than Wi-Fi?";
  auto code = CodeFromQuestion(q);
  auto top = text::ExtractKeyphrases(q, {.top_k = 1});
  ASSERT_EQ(top.size(), 1u);
  EXPECT_EQ(code.phrase, top[0].phrase);
  bool has_bluetooth = false;
  for (const auto& kp : text::ExtractKeyphrases(q, {.top_k = 3})) {
    has_bluetooth |= kp.normalized.find("bluetooth") != std::string::npos;
  }
  EXPECT_TRUE(has_bluetooth);
}

TEST(ControlCodeJsonTest, RoundTrip) {
  ControlCode code{"vaccine push", CodeSource::kSpan, 0.25,
                   std::make_pair(std::size_t{4}, std::size_t{16})};
  json j = code;
  EXPECT_EQ(j.dump(),
            R"({"origin_offsets":[4,16],"phrase":"vaccine push","salience":0.25,"source":"span"})");
  EXPECT_EQ(j.get<ControlCode>(), code);
  ControlCode manual{"x", CodeSource::kManual, 1.0, std::nullopt};
  EXPECT_EQ(json(manual).get<ControlCode>(), manual);
  EXPECT_THROW(json::parse(R"({"phrase":"x","source":"bogus","salience":1})")
                   .get<ControlCode>(),
               InputError);
}

}  // namespace
}  // namespace qgen::codes

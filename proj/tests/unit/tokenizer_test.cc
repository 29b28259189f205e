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
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "qgen/text/stopwords.h"

namespace qgen::text {
namespace {

std::vector<std::string> Surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

std::vector<std::size_t> Sentences(const std::vector<Token>& tokens) {
  std::vector<std::size_t> out;
  for (const auto& t : tokens) out.push_back(t.sentence_index);
  return out;
}

TEST(TokenizerTest, EmptyInput) {
  EXPECT_TRUE(Tokenize("").empty());
  EXPECT_TRUE(Tokenize("   \n\t ").empty());
  EXPECT_TRUE(Tokenize("... !? --").empty());
}

TEST(TokenizerTest, AbbreviationDoesNotEndSentence) {
  auto tokens = Tokenize("Dr. Gaur said. About half.");
  EXPECT_EQ(Surfaces(tokens),
            (std::vector<std::string>{"Dr.", "Gaur", "said", "About", "half"}));
  EXPECT_EQ(Sentences(tokens), (std::vector<std::size_t>{0, 0, 0, 1, 1}));
}

TEST(TokenizerTest, DottedAlphanumericsStayWhole) {
  auto tokens = Tokenize("B.1.351 could spread.");
  ASSERT_EQ(tokens.size(), 3u);
  EXPECT_EQ(tokens[0].surface, "B.1.351");
  EXPECT_EQ(tokens[0].sentence_index, 0u);
}

TEST(TokenizerTest, TerminatorsAndInternalConnectors) {
  auto tokens = Tokenize("Is Wi-Fi faster? Yes! It's 4.2 times the U.S. rate.");
  EXPECT_EQ(Surfaces(tokens),
            (std::vector<std::string>{"Is", "Wi-Fi", "faster", "Yes", "It's",
                                      "4.2", "times", "the", "U.S.", "rate"}));
  EXPECT_EQ(Sentences(tokens),
            (std::vector<std::size_t>{0, 0, 0, 1, 2, 2, 2, 2, 2, 2}));
}

TEST(TokenizerTest, BlankLineSeparatesSentences) {
  auto tokens = Tokenize("headline without period\n\nbody text");
  EXPECT_EQ(Sentences(tokens), (std::vector<std::size_t>{0, 0, 0, 1, 1}));
  auto single = Tokenize("line one\nline two");
  EXPECT_EQ(single.back().sentence_index, 0u);
}

TEST(TokenizerTest, PunctuationSplitsChunksNotSentences) {
  auto tokens = Tokenize("art, sports and media");
  ASSERT_EQ(tokens.size(), 4u);
  EXPECT_NE(tokens[0].chunk_index, tokens[1].chunk_index);
  EXPECT_EQ(tokens[1].chunk_index, tokens[3].chunk_index);
  EXPECT_EQ(tokens[3].sentence_index, 0u);
}

TEST(TokenizerTest, UnicodePunctuationIsNotALetter) {
  // Em dash, curly quotes and the right single quote as apostrophe.
  auto tokens = Tokenize("\xE2\x80\x9CIt\xE2\x80\x99s here\xE2\x80\x9D \xE2\x80\x94 caf\xC3\xA9");
  EXPECT_EQ(Surfaces(tokens), (std::vector<std::string>{
                                  "It\xE2\x80\x99s", "here", "caf\xC3\xA9"}));
}

TEST(TokenizerTest, OffsetsPointIntoSource) {
  const std::string text = "  The once-niche world of Bitcoins.";
  for (const Token& t : Tokenize(text)) {
    EXPECT_EQ(text.substr(t.offset, t.length), t.surface);
  }
}

TEST(TokenizerTest, FlagsAndNormalization) {
  auto tokens = Tokenize("The NFT market and NFTs in COVID-19 times");
  ASSERT_EQ(tokens.size(), 8u);
  EXPECT_TRUE(tokens[0].is_uppercase_initial);
  EXPECT_TRUE(tokens[0].is_stopword);
  EXPECT_TRUE(tokens[1].is_acronym);
  EXPECT_FALSE(tokens[4].is_acronym);  // NFTs
  EXPECT_TRUE(tokens[4].is_uppercase_initial);
  EXPECT_TRUE(tokens[6].is_acronym);  // COVID-19
  EXPECT_EQ(tokens[6].normalized, "covid-19");
  EXPECT_FALSE(tokens[2].is_stopword);
}

// Property: positions strictly increase, normalized is the folded surface,
// and surfaces appear in the text in order.
TEST(TokenizerTest, InvariantsOnMixedText) {
  const std::vector<std::string> samples = {
      "Mr. Smith went to Washington. He met Sen. Jones at 5 p.m. today!",
      "Bitcoin's once-niche world... now mainstream? Maybe.",
      "e.g. this; i.e. that: (parenthetical) \"quoted\" words",
      "Numbers 1,000 and 3.14 and v2.0-beta.",
  };
  for (const auto& text : samples) {
    auto tokens = Tokenize(text);
    std::size_t cursor = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i > 0) {
        EXPECT_GT(tokens[i].position, tokens[i - 1].position);
        EXPECT_GE(tokens[i].sentence_index, tokens[i - 1].sentence_index);
        EXPECT_GE(tokens[i].chunk_index, tokens[i - 1].chunk_index);
      }
      EXPECT_EQ(tokens[i].normalized, FoldCase(tokens[i].surface));
      auto found = text.find(tokens[i].surface, cursor);
      ASSERT_NE(found, std::string::npos) << tokens[i].surface;
      cursor = found + tokens[i].surface.size();
    }
  }
}

TEST(StopwordsTest, ListIsSortedAndFolded) {
  auto words = Stopwords();
  EXPECT_TRUE(std::is_sorted(words.begin(), words.end()));
  EXPECT_TRUE(std::adjacent_find(words.begin(), words.end()) == words.end());
  for (auto w : words) EXPECT_EQ(FoldCase(w), w);
  EXPECT_TRUE(IsStopword("where"));
  EXPECT_TRUE(IsStopword("actually"));
  EXPECT_FALSE(IsStopword("campaign"));
}

}  // namespace
}  // namespace qgen::text

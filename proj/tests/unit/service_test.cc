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

#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include "qgen/common/errors.h"
#include "qgen/common/hash.h"
#include "qgen/service/faq_search.h"
#include "qgen/service/review.h"
#include "qgen/service/review_store.h"

namespace qgen::service {
namespace {

using pipeline::CandidateQuestion;
using pipeline::PipelineResult;
using pipeline::Stage;

// Written out by hand from the workflow rules.
const std::map<std::pair<ReviewState, ReviewAction>, ReviewState> kLegal = {
    {{ReviewState::kPending, ReviewAction::kApprove}, ReviewState::kApproved},
    {{ReviewState::kPending, ReviewAction::kEditApprove}, ReviewState::kApproved},
    {{ReviewState::kPending, ReviewAction::kReject}, ReviewState::kRejected},
    {{ReviewState::kApproved, ReviewAction::kPublish}, ReviewState::kPublished},
    {{ReviewState::kApproved, ReviewAction::kReject}, ReviewState::kRejected},
    {{ReviewState::kPublished, ReviewAction::kUnpublish}, ReviewState::kRejected},
};

Clock FixedClock() {
  auto tick = std::make_shared<int>(0);
  return [tick] { return "2026-01-01T00:00:" + std::to_string(10 + (*tick)++) + "Z"; };
}

CandidateQuestion Ranked(const std::string& text, double confidence) {
  CandidateQuestion c;
  c.text = text;
  c.code = {"code", codes::CodeSource::kKeyword, 1.0, std::nullopt};
  c.qa = backends::QaScore{"", confidence};
  c.answerable = true;
  c.verdict = "Yes";
  c.stage = Stage::kPassedSecondary;
  return c;
}

PipelineResult Result(const std::string& pid, std::vector<std::string> ranked,
                      std::size_t discarded = 0) {
  PipelineResult r;
  r.paragraph = {pid, "Paragraph " + pid + " text.", {"https://example.com/" + pid, "Headline " + pid, "business"}};
  r.variant = "consistent";
  for (const auto& q : ranked) r.ranked.push_back(Ranked(q, 0.8));
  for (std::size_t i = 0; i < discarded; ++i) {
    CandidateQuestion d = Ranked("discarded " + std::to_string(i), 0.1);
    d.stage = Stage::kDiscarded;
    d.discard_reason = pipeline::DiscardReason::kBelowKappa;
    r.discarded.push_back(d);
  }
  r.generated_count = r.ranked.size() + r.discarded.size();
  return r;
}

ReviewStore::Options Memory() {
  ReviewStore::Options o;
  o.clock = FixedClock();
  return o;
}

TEST(StateMachineTest, ExhaustiveTableMatches) {
  int legal = 0;
  for (ReviewState s : kAllStates) {
    for (ReviewAction a : kAllActions) {
      auto expected = kLegal.find({s, a});
      auto got = NextState(s, a);
      if (expected == kLegal.end()) {
        EXPECT_FALSE(got.has_value()) << StateName(s) << " " << ActionName(a);
      } else {
        ++legal;
        ASSERT_TRUE(got.has_value()) << StateName(s) << " " << ActionName(a);
        EXPECT_EQ(*got, expected->second);
      }
    }
  }
  EXPECT_EQ(legal, 6);
}

TEST(StateMachineTest, ExhaustiveThroughStore) {
  for (ReviewState s : kAllStates) {
    for (ReviewAction a : kAllActions) {
      ReviewStore store(Memory());
      std::string id = store.Ingest({Result("p", {"Why is this?"})}).created.at(0).id;
      // Drive the item into state s.
      if (s == ReviewState::kApproved || s == ReviewState::kPublished) {
        store.Transition(id, ReviewAction::kApprove, "ed");
      }
      if (s == ReviewState::kPublished) store.Transition(id, ReviewAction::kPublish, "ed");
      if (s == ReviewState::kRejected) store.Transition(id, ReviewAction::kReject, "ed");
      ASSERT_EQ(store.Get(id).state, s);
      ReviewItem before = store.Get(id);
      std::optional<std::string> edit;
      if (a == ReviewAction::kEditApprove) edit = "Why is this, really?";
      auto expected = kLegal.find({s, a});
      if (expected == kLegal.end()) {
        EXPECT_THROW(store.Transition(id, a, "ed", edit), StateError);
        EXPECT_EQ(store.Get(id), before);
      } else {
        auto after = store.Transition(id, a, "ed", edit);
        EXPECT_EQ(after.state, expected->second);
        EXPECT_EQ(after.version, before.version + 1);
      }
    }
  }
}

TEST(ReviewStoreTest, IngestCreatesPendingItems) {
  ReviewStore store(Memory());
  auto report = store.Ingest({Result("p1", {"Why A?", "How B?"}, 1)});
  ASSERT_EQ(report.created.size(), 2u);
  for (const auto& item : report.created) {
    EXPECT_EQ(item.state, ReviewState::kPending);
    EXPECT_EQ(item.version, 1);
    EXPECT_EQ(item.article_ref.domain, "business");
  }
  EXPECT_EQ(store.List({.state = ReviewState::kPending}).size(), 2u);
  auto audit = store.Audit();
  ASSERT_EQ(audit.size(), 1u);
  EXPECT_EQ(audit[0].discarded.size(), 1u);
  EXPECT_EQ(audit[0].created_ids.size(), 2u);
}

TEST(ReviewStoreTest, ReingestIsIdempotent) {
  ReviewStore store(Memory());
  store.Ingest({Result("p1", {"Why A?", "How B?"})});
  auto again = store.Ingest({Result("p1", {"why  a?", "How B?"})});
  EXPECT_TRUE(again.created.empty());
  EXPECT_EQ(again.collapsed, 2u);
  EXPECT_EQ(store.List().size(), 2u);
  EXPECT_EQ(store.Audit().size(), 2u);
}

TEST(ReviewStoreTest, EmptyRankedLeavesAuditRow) {
  ReviewStore store(Memory());
  auto report = store.Ingest({Result("p1", {}, 3)});
  EXPECT_TRUE(report.created.empty());
  EXPECT_EQ(report.audit_rows, 1u);
  auto audit = store.Audit();
  ASSERT_EQ(audit.size(), 1u);
  EXPECT_EQ(audit[0].generated_count, 3u);
  EXPECT_EQ(audit[0].discarded.size(), 3u);
  EXPECT_TRUE(store.List().empty());
  EXPECT_THROW(store.Ingest({}), InputError);
}

TEST(ReviewStoreTest, EditApproveRecordsBothTexts) {
  ReviewStore store(Memory());
  std::string id = store.Ingest({Result("p1", {"Why A?"})}).created[0].id;
  EXPECT_THROW(store.Transition(id, ReviewAction::kEditApprove, "ed", "  "), InputError);
  EXPECT_THROW(store.Transition(id, ReviewAction::kEditApprove, "ed"), InputError);
  EXPECT_THROW(store.Transition(id, ReviewAction::kApprove, ""), InputError);
  auto item = store.Transition(id, ReviewAction::kEditApprove, "ed", "Why is A true?", 1);
  EXPECT_EQ(item.state, ReviewState::kApproved);
  EXPECT_EQ(item.edited_text, "Why is A true?");
  ASSERT_EQ(item.history.size(), 1u);
  EXPECT_EQ(item.history[0].original_text, "Why A?");
  EXPECT_EQ(item.history[0].edited_text, "Why is A true?");
  EXPECT_EQ(item.history[0].actor, "ed");
  EXPECT_EQ(item.history[0].timestamp, "2026-01-01T00:00:11Z");

  store.Transition(id, ReviewAction::kPublish, "chief");
  auto faq = store.PublishedFaq();
  ASSERT_EQ(faq.size(), 1u);
  EXPECT_EQ(faq[0].question, "Why is A true?");
  EXPECT_EQ(faq[0].paragraph, "Paragraph p1 text.");

  auto rejected = store.Transition(id, ReviewAction::kUnpublish, "chief");
  EXPECT_EQ(rejected.state, ReviewState::kRejected);
  EXPECT_FALSE(rejected.edited_text.has_value());
  EXPECT_TRUE(store.PublishedFaq().empty());
  EXPECT_THROW(store.Transition(id, ReviewAction::kPublish, "chief"), StateError);
}

TEST(ReviewStoreTest, NotFoundAndConflict) {
  ReviewStore store(Memory());
  std::string id = store.Ingest({Result("p1", {"Why A?"})}).created[0].id;
  EXPECT_THROW(store.Transition("nope", ReviewAction::kApprove, "ed"), NotFoundError);
  try {
    store.Transition(id, ReviewAction::kApprove, "ed", std::nullopt, 7);
    FAIL();
  } catch (const ConflictError& e) {
    EXPECT_EQ(e.current_version(), 1);
  }
  EXPECT_EQ(store.Get(id).state, ReviewState::kPending);
}

TEST(ReviewStoreTest, ConcurrentConflictingTransitions) {
  for (int threads : {2, 100}) {
    ReviewStore store(Memory());
    std::string id = store.Ingest({Result("p1", {"Why A?"})}).created[0].id;
    std::atomic<int> ok{0};
    std::atomic<int> conflicts{0};
    std::atomic<bool> go{false};
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) {
      pool.emplace_back([&, i] {
        while (!go.load()) std::this_thread::yield();
        try {
          store.Transition(id, i % 2 ? ReviewAction::kApprove : ReviewAction::kReject,
                           "editor" + std::to_string(i), std::nullopt, 1);
          ++ok;
        } catch (const ConflictError&) {
          ++conflicts;
        }
      });
    }
    go = true;
    for (auto& t : pool) t.join();
    EXPECT_EQ(ok.load(), 1);
    EXPECT_EQ(conflicts.load(), threads - 1);
    EXPECT_EQ(store.Get(id).history.size(), 1u);
    EXPECT_EQ(store.Get(id).version, 2);
  }
}

TEST(ReviewStoreTest, RandomHistoriesReplayToCurrentState) {
  ReviewStore store(Memory());
  std::vector<std::string> ids;
  for (int p = 0; p < 10; ++p) {
    for (const auto& item :
         store.Ingest({Result("p" + std::to_string(p), {"Why A?", "How B?", "What C?"})}).created) {
      ids.push_back(item.id);
    }
  }
  HashChain rng(5);
  int applied = 0;
  for (int step = 0; step < 2000; ++step) {
    const std::string& id = ids[rng.Below(ids.size())];
    ReviewAction action = kAllActions[rng.Below(kAllActions.size())];
    std::optional<std::string> edit;
    if (action == ReviewAction::kEditApprove) edit = "Edited " + std::to_string(step);
    try {
      store.Transition(id, action, "ed", edit);
      ++applied;
    } catch (const StateError&) {
    }
  }
  EXPECT_GT(applied, 0);
  for (const auto& item : store.List()) {
    EXPECT_EQ(ReplayHistory(item.history), item.state);
    for (const auto& h : item.history) {
      EXPECT_TRUE(kLegal.count({h.from, h.action}));
    }
    if (item.edited_text) {
      EXPECT_FALSE(item.edited_text->empty());
      EXPECT_TRUE(item.state == ReviewState::kApproved ||
                  item.state == ReviewState::kPublished);
    }
  }
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("qgen-store-" + std::to_string(::getpid()) + "-" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

TEST(ReviewStorePersistenceTest, ReopenReplaysLog) {
  TempDir dir;
  ReviewStore::Options o = Memory();
  o.path = dir.path() / "store.jsonl";
  o.snapshot_every = 3;
  std::vector<ReviewItem> items;
  uint64_t version = 0;
  {
    ReviewStore store(o);
    auto created = store.Ingest({Result("p1", {"Why A?", "How B?"}, 2)}).created;
    store.Transition(created[0].id, ReviewAction::kApprove, "ed");
    store.Transition(created[0].id, ReviewAction::kPublish, "ed");
    store.Transition(created[1].id, ReviewAction::kEditApprove, "ed", "How is B done?");
    items = store.List();
    version = store.version();
  }
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "store.jsonl.snapshot"));
  ReviewStore reopened(o);
  EXPECT_EQ(reopened.List(), items);
  EXPECT_EQ(reopened.version(), version);
  EXPECT_EQ(reopened.Audit().size(), 1u);
  EXPECT_EQ(reopened.PublishedFaq().size(), 1u);

  std::filesystem::remove(dir.path() / "store.jsonl.snapshot");
  ReviewStore from_log(o);
  EXPECT_EQ(from_log.List(), items);
}

TEST(ReviewStorePersistenceTest, TornFinalLineIsIgnored) {
  TempDir dir;
  ReviewStore::Options o = Memory();
  o.path = dir.path() / "store.jsonl";
  {
    ReviewStore store(o);
    store.Ingest({Result("p1", {"Why A?"})});
  }
  {
    std::ofstream out(*o.path, std::ios::app);
    out << R"({"type":"transition","seq":)";
  }
  ReviewStore reopened(o);
  EXPECT_EQ(reopened.List().size(), 1u);
}

FaqEntry Entry(const std::string& id, const std::string& question, uint64_t seq) {
  FaqEntry e;
  e.item_id = id;
  e.question = question;
  e.published_seq = seq;
  return e;
}

TEST(FaqSearchTest, IdenticalQueryScoresOne) {
  std::vector<FaqEntry> corpus = {
      Entry("a", "How have NFTs reached a wider audience?", 1),
      Entry("b", "What are the biggest issues with NFTs for artists?", 2)};
  auto matches = FaqSearch("How have NFTs reached a wider audience?", corpus);
  ASSERT_FALSE(matches.empty());
  EXPECT_EQ(matches[0].entry.item_id, "a");
  EXPECT_DOUBLE_EQ(matches[0].similarity, 1.0);
}

TEST(FaqSearchTest, NftQueryBeatsHealthQuestion) {
  const std::string q = "What are some of the issues with NFTs?";
  // Hand-computed: query normalizes to "issues nfts".
  // vs "biggest issues nfts artists": Jaccard 2/4, trigram cosine 0.6.
  EXPECT_NEAR(FaqSimilarity(q, "What are the biggest issues with NFTs for artists?"),
              0.7 * 0.5 + 0.3 * 0.6, 1e-12);
  EXPECT_DOUBLE_EQ(FaqSimilarity(q, "How effective is the new flu vaccine for older adults?"), 0.0);
  EXPECT_NEAR(FaqSimilarity(q, "How have NFTs reached a wider audience?"), 0.18, 1e-12);

  std::vector<FaqEntry> corpus = {
      Entry("health", "How effective is the new flu vaccine for older adults?", 1),
      Entry("nft", "What are the biggest issues with NFTs for artists?", 2)};
  FaqSearchConfig all;
  all.min_sim = 0.0;
  auto matches = FaqSearch(q, corpus, all);
  ASSERT_EQ(matches.size(), 2u);
  EXPECT_EQ(matches[0].entry.item_id, "nft");
  EXPECT_GT(matches[0].similarity, 0.0);
  auto default_matches = FaqSearch(q, corpus);
  ASSERT_EQ(default_matches.size(), 1u);
  EXPECT_EQ(default_matches[0].entry.item_id, "nft");
}

TEST(FaqSearchTest, StopwordQueryIsEmpty) {
  std::vector<FaqEntry> corpus = {Entry("a", "Why is it so?", 1)};
  EXPECT_TRUE(FaqSearch("What is it?", corpus).empty());
  EXPECT_EQ(NormalizeForSearch("What is it?"), "");
}

TEST(FaqSearchTest, TiesGoToMostRecent) {
  std::vector<FaqEntry> corpus = {Entry("old", "Bitcoin mining costs", 3),
                                  Entry("new", "Bitcoin mining costs", 9),
                                  Entry("mid", "Bitcoin mining costs", 5)};
  auto matches = FaqSearch("bitcoin mining costs", corpus);
  ASSERT_EQ(matches.size(), 3u);
  EXPECT_EQ(matches[0].entry.item_id, "new");
  EXPECT_EQ(matches[1].entry.item_id, "mid");
  EXPECT_EQ(matches[2].entry.item_id, "old");
  FaqSearchConfig one;
  one.top_k = 1;
  EXPECT_EQ(FaqSearch("bitcoin mining costs", corpus, one).size(), 1u);
}

TEST(FaqSearchTest, ConfigValidation) {
  FaqSearchConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  cfg.jaccard_weight = 0.9;
  EXPECT_THROW(cfg.Validate(), ConfigError);
  cfg = {};
  cfg.min_sim = 2;
  EXPECT_THROW(cfg.Validate(), ConfigError);
}

}  // namespace
}  // namespace qgen::service

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

#ifndef QGEN_SERVICE_REVIEW_H_
#define QGEN_SERVICE_REVIEW_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qgen/common/paragraph.h"
#include "qgen/pipeline/candidate.h"

namespace qgen::service {

enum class ReviewState { kPending, kApproved, kRejected, kPublished };
enum class ReviewAction { kApprove, kReject, kEditApprove, kPublish, kUnpublish };

inline constexpr std::array<ReviewState, 4> kAllStates = {
    ReviewState::kPending, ReviewState::kApproved, ReviewState::kRejected,
    ReviewState::kPublished};
inline constexpr std::array<ReviewAction, 5> kAllActions = {
    ReviewAction::kApprove, ReviewAction::kReject, ReviewAction::kEditApprove,
    ReviewAction::kPublish, ReviewAction::kUnpublish};

std::string_view StateName(ReviewState state);
std::string_view ActionName(ReviewAction action);
std::optional<ReviewState> ParseState(std::string_view name);
// "edit+approve" and "edit_approve" both name kEditApprove.
std::optional<ReviewAction> ParseAction(std::string_view name);

// The legal-transition table:
//
//   pending   --approve-->       approved
//   pending   --edit+approve-->  approved
//   pending   --reject-->        rejected
//   approved  --publish-->       published
//   approved  --reject-->        rejected
//   published --unpublish-->     rejected
//
// Everything else is illegal.
std::optional<ReviewState> NextState(ReviewState from, ReviewAction action);

struct HistoryEntry {
  std::string timestamp;
  std::string actor;
  ReviewAction action = ReviewAction::kApprove;
  ReviewState from = ReviewState::kPending;
  ReviewState to = ReviewState::kPending;
  // Set for edit+approve.
  std::optional<std::string> original_text;
  std::optional<std::string> edited_text;
  // Item version after the transition.
  int64_t version = 0;
  // Store sequence number of the transition; orders events across items.
  uint64_t seq = 0;

  bool operator==(const HistoryEntry&) const = default;
};

void to_json(nlohmann::json& j, const HistoryEntry& h);
void from_json(const nlohmann::json& j, HistoryEntry& h);

struct ReviewItem {
  std::string id;
  ArticleRef article_ref;
  std::string paragraph_id;
  std::string paragraph_text;
  pipeline::CandidateQuestion candidate;
  ReviewState state = ReviewState::kPending;
  std::optional<std::string> edited_text;
  std::vector<HistoryEntry> history;
  int64_t version = 1;

  // edited_text when present, else the generated text.
  const std::string& DisplayText() const;

  bool operator==(const ReviewItem&) const = default;
};

void to_json(nlohmann::json& j, const ReviewItem& item);
void from_json(const nlohmann::json& j, ReviewItem& item);

// Replays the history from pending. Returns nullopt if any entry is not a
// legal transition or does not start where the previous one ended.
std::optional<ReviewState> ReplayHistory(const std::vector<HistoryEntry>& history);

// Stable item id derived from the paragraph id and the case-folded,
// whitespace-normalized question.
std::string ReviewItemId(std::string_view paragraph_id, std::string_view question);

}  // namespace qgen::service

#endif  // QGEN_SERVICE_REVIEW_H_

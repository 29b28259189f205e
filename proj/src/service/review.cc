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

#include "qgen/service/review.h"

#include <cctype>
#include <cstdio>

#include "qgen/common/errors.h"
#include "qgen/common/hash.h"
#include "qgen/text/tokenizer.h"

namespace qgen::service {

using nlohmann::json;

std::string_view StateName(ReviewState state) {
  switch (state) {
    case ReviewState::kPending:
      return "pending";
    case ReviewState::kApproved:
      return "approved";
    case ReviewState::kRejected:
      return "rejected";
    case ReviewState::kPublished:
      return "published";
  }
  return "pending";
}

std::string_view ActionName(ReviewAction action) {
  switch (action) {
    case ReviewAction::kApprove:
      return "approve";
    case ReviewAction::kReject:
      return "reject";
    case ReviewAction::kEditApprove:
      return "edit+approve";
    case ReviewAction::kPublish:
      return "publish";
    case ReviewAction::kUnpublish:
      return "unpublish";
  }
  return "approve";
}

std::optional<ReviewState> ParseState(std::string_view name) {
  for (ReviewState s : kAllStates) {
    if (StateName(s) == name) return s;
  }
  return std::nullopt;
}

std::optional<ReviewAction> ParseAction(std::string_view name) {
  if (name == "edit_approve") return ReviewAction::kEditApprove;
  for (ReviewAction a : kAllActions) {
    if (ActionName(a) == name) return a;
  }
  return std::nullopt;
}

std::optional<ReviewState> NextState(ReviewState from, ReviewAction action) {
  using A = ReviewAction;
  using S = ReviewState;
  switch (from) {
    case S::kPending:
      if (action == A::kApprove || action == A::kEditApprove) return S::kApproved;
      if (action == A::kReject) return S::kRejected;
      return std::nullopt;
    case S::kApproved:
      if (action == A::kPublish) return S::kPublished;
      if (action == A::kReject) return S::kRejected;
      return std::nullopt;
    case S::kPublished:
      if (action == A::kUnpublish) return S::kRejected;
      return std::nullopt;
    case S::kRejected:
      return std::nullopt;
  }
  return std::nullopt;
}

namespace {

ReviewState StateFromJson(const json& j) {
  auto s = ParseState(j.get<std::string>());
  if (!s) throw InputError("unknown review state " + j.dump());
  return *s;
}

ReviewAction ActionFromJson(const json& j) {
  auto a = ParseAction(j.get<std::string>());
  if (!a) throw InputError("unknown review action " + j.dump());
  return *a;
}

}  // namespace

void to_json(json& j, const HistoryEntry& h) {
  j = json{{"timestamp", h.timestamp},
           {"actor", h.actor},
           {"action", ActionName(h.action)},
           {"from", StateName(h.from)},
           {"to", StateName(h.to)},
           {"version", h.version},
           {"seq", h.seq}};
  if (h.original_text) j["original_text"] = *h.original_text;
  if (h.edited_text) j["edited_text"] = *h.edited_text;
}

void from_json(const json& j, HistoryEntry& h) {
  h.timestamp = j.at("timestamp").get<std::string>();
  h.actor = j.at("actor").get<std::string>();
  h.action = ActionFromJson(j.at("action"));
  h.from = StateFromJson(j.at("from"));
  h.to = StateFromJson(j.at("to"));
  h.version = j.at("version").get<int64_t>();
  h.seq = j.value("seq", uint64_t{0});
  h.original_text.reset();
  h.edited_text.reset();
  if (j.contains("original_text")) h.original_text = j["original_text"].get<std::string>();
  if (j.contains("edited_text")) h.edited_text = j["edited_text"].get<std::string>();
}

const std::string& ReviewItem::DisplayText() const {
  return edited_text ? *edited_text : candidate.text;
}

void to_json(json& j, const ReviewItem& item) {
  j = json{{"id", item.id},
           {"article_ref", item.article_ref},
           {"paragraph_id", item.paragraph_id},
           {"paragraph_text", item.paragraph_text},
           {"candidate", item.candidate},
           {"state", StateName(item.state)},
           {"question", item.DisplayText()},
           {"history", item.history},
           {"version", item.version}};
  if (item.edited_text) j["edited_text"] = *item.edited_text;
}

void from_json(const json& j, ReviewItem& item) {
  item.id = j.at("id").get<std::string>();
  item.article_ref = j.value("article_ref", ArticleRef{});
  item.paragraph_id = j.at("paragraph_id").get<std::string>();
  item.paragraph_text = j.value("paragraph_text", std::string());
  item.candidate = j.at("candidate").get<pipeline::CandidateQuestion>();
  item.state = StateFromJson(j.at("state"));
  item.edited_text.reset();
  if (j.contains("edited_text")) item.edited_text = j["edited_text"].get<std::string>();
  item.history = j.value("history", std::vector<HistoryEntry>{});
  item.version = j.at("version").get<int64_t>();
}

std::optional<ReviewState> ReplayHistory(const std::vector<HistoryEntry>& history) {
  ReviewState state = ReviewState::kPending;
  for (const auto& h : history) {
    if (h.from != state) return std::nullopt;
    auto next = NextState(state, h.action);
    if (!next || *next != h.to) return std::nullopt;
    state = *next;
  }
  return state;
}

std::string ReviewItemId(std::string_view paragraph_id, std::string_view question) {
  std::string key(paragraph_id);
  key.push_back('\x1f');
  bool space = false;
  bool any = false;
  for (char c : text::FoldCase(question)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = any;
      continue;
    }
    if (space) key.push_back(' ');
    space = false;
    any = true;
    key.push_back(c);
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(Fnv1a64(key)));
  return std::string("it-") + buf;
}

}  // namespace qgen::service

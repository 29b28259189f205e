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

#include "qgen/service/review_store.h"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <mutex>
#include <set>
#include <utility>

#include "qgen/common/errors.h"

namespace qgen::service {
namespace {

using nlohmann::json;

bool IsBlank(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

std::filesystem::path SnapshotPath(const std::filesystem::path& log) {
  auto p = log;
  p += ".snapshot";
  return p;
}

}  // namespace

std::string UtcNow() {
  auto now = std::chrono::system_clock::now();
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                now.time_since_epoch()) %
            1000;
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char date[24];
  std::strftime(date, sizeof(date), "%Y-%m-%dT%H:%M:%S", &tm);
  char millis[8];
  std::snprintf(millis, sizeof(millis), ".%03dZ", static_cast<int>(ms.count()));
  return std::string(date) + millis;
}

void to_json(json& j, const AuditRecord& a) {
  j = json{{"paragraph_id", a.paragraph_id},
           {"timestamp", a.timestamp},
           {"generated_count", a.generated_count},
           {"ranked_count", a.ranked_count},
           {"discarded", a.discarded},
           {"created_ids", a.created_ids},
           {"collapsed", a.collapsed}};
}

void from_json(const json& j, AuditRecord& a) {
  a.paragraph_id = j.at("paragraph_id").get<std::string>();
  a.timestamp = j.value("timestamp", std::string());
  a.generated_count = j.value("generated_count", std::size_t{0});
  a.ranked_count = j.value("ranked_count", std::size_t{0});
  a.discarded = j.value("discarded", std::vector<pipeline::CandidateQuestion>{});
  a.created_ids = j.value("created_ids", std::vector<std::string>{});
  a.collapsed = j.value("collapsed", std::size_t{0});
}

ReviewStore::ReviewStore() : ReviewStore(Options{}) {}

ReviewStore::ReviewStore(Options options) : options_(std::move(options)) {
  if (!options_.clock) options_.clock = UtcNow;
  if (options_.path) Load();
}

ReviewStore::~ReviewStore() = default;

void ReviewStore::Load() {
  const auto& path = *options_.path;
  auto snapshot = SnapshotPath(path);
  if (std::filesystem::exists(snapshot)) {
    std::ifstream in(snapshot);
    json s = json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (s.is_discarded()) throw InputError("corrupt store snapshot " + snapshot.string());
    seq_ = s.at("seq").get<uint64_t>();
    for (const auto& j : s.at("items")) {
      auto item = j.get<ReviewItem>();
      order_.push_back(item.id);
      items_[item.id] = std::move(item);
    }
    audit_ = s.at("audit").get<std::vector<AuditRecord>>();
  }
  if (std::filesystem::exists(path)) {
    std::ifstream in(path);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) {
      if (!IsBlank(line)) lines.push_back(std::move(line));
    }
    for (std::size_t i = 0; i < lines.size(); ++i) {
      json event = json::parse(lines[i], nullptr, /*allow_exceptions=*/false);
      if (event.is_discarded()) {
        // A torn final write from a crash is dropped; anything else is damage.
        if (i + 1 == lines.size()) break;
        throw InputError("corrupt store log " + path.string() + " at event " +
                         std::to_string(i + 1));
      }
      uint64_t seq = event.at("seq").get<uint64_t>();
      if (seq <= seq_) continue;
      Apply(event);
      seq_ = seq;
    }
  } else if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  log_.open(path, std::ios::app);
  if (!log_) throw ConfigError("cannot open store log " + path.string());
}

void ReviewStore::Append(json event) {
  event["seq"] = ++seq_;
  if (log_.is_open()) {
    log_ << event.dump() << '\n';
    log_.flush();
  }
  Apply(event);
  if (options_.path && ++since_snapshot_ >= options_.snapshot_every) {
    WriteSnapshotLocked();
  }
}

void ReviewStore::Apply(const json& event) {
  const std::string type = event.at("type").get<std::string>();
  if (type == "item_created") {
    auto item = event.at("item").get<ReviewItem>();
    order_.push_back(item.id);
    items_[item.id] = std::move(item);
  } else if (type == "audit") {
    audit_.push_back(event.at("record").get<AuditRecord>());
  } else if (type == "transition") {
    auto entry = event.at("entry").get<HistoryEntry>();
    ReviewItem& item = items_.at(event.at("id").get<std::string>());
    item.state = entry.to;
    item.version = entry.version;
    if (entry.action == ReviewAction::kEditApprove) {
      item.edited_text = entry.edited_text;
    } else if (entry.to == ReviewState::kRejected) {
      item.edited_text.reset();
    }
    item.history.push_back(std::move(entry));
  } else {
    throw InputError("unknown store event \"" + type + "\"");
  }
}

json ReviewStore::SnapshotJson() const {
  json items = json::array();
  for (const auto& id : order_) items.push_back(items_.at(id));
  return json{{"seq", seq_}, {"items", items}, {"audit", audit_}};
}

void ReviewStore::WriteSnapshotLocked() {
  if (!options_.path) return;
  auto target = SnapshotPath(*options_.path);
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << SnapshotJson().dump() << '\n';
    if (!out) throw ConfigError("cannot write store snapshot " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
  since_snapshot_ = 0;
}

void ReviewStore::Snapshot() {
  std::unique_lock lock(mu_);
  WriteSnapshotLocked();
}

IngestReport ReviewStore::Ingest(
    const std::vector<pipeline::PipelineResult>& results,
    const std::optional<ArticleRef>& article_ref) {
  if (results.empty()) throw InputError("nothing to ingest");
  std::unique_lock lock(mu_);
  IngestReport report;
  for (const auto& result : results) {
    AuditRecord record;
    record.paragraph_id = result.paragraph.id;
    record.timestamp = options_.clock();
    record.generated_count = result.generated_count;
    record.ranked_count = result.ranked.size();
    record.discarded = result.discarded;
    for (const auto& cand : result.ranked) {
      std::string id = ReviewItemId(result.paragraph.id, cand.text);
      if (items_.count(id)) {
        ++record.collapsed;
        continue;
      }
      ReviewItem item;
      item.id = id;
      item.article_ref = article_ref ? *article_ref : result.paragraph.article;
      item.paragraph_id = result.paragraph.id;
      item.paragraph_text = result.paragraph.text;
      item.candidate = cand;
      Append(json{{"type", "item_created"}, {"item", item}});
      record.created_ids.push_back(id);
      report.created.push_back(items_.at(id));
    }
    report.collapsed += record.collapsed;
    Append(json{{"type", "audit"}, {"record", record}});
    ++report.audit_rows;
  }
  return report;
}

ReviewItem ReviewStore::Transition(const std::string& id, ReviewAction action,
                                   const std::string& actor,
                                   const std::optional<std::string>& edited_text,
                                   std::optional<int64_t> expected_version) {
  std::unique_lock lock(mu_);
  auto it = items_.find(id);
  if (it == items_.end()) throw NotFoundError("no review item " + id);
  const ReviewItem& item = it->second;
  if (IsBlank(actor)) throw InputError("actor is required");
  if (expected_version && *expected_version != item.version) {
    throw ConflictError("item " + id + " is at version " +
                            std::to_string(item.version) + ", not " +
                            std::to_string(*expected_version),
                        item.version);
  }
  auto next = NextState(item.state, action);
  if (!next) {
    throw StateError("cannot " + std::string(ActionName(action)) + " a " +
                     std::string(StateName(item.state)) + " item");
  }
  HistoryEntry entry;
  if (action == ReviewAction::kEditApprove) {
    if (!edited_text || IsBlank(*edited_text)) {
      throw InputError("edit+approve needs a nonempty edited_text");
    }
    entry.original_text = item.candidate.text;
    entry.edited_text = *edited_text;
  } else if (edited_text) {
    throw InputError("edited_text is only accepted with edit+approve");
  }
  entry.timestamp = options_.clock();
  entry.actor = actor;
  entry.action = action;
  entry.from = item.state;
  entry.to = *next;
  entry.version = item.version + 1;
  entry.seq = seq_ + 1;
  Append(json{{"type", "transition"}, {"id", id}, {"entry", entry}});
  return items_.at(id);
}

ReviewItem ReviewStore::Get(const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = items_.find(id);
  if (it == items_.end()) throw NotFoundError("no review item " + id);
  return it->second;
}

std::vector<ReviewItem> ReviewStore::List(const ReviewFilter& filter) const {
  std::shared_lock lock(mu_);
  std::vector<ReviewItem> out;
  for (const auto& id : order_) {
    const ReviewItem& item = items_.at(id);
    if (filter.state && item.state != *filter.state) continue;
    if (filter.domain && item.article_ref.domain != *filter.domain) continue;
    if (filter.article && item.article_ref.url != *filter.article &&
        item.article_ref.headline != *filter.article) {
      continue;
    }
    out.push_back(item);
  }
  return out;
}

std::vector<AuditRecord> ReviewStore::Audit() const {
  std::shared_lock lock(mu_);
  return audit_;
}

std::vector<FaqEntry> ReviewStore::PublishedFaq() const {
  std::shared_lock lock(mu_);
  std::vector<FaqEntry> out;
  for (const auto& id : order_) {
    const ReviewItem& item = items_.at(id);
    if (item.state != ReviewState::kPublished) continue;
    FaqEntry entry;
    entry.item_id = item.id;
    entry.question = item.DisplayText();
    entry.paragraph = item.paragraph_text;
    entry.article_ref = item.article_ref;
    for (auto h = item.history.rbegin(); h != item.history.rend(); ++h) {
      if (h->action == ReviewAction::kPublish) {
        entry.published_at = h->timestamp;
        entry.published_seq = h->seq;
        break;
      }
    }
    out.push_back(std::move(entry));
  }
  std::sort(out.begin(), out.end(), [](const FaqEntry& a, const FaqEntry& b) {
    return a.published_seq > b.published_seq;
  });
  return out;
}

uint64_t ReviewStore::version() const {
  std::shared_lock lock(mu_);
  return seq_;
}

}  // namespace qgen::service

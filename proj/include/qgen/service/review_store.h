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

#ifndef QGEN_SERVICE_REVIEW_STORE_H_
#define QGEN_SERVICE_REVIEW_STORE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "qgen/pipeline/pipeline.h"
#include "qgen/service/faq_search.h"
#include "qgen/service/review.h"

namespace qgen::service {

// Audit row written for every ingested pipeline result.
struct AuditRecord {
  std::string paragraph_id;
  std::string timestamp;
  std::size_t generated_count = 0;
  std::size_t ranked_count = 0;
  // Discarded candidates, kept read-only.
  std::vector<pipeline::CandidateQuestion> discarded;
  std::vector<std::string> created_ids;
  // Ranked candidates that matched an existing item.
  std::size_t collapsed = 0;
};

void to_json(nlohmann::json& j, const AuditRecord& a);
void from_json(const nlohmann::json& j, AuditRecord& a);

struct IngestReport {
  std::vector<ReviewItem> created;
  std::size_t collapsed = 0;
  std::size_t audit_rows = 0;
};

struct ReviewFilter {
  std::optional<ReviewState> state = std::nullopt;
  std::optional<std::string> domain = std::nullopt;
  // Matches article_ref.url or article_ref.headline.
  std::optional<std::string> article = std::nullopt;
};

using Clock = std::function<std::string()>;

// ISO-8601 UTC with milliseconds.
std::string UtcNow();

// Review items, their audit trail and the published FAQ.
//
// With a path, every mutation is appended to an event log at `path` before
// it is applied, and a full snapshot is written to `path`.snapshot every
// `snapshot_every` events. Opening an existing store loads the snapshot and
// replays the newer log events. The log is never truncated.
//
// Reads share a lock; writes are serialized. Transitions are optimistic:
// a caller passing expected_version loses with ConflictError when the item
// moved on.
class ReviewStore {
 public:
  struct Options {
    std::optional<std::filesystem::path> path;
    std::size_t snapshot_every = 100;
    Clock clock = UtcNow;
  };

  ReviewStore();
  explicit ReviewStore(Options options);
  ~ReviewStore();

  ReviewStore(const ReviewStore&) = delete;
  ReviewStore& operator=(const ReviewStore&) = delete;

  // One pending item per ranked candidate; discarded candidates go to the
  // audit trail only. A candidate whose (paragraph id, question) already
  // exists is collapsed. article_ref, when given, overrides the paragraph's.
  // Throws InputError on an empty list.
  IngestReport Ingest(const std::vector<pipeline::PipelineResult>& results,
                      const std::optional<ArticleRef>& article_ref = std::nullopt);

  // Throws NotFoundError, ConflictError (version mismatch, checked first),
  // StateError (illegal transition) or InputError (empty actor, missing or
  // empty edited_text for edit+approve). Nothing changes on error.
  ReviewItem Transition(const std::string& id, ReviewAction action,
                        const std::string& actor,
                        const std::optional<std::string>& edited_text = std::nullopt,
                        std::optional<int64_t> expected_version = std::nullopt);

  ReviewItem Get(const std::string& id) const;
  std::vector<ReviewItem> List(const ReviewFilter& filter = {}) const;
  std::vector<AuditRecord> Audit() const;
  // Published items, most recent first.
  std::vector<FaqEntry> PublishedFaq() const;

  // Sequence number of the last applied event.
  uint64_t version() const;

  // Writes a snapshot now. No-op without a path.
  void Snapshot();

 private:
  void Load();
  void Append(nlohmann::json event);
  void Apply(const nlohmann::json& event);
  nlohmann::json SnapshotJson() const;
  void WriteSnapshotLocked();

  Options options_;
  mutable std::shared_mutex mu_;
  std::map<std::string, ReviewItem> items_;
  std::vector<std::string> order_;
  std::vector<AuditRecord> audit_;
  uint64_t seq_ = 0;
  std::size_t since_snapshot_ = 0;
  std::ofstream log_;
};

}  // namespace qgen::service

#endif  // QGEN_SERVICE_REVIEW_STORE_H_

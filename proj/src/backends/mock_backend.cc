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

#include "qgen/backends/mock_backend.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include "builtin_fixtures.h"
#include "qgen/common/errors.h"
#include "qgen/common/hash.h"
#include "qgen/text/tokenizer.h"

namespace qgen::backends {
namespace {

using nlohmann::json;

const json& Section(const json& fixture, std::string_view role) {
  static const json kEmpty = json::object();
  auto it = fixture.find(std::string(role));
  return it == fixture.end() ? kEmpty : *it;
}

const json& Rules(const json& section) {
  static const json kNone = json::array();
  auto it = section.find("rules");
  return it == section.end() ? kNone : *it;
}

std::string ReplaceAll(std::string s, std::string_view from,
                       std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
  return s;
}

std::string FixtureSeparator(const json& fixture) {
  return fixture.value("separator", std::string(" [SEP] "));
}

WireResponse Ok(const json& j) { return {200, j.dump()}; }

}  // namespace

void WireLog::Record(std::string_view route, const std::string& body) {
  std::lock_guard<std::mutex> lock(mu_);
  entries_.push_back({std::string(route), body});
}

std::vector<WireLog::Entry> WireLog::Entries() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_;
}

std::vector<WireLog::Entry> WireLog::EntriesFor(std::string_view route) const {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<Entry> out;
  for (const auto& e : entries_) {
    if (e.route == route) out.push_back(e);
  }
  return out;
}

void WireLog::Clear() {
  std::lock_guard<std::mutex> lock(mu_);
  entries_.clear();
}

MockBackend::MockBackend(json fixture) : fixture_(std::move(fixture)) {
  if (!fixture_.is_object()) throw ConfigError("mock fixture must be an object");
  seed_ = fixture_.value("seed", uint64_t{0});
  for (Role role : {Role::kGenerator, Role::kQaScorer, Role::kInstruct,
                    Role::kSpanExtractor}) {
    calls_[std::string(RoleRoute(role))] = 0;
  }
}

WireResponse MockBackend::Handle(std::string_view route,
                                 const std::string& body) {
  auto counter = calls_.find(std::string(route));
  if (counter == calls_.end()) return {404, "{\"error\":\"unknown route\"}"};
  int call_index = counter->second.fetch_add(1);

  auto role = std::string(RoleName(Role::kGenerator));
  for (Role r : {Role::kGenerator, Role::kQaScorer, Role::kInstruct,
                 Role::kSpanExtractor}) {
    if (RoleRoute(r) == route) role = RoleName(r);
  }
  const json& failure = Section(Section(fixture_, "failures"), role);
  if (!failure.empty()) {
    std::string mode = failure.value("mode", std::string());
    if (mode == "unavailable") throw TransportFailure("mock: backend down");
    if (mode == "flaky" && call_index < failure.value("fail_first", 0)) {
      throw TransportFailure("mock: transient failure");
    }
    if (mode == "status") {
      return {failure.value("status", 500),
              failure.value("body", std::string("mock failure"))};
    }
  }

  try {
    if (route == RoleRoute(Role::kGenerator)) {
      return Ok(Generate(ParseWire<GenerateRequest>(body)));
    }
    if (route == RoleRoute(Role::kQaScorer)) {
      return Ok(Score(ParseWire<QaScoreRequest>(body)));
    }
    if (route == RoleRoute(Role::kInstruct)) {
      return Ok(Instruct(ParseWire<InstructRequest>(body)));
    }
    return Ok(Spans(ParseWire<ExtractSpansRequest>(body)));
  } catch (const ProtocolError& e) {
    return {400, json{{"error", e.what()}}.dump()};
  }
}

GenerateResponse MockBackend::Generate(const GenerateRequest& req) const {
  const json& section = Section(fixture_, "generator");
  const std::string separator = FixtureSeparator(fixture_);
  GenerateResponse resp;
  auto take = [&](const json& outputs) {
    for (const json& o : outputs) {
      if (static_cast<int>(resp.outputs.size()) >= req.n) break;
      resp.outputs.push_back(o.get<std::string>());
    }
  };
  for (const json& rule : Rules(section)) {
    if (rule.contains("prompt") && rule["prompt"] == req.prompt) {
      take(rule.at("outputs"));
      return resp;
    }
    if (rule.contains("code") &&
        req.prompt.rfind(rule["code"].get<std::string>() + separator, 0) == 0) {
      take(rule.at("outputs"));
      return resp;
    }
  }

  std::vector<std::string> templates = section.value(
      "templates", std::vector<std::string>{"What is {{code}}?"});
  if (templates.empty()) return resp;
  std::string code = req.prompt;
  if (auto pos = req.prompt.find(separator); pos != std::string::npos) {
    code = req.prompt.substr(0, pos);
  } else if (code.size() > 60) {
    code.resize(60);
  }
  const bool greedy = req.decode.strategy == DecodeStrategy::kGreedy;
  uint64_t base = Fnv1a64(req.prompt) ^ SplitMix64(seed_);
  if (!greedy) base ^= SplitMix64(req.decode.seed.value_or(0) + 0x51ed);
  for (int i = 0; i < req.n; ++i) {
    HashChain chain(greedy ? base : base + static_cast<uint64_t>(i));
    const std::string& tpl = templates[chain.Below(templates.size())];
    resp.outputs.push_back(ReplaceAll(tpl, "{{code}}", code));
  }
  return resp;
}

QaScore MockBackend::Score(const QaScoreRequest& req) const {
  const json& section = Section(fixture_, "qa_scorer");
  for (const json& rule : Rules(section)) {
    if (rule.value("question", std::string()) != req.question) continue;
    if (rule.contains("paragraph") && rule["paragraph"] != req.paragraph) {
      continue;
    }
    return {rule.value("answer", std::string()),
            rule.at("confidence").get<double>()};
  }
  json fallback = section.value("default", json::object());
  if (fallback.value("mode", std::string("strict")) == "hash") {
    uint64_t grid = std::max<uint64_t>(1, fallback.value("grid", 100));
    HashChain chain(Fnv1a64(req.paragraph, Fnv1a64(req.question)) ^
                    SplitMix64(seed_));
    double confidence =
        static_cast<double>(chain.Below(grid + 1)) / static_cast<double>(grid);
    // Echo a short span of the paragraph as the answer, or abstain.
    std::string answer;
    auto tokens = text::Tokenize(req.paragraph);
    if (!tokens.empty() && confidence > 0.0) {
      const auto& t = tokens[chain.Below(tokens.size())];
      answer = t.surface;
    }
    return {answer, confidence};
  }
  return {"", 0.0};
}

InstructResponse MockBackend::Instruct(const InstructRequest& req) const {
  const json& section = Section(fixture_, "instruct");
  for (const json& rule : Rules(section)) {
    if (rule.contains("prompt") && rule["prompt"] == req.prompt) {
      return {rule.at("reply").get<std::string>()};
    }
    if (rule.contains("contains") &&
        req.prompt.find(rule["contains"].get<std::string>()) !=
            std::string::npos) {
      return {rule.at("reply").get<std::string>()};
    }
  }
  json fallback = section.value("default", json::object());
  if (fallback.value("mode", std::string("fixed")) == "hash") {
    auto replies = fallback.value("replies", std::vector<std::string>{"Yes"});
    if (replies.empty()) return {""};
    HashChain chain(Fnv1a64(req.prompt) ^ SplitMix64(seed_ + 1));
    return {replies[chain.Below(replies.size())]};
  }
  return {fallback.value("reply", std::string("Yes"))};
}

ExtractSpansResponse MockBackend::Spans(const ExtractSpansRequest& req) const {
  const json& section = Section(fixture_, "span_extractor");
  ExtractSpansResponse resp;
  std::string folded = text::FoldCase(req.paragraph);
  for (const json& rule : Rules(section)) {
    std::string needle = rule.value("paragraph_contains", std::string());
    if (req.paragraph.find(needle) == std::string::npos) continue;
    for (const json& s : rule.at("spans")) {
      ExtractedSpan span;
      span.text = s.at("text").get<std::string>();
      span.probability = s.at("probability").get<double>();
      if (s.contains("start")) {
        span.start = s["start"].get<std::size_t>();
        span.end = s.at("end").get<std::size_t>();
      } else {
        auto pos = folded.find(text::FoldCase(span.text));
        span.start = pos == std::string::npos ? 0 : pos;
        span.end = span.start + span.text.size();
      }
      resp.spans.push_back(std::move(span));
    }
    return resp;
  }
  json fallback = section.value("default", json::object());
  if (fallback.value("mode", std::string("none")) != "windows") return resp;

  // Random verbatim windows of one to three tokens inside a chunk.
  auto tokens = text::Tokenize(req.paragraph);
  if (tokens.empty()) return resp;
  HashChain chain(Fnv1a64(req.paragraph) ^ SplitMix64(seed_ + 2));
  int count = std::min(req.top_k, fallback.value("count", 3));
  for (int i = 0; i < count; ++i) {
    std::size_t b = chain.Below(tokens.size());
    std::size_t e = std::min(tokens.size() - 1, b + chain.Below(3));
    while (e > b && tokens[e].chunk_index != tokens[b].chunk_index) --e;
    ExtractedSpan span;
    span.start = tokens[b].offset;
    span.end = tokens[e].offset + tokens[e].length;
    span.text = req.paragraph.substr(span.start, span.end - span.start);
    span.probability = static_cast<double>(chain.Below(101)) / 100.0;
    resp.spans.push_back(std::move(span));
  }
  return resp;
}

MockTransport::MockTransport(std::shared_ptr<MockBackend> backend,
                             std::shared_ptr<WireLog> log)
    : backend_(std::move(backend)), log_(std::move(log)) {}

WireResponse MockTransport::Post(const BackendHandle& /*handle*/,
                                 std::string_view route,
                                 const std::string& body) {
  if (log_) log_->Record(route, body);
  return backend_->Handle(route, body);
}

nlohmann::json LoadMockFixture(std::string_view fixture_id) {
  if (auto builtin = BuiltinFixture(fixture_id)) {
    return json::parse(*builtin);
  }
  std::filesystem::path path{std::string(fixture_id)};
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("unknown mock fixture \"" + std::string(fixture_id) +
                      "\" (not built in, no such file)");
  }
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    throw ConfigError("mock fixture " + path.string() + " is not valid JSON");
  }
  return j;
}

std::vector<std::string> BuiltinFixtureNames() { return BuiltinFixtureIds(); }

BackendClient ConnectBackend(const BackendHandle& handle,
                             std::shared_ptr<WireLog> log, Sleeper sleeper) {
  std::shared_ptr<Transport> transport;
  if (handle.IsMock()) {
    auto backend = std::make_shared<MockBackend>(
        LoadMockFixture(std::string_view(handle.endpoint).substr(5)));
    transport = std::make_shared<MockTransport>(std::move(backend),
                                                std::move(log));
  } else {
    transport = std::make_shared<HttpTransport>();
  }
  return BackendClient(handle, std::move(transport), std::move(sleeper));
}

}  // namespace qgen::backends

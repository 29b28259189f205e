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

#include "qgen/config/app_config.h"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "qgen/backends/mock_backend.h"
#include "qgen/common/errors.h"

extern char** environ;

namespace qgen::config {
namespace {

using nlohmann::json;

constexpr std::string_view kEnvPrefix = "CONSISTENT_";

enum class Kind { kNumber, kInt, kString, kStringList, kSeed };

struct Field {
  std::string_view section;  // empty for top-level keys
  std::string_view key;
  Kind kind;
};

constexpr Field kFields[] = {
    {"filter", "kappa", Kind::kNumber},
    {"filter", "answerability_template", Kind::kString},
    {"filter", "accept_tokens", Kind::kStringList},
    {"filter", "candidates_per_code", Kind::kInt},
    {"codes", "max_codes", Kind::kInt},
    {"codes", "top_k_keywords", Kind::kInt},
    {"codes", "top_k_spans", Kind::kInt},
    {"decode", "strategy", Kind::kString},
    {"decode", "k", Kind::kInt},
    {"decode", "temperature", Kind::kNumber},
    {"decode", "no_repeat_ngram_size", Kind::kInt},
    {"decode", "seed", Kind::kSeed},
    {"service", "listen_addr", Kind::kString},
    {"service", "store_path", Kind::kString},
    {"service", "auth_token", Kind::kString},
    {"service", "ui_dir", Kind::kString},
    {"faq", "jaccard_weight", Kind::kNumber},
    {"faq", "trigram_weight", Kind::kNumber},
    {"faq", "min_sim", Kind::kNumber},
    {"faq", "top_k", Kind::kInt},
    {"baselines", "out_vocabulary", Kind::kStringList},
    {"", "separator", Kind::kString},
};

constexpr Field kBackendFields[] = {
    {"", "url", Kind::kString},
    {"", "timeout_ms", Kind::kInt},
    {"", "max_retries", Kind::kInt},
    {"", "token", Kind::kString},
};

std::string Upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string Trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Converts an env string to the JSON type the field expects.
json Coerce(const std::string& name, Kind kind, const std::string& raw) {
  auto bad = [&](std::string_view what) {
    return ConfigError(name + ": expected " + std::string(what) + ", got \"" +
                       raw + "\"");
  };
  std::string v = Trim(raw);
  switch (kind) {
    case Kind::kString:
      return raw;
    case Kind::kStringList: {
      json list = json::array();
      std::stringstream ss(raw);
      std::string item;
      while (std::getline(ss, item, ',')) {
        item = Trim(item);
        if (!item.empty()) list.push_back(item);
      }
      return list;
    }
    case Kind::kNumber: {
      char* end = nullptr;
      double d = std::strtod(v.c_str(), &end);
      if (v.empty() || *end != '\0') throw bad("a number");
      return d;
    }
    case Kind::kInt: {
      char* end = nullptr;
      long long i = std::strtoll(v.c_str(), &end, 10);
      if (v.empty() || *end != '\0') throw bad("an integer");
      return i;
    }
    case Kind::kSeed: {
      if (v.empty() || v == "null") return nullptr;
      if (v[0] == '-') throw bad("a non-negative integer");
      char* end = nullptr;
      unsigned long long u = std::strtoull(v.c_str(), &end, 10);
      if (*end != '\0') throw bad("a non-negative integer");
      return u;
    }
  }
  return raw;
}

void ApplyEnv(json& doc, const EnvMap& env) {
  for (const auto& [name, value] : env) {
    if (name.rfind(kEnvPrefix, 0) != 0) continue;
    std::string rest = name.substr(kEnvPrefix.size());
    bool matched = false;
    if (rest.rfind("BACKEND_", 0) == 0) {
      std::string tail = rest.substr(8);
      for (const auto& f : kBackendFields) {
        std::string suffix = "_" + Upper(f.key);
        if (tail.size() > suffix.size() &&
            tail.compare(tail.size() - suffix.size(), suffix.size(), suffix) == 0) {
          std::string role = Lower(tail.substr(0, tail.size() - suffix.size()));
          json& slot = doc["backends"][role];
          if (slot.is_string()) slot = json{{"url", slot}};
          slot[std::string(f.key)] = Coerce(name, f.kind, value);
          matched = true;
          break;
        }
      }
    } else {
      for (const auto& f : kFields) {
        std::string expect = f.section.empty()
                                 ? Upper(f.key)
                                 : Upper(f.section) + "_" + Upper(f.key);
        if (rest == expect) {
          json v = Coerce(name, f.kind, value);
          if (f.section.empty()) {
            doc[std::string(f.key)] = v;
          } else {
            doc[std::string(f.section)][std::string(f.key)] = v;
          }
          matched = true;
          break;
        }
      }
    }
    if (!matched) throw ConfigError("unknown environment variable " + name);
  }
}

// Typed accessors over a section object; every key read is recorded so the
// leftovers can be reported.
class Reader {
 public:
  Reader(const json& obj, std::string prefix)
      : obj_(obj), prefix_(std::move(prefix)) {
    if (!obj_.is_object()) {
      throw ConfigError(prefix_ + ": expected an object");
    }
  }

  template <typename T>
  void Number(std::string_view key, T& out) {
    const json* v = Take(key);
    if (!v) return;
    if (!v->is_number()) throw Type(key, "a number");
    out = v->get<T>();
  }

  template <typename T>
  void Integer(std::string_view key, T& out) {
    const json* v = Take(key);
    if (!v) return;
    if (!v->is_number_integer()) throw Type(key, "an integer");
    if constexpr (std::is_unsigned_v<T>) {
      if (!v->is_number_unsigned() && v->get<long long>() < 0) {
        throw Type(key, "a non-negative integer");
      }
    }
    out = v->get<T>();
  }

  void String(std::string_view key, std::string& out) {
    const json* v = Take(key);
    if (!v) return;
    if (!v->is_string()) throw Type(key, "a string");
    out = v->get<std::string>();
  }

  template <typename Container>
  void Strings(std::string_view key, Container& out) {
    const json* v = Take(key);
    if (!v) return;
    if (!v->is_array()) throw Type(key, "a list of strings");
    Container result;
    for (const auto& item : *v) {
      if (!item.is_string()) throw Type(key, "a list of strings");
      result.insert(result.end(), item.get<std::string>());
    }
    out = std::move(result);
  }

  void Seed(std::string_view key, std::optional<uint64_t>& out) {
    const json* v = Take(key);
    if (!v) return;
    if (v->is_null()) {
      out.reset();
      return;
    }
    if (!v->is_number_integer() ||
        (!v->is_number_unsigned() && v->get<long long>() < 0)) {
      throw Type(key, "a non-negative integer");
    }
    out = v->get<uint64_t>();
  }

  void Finish() const {
    for (const auto& [key, unused] : obj_.items()) {
      if (!seen_.count(key)) {
        throw ConfigError("unknown config key " + Name(key));
      }
    }
  }

 private:
  const json* Take(std::string_view key) {
    seen_.insert(std::string(key));
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  std::string Name(std::string_view key) const {
    return prefix_.empty() ? std::string(key)
                           : prefix_ + "." + std::string(key);
  }

  ConfigError Type(std::string_view key, std::string_view what) const {
    return ConfigError(Name(key) + ": expected " + std::string(what));
  }

  const json& obj_;
  std::string prefix_;
  std::set<std::string, std::less<>> seen_;
};

const json& SectionOr(const json& doc, std::string_view key) {
  static const json kEmpty = json::object();
  auto it = doc.find(key);
  return it == doc.end() ? kEmpty : *it;
}

std::optional<BackendSlot> ParseSlot(std::string_view name) {
  for (auto slot : kAllSlots) {
    if (SlotName(slot) == name) return slot;
  }
  return std::nullopt;
}

backends::DecodeStrategy ParseStrategy(const std::string& s) {
  if (s == "top_k_sampling") return backends::DecodeStrategy::kTopKSampling;
  if (s == "greedy") return backends::DecodeStrategy::kGreedy;
  throw ConfigError("decode.strategy must be top_k_sampling or greedy, got \"" +
                    s + "\"");
}

}  // namespace

std::string_view SlotName(BackendSlot slot) {
  switch (slot) {
    case BackendSlot::kGenerator:
      return "generator";
    case BackendSlot::kQaScorer:
      return "qa_scorer";
    case BackendSlot::kInstruct:
      return "instruct";
    case BackendSlot::kSpanExtractor:
      return "span_extractor";
    case BackendSlot::kSquadGenerator:
      return "squad_generator";
  }
  return "unknown";
}

backends::Role SlotRole(BackendSlot slot) {
  switch (slot) {
    case BackendSlot::kGenerator:
    case BackendSlot::kSquadGenerator:
      return backends::Role::kGenerator;
    case BackendSlot::kQaScorer:
      return backends::Role::kQaScorer;
    case BackendSlot::kInstruct:
      return backends::Role::kInstruct;
    case BackendSlot::kSpanExtractor:
      return backends::Role::kSpanExtractor;
  }
  return backends::Role::kGenerator;
}

EnvMap ProcessEnv() {
  EnvMap env;
  for (char** e = environ; e && *e; ++e) {
    std::string_view entry(*e);
    if (entry.rfind(kEnvPrefix, 0) != 0) continue;
    auto eq = entry.find('=');
    if (eq == std::string_view::npos) continue;
    env.emplace(std::string(entry.substr(0, eq)),
                std::string(entry.substr(eq + 1)));
  }
  return env;
}

AppConfig ConfigFromJson(const json& input, const EnvMap& env) {
  json doc = input.is_null() ? json::object() : input;
  if (!doc.is_object()) throw ConfigError("config root must be an object");
  ApplyEnv(doc, env);

  AppConfig cfg;
  Reader root(doc, "");
  std::string separator = cfg.pipeline.separator;
  root.String("separator", separator);
  cfg.pipeline.separator = separator;

  {
    const json& sec = SectionOr(doc, "backends");
    if (!sec.is_object()) throw ConfigError("backends: expected an object");
    for (const auto& [name, value] : sec.items()) {
      auto slot = ParseSlot(name);
      if (!slot) throw ConfigError("unknown config key backends." + name);
      BackendEndpoint ep;
      if (value.is_string()) {
        ep.url = value.get<std::string>();
      } else {
        Reader r(value, "backends." + name);
        r.String("url", ep.url);
        r.Integer("timeout_ms", ep.timeout_ms);
        r.Integer("max_retries", ep.max_retries);
        r.String("token", ep.token);
        r.Finish();
      }
      if (ep.url.empty()) continue;
      if (ep.timeout_ms < 1) {
        throw ConfigError("backends." + name + ".timeout_ms must be >= 1");
      }
      if (ep.max_retries < 0) {
        throw ConfigError("backends." + name + ".max_retries must be >= 0");
      }
      cfg.backends[*slot] = ep;
    }
  }
  {
    Reader r(SectionOr(doc, "filter"), "filter");
    auto& f = cfg.pipeline.filter;
    r.Number("kappa", f.kappa);
    r.String("answerability_template", f.answerability_template);
    r.Strings("accept_tokens", f.accept_tokens);
    r.Integer("candidates_per_code", f.candidates_per_code);
    r.Finish();
    std::set<std::string> folded;
    for (const auto& t : f.accept_tokens) folded.insert(Lower(Trim(t)));
    f.accept_tokens = folded;
  }
  {
    Reader r(SectionOr(doc, "codes"), "codes");
    auto& c = cfg.pipeline.codes;
    r.Integer("max_codes", c.max_codes);
    r.Integer("top_k_keywords", c.top_k_keywords);
    r.Integer("top_k_spans", c.top_k_spans);
    r.Finish();
  }
  {
    Reader r(SectionOr(doc, "decode"), "decode");
    auto& d = cfg.pipeline.decode;
    std::string strategy = d.strategy == backends::DecodeStrategy::kGreedy
                               ? "greedy"
                               : "top_k_sampling";
    r.String("strategy", strategy);
    d.strategy = ParseStrategy(strategy);
    r.Integer("k", d.k);
    r.Number("temperature", d.temperature);
    r.Integer("no_repeat_ngram_size", d.no_repeat_ngram_size);
    r.Seed("seed", d.seed);
    r.Finish();
  }
  {
    Reader r(SectionOr(doc, "service"), "service");
    auto& s = cfg.service;
    r.String("listen_addr", s.listen_addr);
    r.String("store_path", s.store_path);
    r.String("auth_token", s.auth_token);
    r.String("ui_dir", s.ui_dir);
    r.Finish();
  }
  {
    Reader r(SectionOr(doc, "faq"), "faq");
    r.Number("jaccard_weight", cfg.faq.jaccard_weight);
    r.Number("trigram_weight", cfg.faq.trigram_weight);
    r.Number("min_sim", cfg.faq.min_sim);
    r.Integer("top_k", cfg.faq.top_k);
    r.Finish();
  }
  {
    Reader r(SectionOr(doc, "baselines"), "baselines");
    r.Strings("out_vocabulary", cfg.pipeline.out_vocabulary);
    r.Finish();
  }
  for (const auto& [key, unused] : doc.items()) {
    static const std::set<std::string, std::less<>> kKnown = {
        "backends", "filter", "codes",     "decode",
        "service",  "faq",    "baselines", "separator"};
    if (!kKnown.count(key)) throw ConfigError("unknown config key " + key);
  }

  cfg.pipeline.Validate();
  cfg.faq.Validate();
  return cfg;
}

AppConfig LoadConfig(const std::optional<std::filesystem::path>& path,
                     const EnvMap& env) {
  json doc = json::object();
  if (path) {
    std::ifstream in(*path);
    if (!in) throw ConfigError("cannot read config file " + path->string());
    try {
      doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
      throw ConfigError("config file " + path->string() + ": " + e.what());
    }
  }
  return ConfigFromJson(doc, env);
}

json RedactedJson(const AppConfig& cfg) {
  auto secret = [](const std::string& s) { return s.empty() ? s : "***"; };
  json backends = json::object();
  for (const auto& [slot, ep] : cfg.backends) {
    backends[std::string(SlotName(slot))] = {{"url", ep.url},
                                             {"timeout_ms", ep.timeout_ms},
                                             {"max_retries", ep.max_retries},
                                             {"token", secret(ep.token)}};
  }
  json decode = cfg.pipeline.decode;
  decode["seed"] = cfg.pipeline.decode.seed ? json(*cfg.pipeline.decode.seed)
                                            : json(nullptr);
  return {{"backends", backends},
          {"filter", cfg.pipeline.filter},
          {"codes", cfg.pipeline.codes},
          {"decode", decode},
          {"separator", cfg.pipeline.separator},
          {"service",
           {{"listen_addr", cfg.service.listen_addr},
            {"store_path", cfg.service.store_path},
            {"auth_token", secret(cfg.service.auth_token)},
            {"ui_dir", cfg.service.ui_dir}}},
          {"faq", cfg.faq},
          {"baselines", {{"out_vocabulary", cfg.pipeline.out_vocabulary}}}};
}

void RequireBackends(const AppConfig& cfg,
                     const std::vector<BackendSlot>& slots) {
  for (auto slot : slots) {
    if (!cfg.backends.count(slot)) {
      std::string name(SlotName(slot));
      throw ConfigError("missing required backend: " + name +
                        " (set backends." + name + " or CONSISTENT_BACKEND_" +
                        Upper(name) + "_URL)");
    }
  }
}

pipeline::PipelineBackends ConnectBackends(const AppConfig& cfg) {
  pipeline::PipelineBackends out;
  for (const auto& [slot, ep] : cfg.backends) {
    backends::BackendHandle handle;
    handle.role = SlotRole(slot);
    handle.endpoint = ep.url;
    handle.timeout_ms = ep.timeout_ms;
    handle.max_retries = ep.max_retries;
    handle.bearer_token = ep.token;
    auto client = backends::ConnectBackend(handle);
    switch (slot) {
      case BackendSlot::kGenerator:
        out.generator.emplace(std::move(client));
        break;
      case BackendSlot::kQaScorer:
        out.qa_scorer.emplace(std::move(client));
        break;
      case BackendSlot::kInstruct:
        out.instruct.emplace(std::move(client));
        break;
      case BackendSlot::kSpanExtractor:
        out.span_extractor.emplace(std::move(client));
        break;
      case BackendSlot::kSquadGenerator:
        out.squad_generator.emplace(std::move(client));
        break;
    }
  }
  return out;
}

}  // namespace qgen::config

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

#include "qgen/cli/app.h"

#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "httplib.h"
#include "json.hpp"
#include "qgen/backends/mock_backend.h"
#include "qgen/cli/worker_pool.h"
#include "qgen/codes/control_codes.h"
#include "qgen/common/errors.h"
#include "qgen/common/paragraph.h"
#include "qgen/config/app_config.h"
#include "qgen/dataprep/eval_set.h"
#include "qgen/dataprep/triples.h"
#include "qgen/pipeline/pipeline.h"
#include "qgen/service/http_api.h"
#include "qgen/service/review_store.h"
#include "qgen/text/keyphrase.h"
#include "spdlog/sinks/stdout_color_sinks.h"
#include "spdlog/spdlog.h"

namespace qgen::cli {
namespace {

using nlohmann::json;

struct GlobalOptions {
  std::string config_path;
  int jobs = 0;
  std::string log_level = "info";
};

config::AppConfig LoadAppConfig(const GlobalOptions& g) {
  std::optional<std::filesystem::path> path;
  if (!g.config_path.empty()) path = g.config_path;
  auto cfg = config::LoadConfig(path, config::ProcessEnv());
  spdlog::info("effective config: {}", config::RedactedJson(cfg).dump());
  return cfg;
}

int Jobs(const GlobalOptions& g) {
  if (g.jobs > 0) return g.jobs;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

// "-" or empty means stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw InputError("cannot write " + path);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void Close() {
    stream().flush();
    if (!stream()) throw Error("write failed");
  }

 private:
  std::ofstream file_;
};

std::ifstream OpenInput(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  return in;
}

std::vector<Paragraph> ReadParagraphs(const std::string& path) {
  auto in = OpenInput(path);
  std::vector<Paragraph> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(json::parse(line).get<Paragraph>());
    } catch (const json::exception& e) {
      throw InputError(path + " line " + std::to_string(lineno) + ": " +
                       e.what());
    } catch (const InputError& e) {
      throw InputError(path + " line " + std::to_string(lineno) + ": " +
                       e.what());
    }
  }
  return out;
}

void WriteResults(const std::vector<pipeline::PipelineResult>& results,
                  const std::string& out_path) {
  Output out(out_path);
  for (const auto& r : results) out.stream() << json(r).dump() << '\n';
  out.Close();
}

// --- keywords ------------------------------------------------------------

struct KeywordsOptions {
  std::string file;
  std::size_t max_ngram = 3;
  std::size_t top_k = 10;
  double dedup = 0.9;
};

int RunKeywords(const KeywordsOptions& o) {
  std::string text;
  if (o.file.empty() || o.file == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    auto in = OpenInput(o.file);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  text::KeyphraseOptions opts;
  opts.max_ngram = o.max_ngram;
  opts.top_k = o.top_k;
  opts.dedup_threshold = o.dedup;
  for (const auto& k : text::ExtractKeyphrases(text, opts)) {
    std::cout << json{{"phrase", k.phrase},
                      {"score", k.score},
                      {"ngram_len", k.ngram_len}}
                     .dump()
              << '\n';
  }
  return kExitOk;
}

// --- codes ---------------------------------------------------------------

struct CodesOptions {
  std::string paragraph_file;
  std::string extractor_url;
  int max_codes = -1;
};

int RunCodes(const GlobalOptions& g, const CodesOptions& o) {
  auto cfg = LoadAppConfig(g);
  if (o.max_codes >= 0) cfg.pipeline.codes.max_codes = o.max_codes;
  cfg.pipeline.codes.Validate();
  if (!o.extractor_url.empty()) {
    cfg.backends[config::BackendSlot::kSpanExtractor].url = o.extractor_url;
  }
  std::optional<backends::BackendClient> extractor;
  if (auto it = cfg.backends.find(config::BackendSlot::kSpanExtractor);
      it != cfg.backends.end()) {
    backends::BackendHandle h;
    h.role = backends::Role::kSpanExtractor;
    h.endpoint = it->second.url;
    h.timeout_ms = it->second.timeout_ms;
    h.max_retries = it->second.max_retries;
    h.bearer_token = it->second.token;
    extractor.emplace(backends::ConnectBackend(h));
  }
  auto in = OpenInput(o.paragraph_file);
  std::ostringstream ss;
  ss << in.rdbuf();
  Paragraph p;
  p.id = o.paragraph_file;
  p.text = ss.str();
  auto selection = codes::SelectControlCodes(
      p, extractor ? &*extractor : nullptr, cfg.pipeline.codes);
  if (selection.extractor_error) {
    spdlog::warn("span_extractor: {}", *selection.extractor_error);
  }
  for (const auto& c : selection.codes) std::cout << json(c).dump() << '\n';
  return kExitOk;
}

// --- run / baseline ------------------------------------------------------

struct RunOptions {
  std::string paragraphs;
  std::string out = "-";
  std::optional<uint64_t> seed;
};

int RunRun(const GlobalOptions& g, const RunOptions& o) {
  auto cfg = LoadAppConfig(g);
  config::RequireBackends(cfg, {config::BackendSlot::kGenerator,
                                config::BackendSlot::kQaScorer,
                                config::BackendSlot::kInstruct});
  if (o.seed) cfg.pipeline.decode.seed = *o.seed;
  auto paragraphs = ReadParagraphs(o.paragraphs);
  auto clients = config::ConnectBackends(cfg);
  std::function<pipeline::PipelineResult(std::size_t)> fn =
      [&](std::size_t i) {
        auto r = pipeline::RunPipeline(paragraphs[i], clients, cfg.pipeline);
        for (const auto& w : r.warnings) {
          spdlog::warn("{}: {}", paragraphs[i].id, w);
        }
        return r;
      };
  auto results = OrderedMap(paragraphs.size(), Jobs(g), fn);
  WriteResults(results, o.out);
  std::size_t ranked = 0;
  for (const auto& r : results) ranked += r.ranked.size();
  spdlog::info("run: {} paragraphs, {} ranked questions", results.size(),
               ranked);
  return kExitOk;
}

struct BaselineOptions {
  std::string variant;
  std::string paragraphs;
  std::string out = "-";
  std::optional<uint64_t> seed;
};

int RunBaselineCmd(const GlobalOptions& g, const BaselineOptions& o) {
  auto variant = pipeline::ParseBaseline(o.variant);
  if (!variant) throw ConfigError("unknown baseline variant " + o.variant);
  auto cfg = LoadAppConfig(g);
  using config::BackendSlot;
  switch (*variant) {
    case pipeline::BaselineVariant::kLead:
      config::RequireBackends(cfg, {BackendSlot::kInstruct});
      break;
    case pipeline::BaselineVariant::kRandomIn:
    case pipeline::BaselineVariant::kRandomOut:
      if (!o.seed) {
        throw ConfigError("--seed is required for the " + o.variant +
                          " baseline");
      }
      break;
    case pipeline::BaselineVariant::kSquadStyle:
      config::RequireBackends(
          cfg, {BackendSlot::kGenerator, BackendSlot::kQaScorer,
                BackendSlot::kInstruct, BackendSlot::kSquadGenerator});
      break;
  }
  uint64_t seed = o.seed.value_or(0);
  auto paragraphs = ReadParagraphs(o.paragraphs);
  auto clients = config::ConnectBackends(cfg);
  std::function<pipeline::PipelineResult(std::size_t)> fn =
      [&](std::size_t i) {
        return pipeline::RunBaseline(*variant, paragraphs[i], clients,
                                     cfg.pipeline, seed);
      };
  WriteResults(OrderedMap(paragraphs.size(), Jobs(g), fn), o.out);
  return kExitOk;
}

// --- dataprep ------------------------------------------------------------

struct PrepOptions {
  std::string in;
  std::string out;
  std::string rejects;
  std::size_t min_answer_tokens = 20;
};

int RunPrepTriples(const PrepOptions& o) {
  auto in = OpenInput(o.in);
  Output out(o.out);
  std::ofstream rejects(o.rejects, std::ios::binary | std::ios::trunc);
  if (!rejects) throw InputError("cannot write " + o.rejects);
  dataprep::TripleOptions opts;
  opts.min_answer_tokens = o.min_answer_tokens;
  auto stats = dataprep::BuildTriples(in, out.stream(), rejects, opts);
  out.Close();
  spdlog::info("prep-triples: {} pairs, {} triples, {} rejects", stats.pairs,
               stats.triples, stats.rejects);
  std::cerr << json{{"pairs", stats.pairs},
                    {"triples", stats.triples},
                    {"rejects", stats.rejects}}
                   .dump()
            << '\n';
  return kExitOk;
}

int RunValidateEval(const std::string& path, bool lenient) {
  auto set = dataprep::LoadEvalSet(std::filesystem::path(path), !lenient);
  std::cout << json(set.report).dump() << '\n';
  return kExitOk;
}

// --- serve ---------------------------------------------------------------

struct ServeOptions {
  std::string listen;
  std::string store;
  std::string ui_dir;
};

httplib::Server* g_server = nullptr;

extern "C" void StopServer(int) {
  if (g_server) g_server->stop();
}

int RunServe(const GlobalOptions& g, const ServeOptions& o) {
  auto cfg = LoadAppConfig(g);
  if (!o.listen.empty()) cfg.service.listen_addr = o.listen;
  if (!o.store.empty()) cfg.service.store_path = o.store;
  if (!o.ui_dir.empty()) cfg.service.ui_dir = o.ui_dir;

  auto colon = cfg.service.listen_addr.rfind(':');
  if (colon == std::string::npos) {
    throw ConfigError("service.listen_addr must be host:port");
  }
  std::string host = cfg.service.listen_addr.substr(0, colon);
  int port = 0;
  try {
    port = std::stoi(cfg.service.listen_addr.substr(colon + 1));
  } catch (const std::exception&) {
    throw ConfigError("service.listen_addr must be host:port");
  }

  service::ReviewStore::Options store_opts;
  if (!cfg.service.store_path.empty()) store_opts.path = cfg.service.store_path;
  service::ReviewStore store(store_opts);
  service::ServiceOptions api_opts;
  api_opts.auth_token = cfg.service.auth_token;
  if (!cfg.service.ui_dir.empty()) api_opts.ui_dir = cfg.service.ui_dir;
  api_opts.faq = cfg.faq;
  service::ReviewApi api(store, api_opts);

  httplib::Server server;
  api.Register(server);
  g_server = &server;
  std::signal(SIGINT, StopServer);
  std::signal(SIGTERM, StopServer);
  if (port == 0) {
    port = server.bind_to_any_port(host);
  } else if (!server.bind_to_port(host, port)) {
    port = -1;
  }
  if (port < 0) {
    throw ConfigError("cannot listen on " + cfg.service.listen_addr);
  }
  spdlog::info("serving on {}:{}", host, port);
  std::cout << "listening on " << host << ":" << port << std::endl;
  server.listen_after_bind();
  g_server = nullptr;
  store.Snapshot();
  return kExitOk;
}

int ExitCodeFor(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
  if (dynamic_cast<const InputError*>(&e) ||
      dynamic_cast<const NoCodeExtractable*>(&e)) {
    return kExitInput;
  }
  if (dynamic_cast<const BackendUnavailable*>(&e) ||
      dynamic_cast<const ProtocolError*>(&e) ||
      dynamic_cast<const PipelineUnavailable*>(&e)) {
    return kExitBackend;
  }
  return kExitFailure;
}

}  // namespace

int Main(int argc, char** argv) {
  CLI::App app{"Consistent question generation for news paragraphs"};
  app.set_version_flag("--version", "qgen 0.1.0");
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--config", g.config_path, "JSON config file");
  app.add_option("--jobs", g.jobs, "Worker threads (default: logical cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--log-level", g.log_level,
                 "trace, debug, info, warn, error or off");

  KeywordsOptions kw;
  auto* keywords = app.add_subcommand("keywords", "Keyphrases of a text");
  keywords->add_option("--file", kw.file, "Input text (default: stdin)");
  keywords->add_option("--max-ngram", kw.max_ngram)->check(CLI::PositiveNumber);
  keywords->add_option("--top-k", kw.top_k);
  keywords->add_option("--dedup", kw.dedup)->check(CLI::Range(0.0, 1.0));

  CodesOptions co;
  auto* codes = app.add_subcommand("codes", "Control codes of a paragraph");
  codes->add_option("--paragraph-file", co.paragraph_file, "Plain text file")
      ->required();
  codes->add_option("--extractor-url", co.extractor_url,
                    "Span extractor endpoint");
  codes->add_option("--max-codes", co.max_codes);

  RunOptions ro;
  auto* run = app.add_subcommand("run", "Generate and filter questions");
  run->add_option("--paragraphs", ro.paragraphs, "Paragraph JSONL")
      ->required();
  run->add_option("--out", ro.out, "Result JSONL (default: stdout)");
  run->add_option("--seed", ro.seed, "Decode seed");

  BaselineOptions bo;
  auto* baseline = app.add_subcommand("baseline", "Run a comparison system");
  baseline->add_option("--variant", bo.variant,
                       "lead, random-in, random-out or squad")
      ->required();
  baseline->add_option("--paragraphs", bo.paragraphs, "Paragraph JSONL")
      ->required();
  baseline->add_option("--out", bo.out, "Result JSONL (default: stdout)");
  baseline->add_option("--seed", bo.seed, "Sampling seed");

  PrepOptions po;
  auto* prep = app.add_subcommand("prep-triples", "Build training triples");
  prep->add_option("--in", po.in, "QA pair JSONL")->required();
  prep->add_option("--out", po.out, "Triple JSONL")->required();
  prep->add_option("--rejects", po.rejects, "Reject JSONL")->required();
  prep->add_option("--min-answer-tokens", po.min_answer_tokens);

  std::string eval_in;
  bool lenient = false;
  auto* validate = app.add_subcommand("validate-eval", "Check an eval set");
  validate->add_option("--in", eval_in, "Eval JSONL")->required();
  validate->add_flag("--lenient", lenient,
                     "Report domain counts without requiring the full set");

  ServeOptions so;
  auto* serve = app.add_subcommand("serve", "Review and FAQ HTTP service");
  serve->add_option("--listen", so.listen, "host:port");
  serve->add_option("--store", so.store, "Event log path");
  serve->add_option("--ui-dir", so.ui_dir, "Static assets to serve");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  auto logger = spdlog::stderr_color_mt("qgen");
  spdlog::set_default_logger(logger);
  auto level = spdlog::level::from_str(g.log_level);
  if (level == spdlog::level::off && g.log_level != "off") {
    std::cerr << "qgen: unknown log level " << g.log_level << '\n';
    return kExitConfig;
  }
  spdlog::set_level(level);

  try {
    if (!*codes && !*run && !*baseline && !*serve) LoadAppConfig(g);
    if (*keywords) return RunKeywords(kw);
    if (*codes) return RunCodes(g, co);
    if (*run) return RunRun(g, ro);
    if (*baseline) return RunBaselineCmd(g, bo);
    if (*prep) return RunPrepTriples(po);
    if (*validate) return RunValidateEval(eval_in, lenient);
    if (*serve) return RunServe(g, so);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return ExitCodeFor(e);
  }
  return kExitFailure;
}

}  // namespace qgen::cli

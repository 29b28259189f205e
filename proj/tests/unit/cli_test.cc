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

#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "../common/subprocess.h"
#include "httplib.h"
#include "json.hpp"

extern char** environ;

namespace qgen {
namespace {

using nlohmann::json;
using testing::CommandResult;
using testing::ReadFile;
using testing::RunCommand;
using testing::TempDir;
using testing::WriteFile;

const std::string kQgen = QGEN_BINARY;
const std::string kMock = "../configs/mock.json";
const std::string kParagraphs = "testdata/news_paragraphs.jsonl";

CommandResult Qgen(const std::string& args, const std::string& env = "") {
  return RunCommand(env + (env.empty() ? "" : " ") + kQgen +
                    " --log-level off " + args + " </dev/null 2>/dev/null");
}

std::vector<json> JsonLines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(json::parse(line));
  return out;
}

TEST(CliTest, RunWritesOneResultPerParagraph) {
  TempDir dir("qgen-cli");
  auto r = Qgen("--config " + kMock + " run --paragraphs " + kParagraphs +
                " --out " + (dir / "out.jsonl"));
  ASSERT_EQ(r.exit_code, 0);
  auto results = JsonLines(ReadFile(dir / "out.jsonl"));
  auto inputs = JsonLines(ReadFile(kParagraphs));
  ASSERT_EQ(results.size(), inputs.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    EXPECT_EQ(results[i]["paragraph_id"], inputs[i]["id"]);
    EXPECT_EQ(results[i]["variant"], "consistent");
    for (const auto& c : results[i]["ranked"]) {
      EXPECT_GE(c["qa"]["confidence"].get<double>(), 0.4);
      EXPECT_EQ(c["stage"], "passed_secondary");
    }
  }
  // stdout is the default destination.
  auto to_stdout = Qgen("--config " + kMock + " run --paragraphs " + kParagraphs);
  EXPECT_EQ(to_stdout.exit_code, 0);
  EXPECT_EQ(to_stdout.out, ReadFile(dir / "out.jsonl"));
}

TEST(CliTest, RunSucceedsWhenEverythingIsFiltered) {
  auto r = Qgen("--config " + kMock + " run --paragraphs " + kParagraphs,
                "CONSISTENT_FILTER_ACCEPT_TOKENS=never");
  ASSERT_EQ(r.exit_code, 0);
  auto results = JsonLines(r.out);
  EXPECT_EQ(results.size(), 12u);
  for (const auto& res : results) {
    EXPECT_TRUE(res["ranked"].empty());
    EXPECT_FALSE(res["discarded"].empty());
  }
}

TEST(CliTest, RunIsDeterministicAcrossJobCounts) {
  std::string base = "--config " + kMock + " run --paragraphs " + kParagraphs;
  auto one = Qgen("--jobs 1 " + base);
  auto four = Qgen("--jobs 4 " + base);
  ASSERT_EQ(one.exit_code, 0);
  EXPECT_FALSE(one.out.empty());
  EXPECT_EQ(one.out, four.out);
  auto seeded = Qgen(base + " --seed 99");
  EXPECT_EQ(JsonLines(seeded.out)[0]["config_snapshot"]["decode"]["seed"], 99);
}

TEST(CliTest, ExitCodes) {
  TempDir dir("qgen-cli");
  // 2: configuration.
  WriteFile(dir / "bad.json", R"({"filter": {"kapa": 0.4}})");
  EXPECT_EQ(Qgen("--config " + (dir / "bad.json") + " run --paragraphs " +
                 kParagraphs).exit_code,
            2);
  EXPECT_EQ(Qgen("run --paragraphs " + kParagraphs).exit_code, 2);
  EXPECT_EQ(Qgen("--config " + kMock + " run --paragraphs " + kParagraphs,
                 "CONSISTENT_FILTER_KAPPA=1.5").exit_code,
            2);
  EXPECT_EQ(Qgen("--config " + (dir / "missing.json") + " keywords").exit_code,
            2);
  EXPECT_EQ(Qgen("frobnicate").exit_code, 2);
  EXPECT_EQ(Qgen("run").exit_code, 2);
  EXPECT_EQ(Qgen("--config " + kMock + " baseline --variant random-in "
                 "--paragraphs " + kParagraphs).exit_code,
            2);
  EXPECT_EQ(Qgen("--config " + kMock + " baseline --variant nope --seed 1 "
                 "--paragraphs " + kParagraphs).exit_code,
            2);

  // 3: input.
  WriteFile(dir / "broken.jsonl", "{\"id\": \"a\", \"text\": \"ok\"}\n{oops\n");
  EXPECT_EQ(Qgen("--config " + kMock + " run --paragraphs " +
                 (dir / "broken.jsonl")).exit_code,
            3);
  WriteFile(dir / "blank.jsonl", "{\"id\": \"a\", \"text\": \"   \"}\n");
  EXPECT_EQ(Qgen("--config " + kMock + " run --paragraphs " +
                 (dir / "blank.jsonl")).exit_code,
            3);
  EXPECT_EQ(Qgen("--config " + kMock + " run --paragraphs " +
                 (dir / "absent.jsonl")).exit_code,
            3);

  // 4: backend unavailable.
  EXPECT_EQ(Qgen("--config " + kMock + " run --paragraphs " + kParagraphs,
                 "CONSISTENT_BACKEND_GENERATOR_URL=http://127.0.0.1:1 "
                 "CONSISTENT_BACKEND_GENERATOR_MAX_RETRIES=0")
                .exit_code,
            4);
}

TEST(CliTest, KeywordsEmitsPhraseScoreAndLength) {
  TempDir dir("qgen-cli");
  WriteFile(dir / "q.txt",
            "Where do presidential campaign donations actually get spent?");
  auto r = Qgen("keywords --file " + (dir / "q.txt") + " --top-k 1");
  ASSERT_EQ(r.exit_code, 0);
  auto lines = JsonLines(r.out);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0]["phrase"], "presidential campaign donations");
  EXPECT_EQ(lines[0]["ngram_len"], 3);
  EXPECT_TRUE(lines[0]["score"].is_number_float());
  EXPECT_EQ(lines[0].size(), 3u);

  auto piped = RunCommand("printf 'Bluetooth. Pairing.' | " + kQgen +
                          " --log-level off keywords");
  ASSERT_EQ(piped.exit_code, 0);
  EXPECT_EQ(JsonLines(piped.out).size(), 2u);
}

TEST(CliTest, CodesUsesTheConfiguredExtractor) {
  TempDir dir("qgen-cli");
  WriteFile(dir / "p.txt",
            "Bitcoins and NFTs have moved from a once-niche world into the "
            "mainstream. Bitcoins have made a lot of people very rich. NFTs "
            "have spread via art, sports, entertainment and media.");
  auto r = Qgen("codes --paragraph-file " + (dir / "p.txt") +
                " --extractor-url mock:bitcoin");
  ASSERT_EQ(r.exit_code, 0);
  auto codes = JsonLines(r.out);
  ASSERT_EQ(codes.size(), 3u);
  EXPECT_EQ(codes[0]["phrase"], "once-niche world");
  EXPECT_EQ(codes[0]["source"], "span");
  EXPECT_EQ(codes[1]["source"], "keyword");
  EXPECT_EQ(codes[2]["phrase"], "Bitcoins");

  auto capped = Qgen("codes --paragraph-file " + (dir / "p.txt") +
                     " --max-codes 1");
  ASSERT_EQ(capped.exit_code, 0);
  auto only = JsonLines(capped.out);
  ASSERT_EQ(only.size(), 1u);
  EXPECT_EQ(only[0]["source"], "keyword");
}

TEST(CliTest, BaselineVariants) {
  std::string base = "--config " + kMock + " baseline --paragraphs " +
                     kParagraphs + " --seed 3 --variant ";
  for (std::string variant : {"lead", "random-in", "random-out", "squad"}) {
    auto r = Qgen(base + variant);
    ASSERT_EQ(r.exit_code, 0) << variant;
    auto results = JsonLines(r.out);
    ASSERT_EQ(results.size(), 12u) << variant;
    for (const auto& res : results) {
      EXPECT_TRUE(res["discarded"].empty()) << variant;
      for (const auto& c : res["ranked"]) {
        EXPECT_EQ(c["stage"], "generated") << variant;
      }
    }
  }
  EXPECT_EQ(Qgen(base + "random-in").out, Qgen(base + "random-in").out);
}

TEST(CliTest, PrepTriplesConservesCounts) {
  TempDir dir("qgen-cli");
  auto r = Qgen("prep-triples --in testdata/qa_pairs_sample.jsonl --out " +
                (dir / "t.jsonl") + " --rejects " + (dir / "r.jsonl"));
  ASSERT_EQ(r.exit_code, 0);
  auto triples = JsonLines(ReadFile(dir / "t.jsonl"));
  auto rejects = JsonLines(ReadFile(dir / "r.jsonl"));
  EXPECT_EQ(triples.size() + rejects.size(), 3u);
  ASSERT_EQ(triples.size(), 1u);
  EXPECT_EQ(triples[0]["control_code"], "presidential campaign donations");

  auto strict = Qgen("prep-triples --in testdata/qa_pairs_sample.jsonl --out " +
                     (dir / "t.jsonl") + " --rejects " + (dir / "r.jsonl") +
                     " --min-answer-tokens 1000");
  ASSERT_EQ(strict.exit_code, 0);
  EXPECT_EQ(JsonLines(ReadFile(dir / "t.jsonl")).size(), 0u);
  EXPECT_EQ(JsonLines(ReadFile(dir / "r.jsonl")).size(), 3u);
}

TEST(CliTest, ValidateEval) {
  const std::map<std::string, int> counts = {
      {"science", 55},   {"climate", 66},  {"technology", 98},
      {"health", 110},   {"nyregion", 100}, {"business", 100}};
  std::string body;
  int n = 0;
  for (const auto& [domain, count] : counts) {
    for (int i = 0; i < count; ++i, ++n) {
      body += json{{"id", "e" + std::to_string(n)},
                   {"text", "Paragraph number " + std::to_string(n) + "."},
                   {"domain", domain},
                   {"headline", "Headline " + std::to_string(n)},
                   {"reference_question", "What happened?"}}
                  .dump() +
              "\n";
    }
  }
  TempDir dir("qgen-cli");
  WriteFile(dir / "eval.jsonl", body);
  auto ok = Qgen("validate-eval --in " + (dir / "eval.jsonl"));
  ASSERT_EQ(ok.exit_code, 0);
  auto report = json::parse(ok.out);
  EXPECT_EQ(report["total"], 529);
  EXPECT_EQ(report["conforming"], true);
  EXPECT_EQ(report["domain_counts"]["health"], 110);

  WriteFile(dir / "short.jsonl", body.substr(0, body.rfind('\n', body.size() - 2) + 1));
  EXPECT_EQ(Qgen("validate-eval --in " + (dir / "short.jsonl")).exit_code, 3);
  auto lenient = Qgen("validate-eval --lenient --in " + (dir / "short.jsonl"));
  ASSERT_EQ(lenient.exit_code, 0);
  EXPECT_EQ(json::parse(lenient.out)["conforming"], false);
  EXPECT_EQ(json::parse(lenient.out)["total"], 528);
}

TEST(CliTest, ServeAnswersAndStopsOnSigterm) {
  TempDir dir("qgen-cli");
  int fds[2];
  ASSERT_EQ(::pipe(fds), 0);
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, fds[1], STDOUT_FILENO);
  posix_spawn_file_actions_addclose(&actions, fds[0]);
  std::string store = dir / "events.jsonl";
  std::vector<std::string> args = {kQgen,    "--log-level", "off",   "serve",
                                   "--listen", "127.0.0.1:0", "--store", store};
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);
  std::string token_env = "CONSISTENT_SERVICE_AUTH_TOKEN=t0k";
  std::vector<char*> envp;
  for (char** e = environ; *e; ++e) envp.push_back(*e);
  envp.push_back(token_env.data());
  envp.push_back(nullptr);
  pid_t pid;
  ASSERT_EQ(posix_spawn(&pid, kQgen.c_str(), &actions, nullptr, argv.data(),
                        envp.data()),
            0);
  posix_spawn_file_actions_destroy(&actions);
  ::close(fds[1]);

  std::string line;
  char c;
  while (::read(fds[0], &c, 1) == 1 && c != '\n') line += c;
  ::close(fds[0]);
  auto colon = line.rfind(':');
  ASSERT_NE(colon, std::string::npos) << line;
  int port = std::stoi(line.substr(colon + 1));

  httplib::Client client("127.0.0.1", port);
  auto denied = client.Get("/v1/review");
  ASSERT_TRUE(denied);
  EXPECT_EQ(denied->status, 401);
  auto ok = client.Get("/v1/review", {{"Authorization", "Bearer t0k"}});
  ASSERT_TRUE(ok);
  EXPECT_EQ(ok->status, 200);
  EXPECT_TRUE(json::parse(ok->body).contains("version"));

  ::kill(pid, SIGTERM);
  int status = 0;
  ASSERT_EQ(::waitpid(pid, &status, 0), pid);
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 0);
}

}  // namespace
}  // namespace qgen

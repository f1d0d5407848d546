// Copyright 2026 The gazeq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <sstream>

#include <gtest/gtest.h>

#include "gazeq/app.hpp"
#include "support/paths.hpp"

namespace gazeq {
namespace {

using testing::fixtures_dir;
using testing::source_dir;
using testing::TempDir;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run gazeq(std::vector<std::string> args) {
  args.insert(args.begin(), "gazeq");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = app::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string home() { return (fixtures_dir() / "home-01").string(); }
std::string backends() { return (source_dir() / "configs" / "backends.toml").string(); }

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(gazeq({}).code, 2);
  EXPECT_EQ(gazeq({"frobnicate"}).code, 2);
  EXPECT_EQ(gazeq({"respond"}).code, 2);
  EXPECT_EQ(gazeq({"respond", "--session", home(), "--variant", "VOILA-Q"}).code, 2);
  EXPECT_EQ(gazeq({"eval", "--results", "x"}).code, 2);
  EXPECT_EQ(gazeq({"analyze", "--session", home(), "--window", "-1"}).code, 2);
  EXPECT_EQ(gazeq({"--version"}).code, 0);
}

TEST(Cli, FailuresExitOneWithAnErrorObject) {
  TempDir d;
  auto r = gazeq({"respond", "--session", (d / "missing").string(), "--out", (d / "o").string()});
  EXPECT_EQ(r.code, 1);
  auto e = json::parse(r.err.substr(0, r.err.find('\n')));
  EXPECT_EQ(e.at("error"), "MissingFile");
  EXPECT_EQ(e.at("stage"), "load");
  EXPECT_EQ(e.at("subcommand"), "respond");

  // No backends configured: the first required role is named.
  r = gazeq({"respond", "--session", home(), "--out", (d / "o").string()});
  EXPECT_EQ(r.code, 1);
  e = json::parse(r.err.substr(0, r.err.find('\n')));
  EXPECT_EQ(e.at("error"), "ConfigError");
  EXPECT_EQ(e.at("detail"), "captioner");
  EXPECT_FALSE(fs::exists(d / "o" / "VOILA-G"));
}

TEST(Cli, RespondEvalReplayRoundTrip) {
  TempDir d;
  auto r = gazeq({"--seed", "0", "respond", "--session", home(), "--backends", backends(), "--variant", "VOILA-G,VOILA",
                  "--query", "q01,q04", "--out", (d / "results").string(), "--jobs", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(trim(r.out), (d / "results" / "run_manifest.json").generic_string());
  auto manifest = json::parse(read_file(d / "results" / "run_manifest.json"));
  EXPECT_EQ(manifest.at("subcommand"), "respond");
  EXPECT_EQ(manifest.at("outputs").size(), 4u);
  EXPECT_TRUE(manifest.at("inputs").contains(home()));
  auto res = json::parse(read_file(d / "results" / "VOILA" / "q04.json"));
  EXPECT_EQ(res.at("variant"), "VOILA");
  EXPECT_EQ(res.at("query_id"), "q04");
  EXPECT_EQ(res.at("trace").at("session"), home());

  r = gazeq({"eval", "--results", (d / "results").string(), "--truth", home() + "/truth.json", "--out",
             (d / "report").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(d / "report.json"));
  EXPECT_TRUE(fs::exists(d / "report.csv"));
  EXPECT_TRUE(fs::exists(d / "report.manifest.json"));
  auto rep = json::parse(read_file(d / "report.json"));
  EXPECT_EQ(rep.at("variant_order"), json::array({"VOILA-G", "VOILA"}));

  r = gazeq({"replay", "--trace", (d / "results").string(), "--fixtures", (fixtures_dir() / "backends").string(), "--out",
             (d / "replay").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_file(d / "replay" / "VOILA-G" / "q01.json"), read_file(d / "results" / "VOILA-G" / "q01.json"));

  // A tampered result no longer matches its regeneration.
  auto tampered = json::parse(read_file(d / "results" / "VOILA-G" / "q01.json"));
  tampered["trace"]["prompt_hash"] = "0000000000000000";
  write_file(d / "results" / "VOILA-G" / "q01.json", app::dump_result(tampered));
  r = gazeq({"replay", "--trace", (d / "results").string(), "--fixtures", (fixtures_dir() / "backends").string(), "--out",
             (d / "replay2").string()});
  EXPECT_EQ(r.code, 1);
  auto e = json::parse(r.err.substr(0, r.err.find('\n')));
  EXPECT_EQ(e.at("error"), "DivergenceDetected");
  EXPECT_NE(e.at("detail").get<std::string>().find("VOILA-G/q01 (trace.prompt_hash)"), std::string::npos);
  EXPECT_TRUE(fs::exists(d / "replay2" / "run_manifest.json"));
}

TEST(Cli, ConfigFileSuppliesDefaultsAndFlagsWin) {
  TempDir d;
  write_file(d / "g.toml", "seed = 0\n[respond]\nsession = \"" + home() + "\"\nbackends = \"" + backends() +
                               "\"\nvariant = [\"VOILA-T\", \"VOILA-S\"]\nquery = \"q02\"\nout = \"" +
                               (d / "from_config").generic_string() + "\"\n");
  auto r = gazeq({"--config", (d / "g.toml").string(), "respond"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(d / "from_config" / "VOILA-T" / "q02.json"));
  EXPECT_TRUE(fs::exists(d / "from_config" / "VOILA-S" / "q02.json"));

  r = gazeq({"--config", (d / "g.toml").string(), "respond", "--variant", "VOILA-center", "--out", (d / "flag").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(d / "flag" / "VOILA-center" / "q02.json"));
  EXPECT_FALSE(fs::exists(d / "flag" / "VOILA-T"));

  write_file(d / "bad.toml", "[respond]\njobs = \"many\"\n");
  r = gazeq({"--config", (d / "bad.toml").string(), "respond", "--session", home()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("\"detail\":\"jobs\""), std::string::npos);
}

TEST(Cli, SynthThenAnalyze) {
  TempDir d;
  auto r = gazeq({"--seed", "9", "synth", "--config", (source_dir() / "configs" / "synth.json").string(), "--queries", "6",
                  "--out", (d / "s").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(d / "s" / "plant_record.json"));
  auto plant = json::parse(read_file(d / "s" / "plant_record.json"));
  EXPECT_EQ(plant.at("seed"), 9);
  EXPECT_EQ(plant.at("queries").size(), 6u);

  r = gazeq({"analyze", "--session", (d / "s").string(), "--session", home(), "--out", (d / "a").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto summary = json::parse(read_file(d / "a" / "summary.json"));
  EXPECT_EQ(summary.at("sessions"), 2);
  EXPECT_EQ(summary.at("queries"), 18);
  for (const char* f : {"duration_profile.csv", "cooccurrence.csv", "relevancy.csv", "startup.csv", "run_manifest.json"})
    EXPECT_TRUE(fs::exists(d / "a" / f)) << f;
}

TEST(Cli, LocalizeWritesRecords) {
  TempDir d;
  auto r = gazeq({"localize", "--session", home(), "--backends", backends(), "--variant", "VOILA-G", "--query", "q05",
                  "--out", (d / "loc").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rec = json::parse(read_file(d / "loc" / "VOILA-G" / "q05.json"));
  const auto& l = rec.at("localization");
  EXPECT_EQ(l.at("frames").size(), l.at("gaze_points").size());
  EXPECT_EQ(l.at("frames").size(), l.at("interests").size());
}

TEST(Cli, BinaryExitCodes) {
  auto cli = testing::cli_path().string();
  EXPECT_EQ(std::system((cli + " --version > /dev/null 2>&1").c_str()), 0);
  EXPECT_EQ(WEXITSTATUS(std::system((cli + " > /dev/null 2>&1").c_str())), 2);
  EXPECT_EQ(WEXITSTATUS(std::system((cli + " analyze --session /nonexistent > /dev/null 2>&1").c_str())), 1);
}

}  // namespace
}  // namespace gazeq

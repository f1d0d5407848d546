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

#include <gtest/gtest.h>

#include "gazeq/analytics.hpp"
#include "gazeq/synth.hpp"
#include "support/oracles.hpp"
#include "support/paths.hpp"

namespace gazeq {
namespace {

using testing::TempDir;

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::UsageError;
}

std::string tree_bytes(const fs::path& dir) {
  std::string all;
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) all += fs::relative(f, dir).generic_string() + "\n" + read_file(f);
  return all;
}

TEST(Generate, SameSeedSameBytes) {
  SynthConfig c;
  c.seed = 5;
  TempDir a, b;
  save_session(generate(c).session, a.path());
  save_session(generate(c).session, b.path());
  EXPECT_EQ(tree_bytes(a.path()), tree_bytes(b.path()));
  c.seed = 6;
  TempDir d;
  save_session(generate(c).session, d.path());
  EXPECT_NE(tree_bytes(a.path()), tree_bytes(d.path()));
}

TEST(Generate, IdsAndStructure) {
  SynthConfig c;
  c.query_count = 3;
  auto r = generate(c);
  EXPECT_EQ(r.session.queries[0].id, "q001");
  EXPECT_EQ(r.session.queries[2].id, "q003");
  EXPECT_EQ(r.session.fixations[0].id, "f000000");
  EXPECT_EQ(r.record.queries.size(), 3u);
  for (const auto& q : r.session.queries) {
    EXPECT_GE(q.words.size(), c.words_min);
    EXPECT_LE(q.words.size(), c.words_max);
    EXPECT_EQ(r.truth.entries.at(q.id).size(), 1u);
  }
}

TEST(Config, ValidationAndJson) {
  SynthConfig c;
  c.pronoun_rate = 1.5;
  EXPECT_EQ(kind_of([&] { c.validate(); }), ErrorKind::ConfigError);
  c = {};
  c.startup_mean = 25;
  EXPECT_EQ(kind_of([&] { c.validate(); }), ErrorKind::ConfigError);
  c = {};
  c.words_min = 5;
  c.words_max = 4;
  EXPECT_EQ(kind_of([&] { c.validate(); }), ErrorKind::ConfigError);
  EXPECT_EQ(kind_of([] { synth_config_from_json(json{{"colour", 1}}); }), ErrorKind::ConfigError);
  EXPECT_EQ(kind_of([] { synth_config_from_json(json{{"seed", "x"}}); }), ErrorKind::ConfigError);
  SynthConfig d;
  d.seed = 77;
  d.words_min = 2;
  EXPECT_EQ(to_json(synth_config_from_json(to_json(d))), to_json(d));
}

TEST(Config, ShippedSampleParses) {
  auto c = synth_config_from_json(json::parse(read_file(testing::source_dir() / "configs" / "synth.json")));
  EXPECT_NO_THROW(generate(c));
}

TEST(PlantOracle, AgreesWithAnalytics) {
  SynthConfig c;
  c.query_count = 30;
  c.seed = 3;
  auto r = generate(c);
  auto rec = plant_oracle(c, r.session);
  EXPECT_EQ(rec, r.record);
  for (std::size_t i = 0; i < r.session.queries.size(); ++i) {
    const auto& q = r.session.queries[i];
    const auto& p = rec.queries[i];
    auto st = startup_time(q, r.session.fixations, *r.session.labels);
    ASSERT_TRUE(st.startup.has_value()) << q.id;
    EXPECT_EQ(*st.startup, p.startup) << q.id;
    EXPECT_EQ(st.source_fixation, std::optional<std::string>(p.startup_fixation)) << q.id;
    EXPECT_EQ(oracle::startup(r.session, q).value, st.startup);

    auto seq = detail::labeled_only(window_fixations(r.session.fixations, q), q, *r.session.labels);
    EXPECT_EQ(longest_fixation(q, seq, *r.session.labels, true), std::optional<std::string>(p.longest_relevant)) << q.id;
    EXPECT_EQ(longest_fixation(q, seq, *r.session.labels, false), p.longest_irrelevant) << q.id;
  }
}

TEST(PlantOracle, RejectsAForeignSession) {
  SynthConfig c;
  c.seed = 3;
  auto r = generate(c);
  c.seed = 4;
  EXPECT_EQ(kind_of([&] { plant_oracle(c, r.session); }), ErrorKind::SeedMismatch);
}

TEST(Startup, ZeroSpreadIsExact) {
  SynthConfig c;
  c.startup_spread = 0;
  c.startup_mean = 4.62;
  c.query_count = 20;
  auto r = generate(c);
  for (const auto& q : r.session.queries) {
    auto st = startup_time(q, r.session.fixations, *r.session.labels);
    EXPECT_EQ(st.startup, std::optional<double>(detail::quantize(4.62))) << q.id;
  }
}

TEST(Cooccurrence, FullRateNoWanderIsPerfect) {
  SynthConfig c;
  c.pronoun_cooccurrence_rate = 1;
  c.wander_rate = 0;
  c.pronoun_rate = 0.5;
  c.query_count = 40;
  auto r = generate(c);
  std::vector<Session> one = {r.session};
  auto p = pronoun_cooccurrence(one);
  ASSERT_GT(p.pronouns, 0u);
  EXPECT_EQ(p.pronouns, r.record.pronouns());
  EXPECT_EQ(p.at(0).c, p.pronouns);
  EXPECT_EQ(*p.at(0).p(), 1.0);
}

TEST(Session, SavedSessionReloadsWithLabelsAndTruth) {
  SynthConfig c;
  c.query_count = 5;
  auto r = generate(c);
  TempDir d;
  save_session(r.session, d.path());
  auto back = load_session(d.path());
  EXPECT_TRUE(back.same_content(r.session));
  EXPECT_EQ(plant_oracle(c, back), r.record);
  EXPECT_EQ(back.truth->entries, r.truth.entries);
}

}  // namespace
}  // namespace gazeq

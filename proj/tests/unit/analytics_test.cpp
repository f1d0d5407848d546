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
#include "support/oracles.hpp"
#include "support/paths.hpp"
#include "support/random_instances.hpp"

namespace gazeq {
namespace {

// Hand-built query at t = 10 with words [10,11], [11,12], [12.5,13].
struct Toy {
  Session s;
  Toy() {
    s.id = "toy";
    QuerySpan q;
    q.id = "q";
    q.t_start = 10;
    q.t_end = 13;
    q.words = {{"what", 10, 11, 0, false}, {"is", 11, 12, 1, false}, {"this", 12.5, 13, 2, true}};
    s.queries = {q};
    s.fixations = {{"a", -12, -11, 0, 0},  // outside the 20 s window
                   {"b", -10, -9, 0, 0},   // starts exactly 20 s before onset
                   {"c", 2, 4.5, 0, 0},
                   {"d", 9, 10, 0, 0},     // touches word 0 at t = 10
                   {"e", 10.5, 11.2, 0, 0},
                   {"f", 12.2, 12.5, 0, 0},
                   {"g", 12.5, 13.5, 0, 0}};
    RelevanceLabels l;
    l.set("q", "a", true);
    l.set("q", "b", true);
    l.set("q", "c", false);
    l.set("q", "d", true);
    l.set("q", "e", false);
    l.set("q", "g", true);  // f stays unlabeled
    s.labels = l;
    validate(s);
  }
  const QuerySpan& q() const { return s.queries[0]; }
};

TEST(Align, ClosedIntervalsIncludeTouchingFixations) {
  Toy t;
  auto m = align(t.q(), t.s.fixations);
  EXPECT_EQ(m.query_id, "q");
  ASSERT_EQ(m.words.size(), 3u);
  EXPECT_EQ(m.words[0], (std::vector<std::string>{"d", "e"}));
  EXPECT_EQ(m.words[1], (std::vector<std::string>{"e"}));
  EXPECT_EQ(m.words[2], (std::vector<std::string>{"f", "g"}));
}

TEST(Longest, PicksByDurationAmongLabeledWithTheWantedLabel) {
  Toy t;
  auto seq = detail::labeled_only(window_fixations(t.s.fixations, t.q()), t.q(), *t.s.labels);
  EXPECT_EQ(longest_fixation(t.q(), seq, *t.s.labels, false), std::optional<std::string>("c"));
  // b, d and g all last 1 s; the earliest start wins.
  EXPECT_EQ(longest_fixation(t.q(), seq, *t.s.labels, true), std::optional<std::string>("b"));
}

TEST(Longest, TieOnDurationAndStartFallsBackToId) {
  RelevanceLabels l;
  l.set("q", "z", true);
  l.set("q", "y", true);
  QuerySpan q;
  q.id = "q";
  std::vector<Fixation> c = {{"z", 0, 1, 0, 0}, {"y", 0, 1, 0, 0}};
  EXPECT_EQ(longest_fixation(q, c, l, true), std::optional<std::string>("y"));
}

TEST(Longest, UnlabeledCandidateIsAnError) {
  Toy t;
  auto all = window_fixations(t.s.fixations, t.q());
  try {
    longest_fixation(t.q(), all, *t.s.labels, true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnlabeledFixation);
    EXPECT_EQ(e.detail(), "f");
  }
}

TEST(Longest, NoCandidateWithTheLabelIsEmpty) {
  Toy t;
  std::vector<Fixation> only_rel = {t.s.fixations[1]};
  EXPECT_FALSE(longest_fixation(t.q(), only_rel, *t.s.labels, false).has_value());
}

TEST(Startup, EarliestRelevantStartWithinCapInclusive) {
  Toy t;
  auto r = startup_time(t.q(), t.s.fixations, *t.s.labels);
  ASSERT_TRUE(r.startup.has_value());
  EXPECT_DOUBLE_EQ(*r.startup, 20.0);
  EXPECT_EQ(r.source_fixation, std::optional<std::string>("b"));
  // A shorter cap excludes b and a; d (starting 1 s before) remains.
  auto r2 = startup_time(t.q(), t.s.fixations, *t.s.labels, 5.0);
  EXPECT_DOUBLE_EQ(*r2.startup, 1.0);
  EXPECT_EQ(r2.source_fixation, std::optional<std::string>("d"));
}

TEST(Startup, UndefinedWithoutRelevantPreQueryFixation) {
  Toy t;
  RelevanceLabels none;
  none.set("q", "c", false);
  auto r = startup_time(t.q(), t.s.fixations, none);
  EXPECT_FALSE(r.startup.has_value());
  EXPECT_FALSE(r.source_fixation.has_value());
}

TEST(Startup, StatsNeedAtLeastOneDefinedValue) {
  std::vector<StartupResult> rs = {{"a", 1.0, "x"}, {"b", std::nullopt, std::nullopt}, {"c", 4.0, "y"}, {"d", 2.0, "z"}};
  auto st = startup_stats(rs);
  EXPECT_DOUBLE_EQ(st.mean, 7.0 / 3.0);
  EXPECT_DOUBLE_EQ(st.median, 2.0);
  EXPECT_EQ(st.defined, 3u);
  EXPECT_EQ(st.undefined, 1u);
  std::vector<StartupResult> none = {{"a", std::nullopt, std::nullopt}};
  EXPECT_THROW(startup_stats(none), Error);
}

TEST(Cooccurrence, CountsLabeledFixationsAroundPronouns) {
  Toy t;
  std::vector<Session> ss = {t.s};
  auto p = pronoun_cooccurrence(ss, 2);
  EXPECT_EQ(p.pronouns, 1u);
  // r = 0: word "this" overlaps f (unlabeled, skipped) and g (relevant).
  EXPECT_EQ(p.at(0).c, 1u);
  EXPECT_EQ(p.at(0).c_all, 1u);
  // r = -1: word "is" overlaps e (irrelevant).
  EXPECT_EQ(p.at(-1).c, 0u);
  EXPECT_EQ(p.at(-1).c_all, 1u);
  // r = -2: word "what" overlaps d (relevant) and e (irrelevant).
  EXPECT_EQ(p.at(-2).c, 1u);
  EXPECT_EQ(p.at(-2).c_all, 2u);
  EXPECT_EQ(p.at(1).c_all, 0u);
  EXPECT_FALSE(p.at(1).p().has_value());
  EXPECT_DOUBLE_EQ(*p.at(-2).p(), 0.5);
}

TEST(Relevancy, IndexIsThePositionInTheWholeWindow) {
  Toy t;
  std::vector<Session> ss = {t.s};
  auto pts = relevancy_distribution(ss);
  // Window holds b..g (a is outside); f is unlabeled and skipped.
  ASSERT_EQ(pts.size(), 5u);
  EXPECT_EQ(pts[0].fixation_id, "b");
  EXPECT_EQ(pts[0].index, 0u);
  EXPECT_EQ(pts[4].fixation_id, "g");
  EXPECT_EQ(pts[4].index, 5u);
  EXPECT_DOUBLE_EQ(pts[1].duration, 2.5);
}

TEST(DurationProfile, AnchorsOnTheLongestAndAveragesNeighbors) {
  Toy t;
  std::vector<Session> ss = {t.s};
  auto irr = duration_profile(ss, false, 2);
  // Labeled sequence: b c d e g; anchor c at position 1.
  EXPECT_EQ(irr.anchored, 1u);
  EXPECT_DOUBLE_EQ(irr.bins.at(0).mean(), 2.5);
  EXPECT_DOUBLE_EQ(irr.bins.at(-1).mean(), 1.0);
  EXPECT_EQ(irr.bins.at(2).mean(), 11.2 - 10.5);  // e, same arithmetic as its duration
  EXPECT_EQ(irr.bins.count(-2), 0u);
}

TEST(Analytics, UnlabeledSessionIsAPreconditionFailure) {
  Toy t;
  t.s.labels.reset();
  std::vector<Session> ss = {t.s};
  try {
    pronoun_cooccurrence(ss);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PreconditionFailed);
  }
}

// Oracle agreement on random instances; the acceptance binary runs the
// larger sweep.
class OracleSweep : public ::testing::TestWithParam<int> {};

TEST_P(OracleSweep, LibraryMatchesBruteForce) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()) * 7919 + 1);
  for (int i = 0; i < 40; ++i) {
    Session s = testing::random_instance(rng, "r" + std::to_string(i));
    const auto& q = s.queries[0];
    std::vector<Session> one = {s};
    ASSERT_EQ(align(q, s.fixations).words, oracle::align(s, q));

    auto seq = detail::labeled_only(window_fixations(s.fixations, q), q, *s.labels);
    for (bool want : {true, false}) ASSERT_EQ(longest_fixation(q, seq, *s.labels, want), oracle::longest(s, q, want));

    auto co = pronoun_cooccurrence(one);
    auto oc = oracle::cooccurrence(one);
    for (int r = -5; r <= 5; ++r) {
      ASSERT_EQ(co.at(r).c, oc[r].c);
      ASSERT_EQ(co.at(r).c_all, oc[r].c_all);
    }
    ASSERT_EQ(co.pronouns, oracle::pronoun_count(one));

    auto rd = relevancy_distribution(one);
    auto od = oracle::relevancy(one);
    ASSERT_EQ(rd.size(), od.size());
    for (std::size_t k = 0; k < rd.size(); ++k) {
      ASSERT_EQ(rd[k].fixation_id, od[k].fixation_id);
      ASSERT_EQ(rd[k].index, od[k].index);
      ASSERT_EQ(rd[k].duration, od[k].duration);
      ASSERT_EQ(rd[k].relevant, od[k].relevant);
    }

    auto st = startup_time(q, s.fixations, *s.labels);
    auto os = oracle::startup(s, q);
    ASSERT_EQ(st.startup, os.value);
    ASSERT_EQ(st.source_fixation, os.fixation);
    if (st.startup) {
      ASSERT_LE(*st.startup, kPreQuerySeconds);
    }

    for (bool want : {true, false}) {
      auto dp = duration_profile(one, want);
      auto op = oracle::duration_profile(one, want);
      ASSERT_EQ(dp.bins.size(), op.size());
      for (const auto& [k, bin] : dp.bins) {
        ASSERT_EQ(bin.count, op.at(k).second);
        ASSERT_EQ(bin.sum, op.at(k).first);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, OracleSweep, ::testing::Range(0, 5));

TEST(Analytics, HomeFixtureMatchesOracles) {
  Session s = load_session(testing::fixtures_dir() / "home-01");
  std::vector<Session> one = {s};
  for (const auto& q : s.queries) {
    auto st = startup_time(q, s.fixations, *s.labels);
    auto os = oracle::startup(s, q);
    EXPECT_EQ(st.startup, os.value) << q.id;
    EXPECT_EQ(align(q, s.fixations).words, oracle::align(s, q)) << q.id;
  }
  auto co = pronoun_cooccurrence(one);
  auto oc = oracle::cooccurrence(one);
  for (int r = -5; r <= 5; ++r) EXPECT_EQ(co.at(r).c_all, oc[r].c_all);
  // q08 has no relevant fixation; every other query has one.
  auto all = startup_times(one);
  std::size_t undefined = 0;
  for (const auto& r : all) undefined += r.startup ? 0 : 1;
  EXPECT_EQ(undefined, 1u);
}

}  // namespace
}  // namespace gazeq

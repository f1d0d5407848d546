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

#include "fixture_authoring/record.hpp"
#include "gazeq/pipeline.hpp"
#include "support/paths.hpp"

namespace gazeq {
namespace {

using testing::fixtures_dir;
using testing::TempDir;

Backends fixture_backends() { return Backends::all_fixture(fixtures_dir() / "backends"); }

// Wraps a client and fails every call for one role.
class FailingRole final : public BackendClient {
 public:
  FailingRole(std::shared_ptr<BackendClient> inner, Role role, ErrorKind kind)
      : inner_(std::move(inner)), role_(role), kind_(kind) {}
  json call(const BackendRequest& r) override {
    if (r.role == role_) fail(kind_, "injected", std::string(to_string(role_)));
    return inner_->call(r);
  }

 private:
  std::shared_ptr<BackendClient> inner_;
  Role role_;
  ErrorKind kind_;
};

// Answers any responder prompt, so degraded prompts still complete.
class AnyPromptResponder final : public BackendClient {
 public:
  json call(const BackendRequest&) override {
    return {{"text", R"({"thought": "t", "answer": "a", "query": "q"})"}};
  }
};

Backends with_failure(Role role, ErrorKind kind, bool any_prompt = false) {
  Backends b;
  auto inner = std::make_shared<FixtureBackend>(fixtures_dir() / "backends");
  for (Role r : kAllRoles) {
    BackendDescriptor d;
    d.role = r;
    d.fixture_dir = fixtures_dir() / "backends";
    if (r == Role::Responder && any_prompt) b.set(d, std::make_shared<AnyPromptResponder>());
    else b.set(d, std::make_shared<FailingRole>(inner, role, kind));
  }
  return b;
}

bool has_note(const RunTrace& t, const std::string& prefix) {
  for (const auto& n : t.localization.notes)
    if (n.rfind(prefix, 0) == 0) return true;
  return false;
}

TEST(Variants, AxesAndRequiredRoles) {
  EXPECT_EQ(variant_names().size(), 6u);
  auto g = make_variant("VOILA-G");
  EXPECT_EQ(g.temporal, TemporalMode::GazeDriven);
  EXPECT_EQ(g.spatial, SpatialMode::GazeRegion);
  auto t = make_variant("VOILA-T");
  EXPECT_EQ(t.temporal, TemporalMode::GazeDriven);
  EXPECT_EQ(t.spatial, SpatialMode::GlobalDetection);
  auto v = make_variant("VOILA", 9);
  EXPECT_EQ(v.temporal, TemporalMode::RandomSharp);
  EXPECT_EQ(v.spatial, SpatialMode::GlobalDetection);
  EXPECT_EQ(v.seed, 9u);
  EXPECT_THROW(make_variant("VOILA-X"), Error);

  QuerySpan spoken;
  spoken.words = {{"this", 0, 1, 0, true}};
  QuerySpan audio;
  auto roles = [](const VariantConfig& v, const QuerySpan& q) {
    auto r = required_roles(v, q);
    return std::set<Role>(r.begin(), r.end());
  };
  EXPECT_EQ(roles(g, spoken), (std::set<Role>{Role::Captioner, Role::Detector, Role::Responder, Role::Segmenter}));
  EXPECT_EQ(roles(v, spoken), (std::set<Role>{Role::Captioner, Role::Detector, Role::Responder}));
  EXPECT_EQ(roles(make_variant("VOILA-ext"), audio),
            (std::set<Role>{Role::Captioner, Role::Detector, Role::Responder, Role::Segmenter, Role::GazeProvider,
                            Role::Transcriber}));
}

TEST(RunQuery, MissingRoleIsAConfigErrorBeforeAnyCall) {
  Session s = load_session(fixtures_dir() / "home-01");
  Backends b;
  BackendDescriptor d;
  d.role = Role::Responder;
  d.fixture_dir = "/nonexistent";
  b.set(d, std::make_shared<FixtureBackend>("/nonexistent"));
  try {
    run_query(s, "q01", make_variant("VOILA-G"), b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConfigError);
    EXPECT_EQ(e.detail(), "captioner");
  }
}

TEST(RunQuery, DeterministicOnFixtures) {
  Session s = load_session(fixtures_dir() / "home-01");
  auto b = fixture_backends();
  for (const auto& name : variant_names()) {
    auto r1 = run_query(s, "q03", make_variant(name), b);
    auto r2 = run_query(s, "q03", make_variant(name), b);
    EXPECT_EQ(result_to_json(r1).dump(), result_to_json(r2).dump()) << name;
    EXPECT_FALSE(r1.response.answer.empty());
    EXPECT_EQ(r1.trace.variant, name);
    EXPECT_LE(r1.trace.localization.frames.size(), 3u);
  }
}

TEST(RunQuery, GazeDrivenFramesComeFromFixations) {
  Session s = load_session(fixtures_dir() / "home-01");
  auto r = run_query(s, "q04", make_variant("VOILA-G"), fixture_backends());
  ASSERT_FALSE(r.trace.localization.frames.empty());
  for (const auto& f : r.trace.localization.frames) {
    EXPECT_TRUE(f.source_fixation.has_value());
    EXPECT_TRUE(f.gaze_point.has_value());
  }
  auto rv = run_query(s, "q04", make_variant("VOILA"), fixture_backends());
  for (const auto& f : rv.trace.localization.frames) EXPECT_FALSE(f.gaze_point.has_value());
}

TEST(RunQuery, AudioOnlyQueryIsTranscribed) {
  Session s = load_session(fixtures_dir() / "home-01");
  ASSERT_TRUE(s.query("q12").words.empty());
  auto r = run_query(s, "q12", make_variant("VOILA-G"), fixture_backends());
  EXPECT_FALSE(r.trace.query_text.empty());
  EXPECT_EQ(r.trace.bundle.query_text, r.trace.query_text);
}

TEST(RunQuery, TraceRebuildsThePrompt) {
  Session s = load_session(fixtures_dir() / "home-01");
  auto r = run_query(s, "q01", make_variant("VOILA-G"), fixture_backends());
  json trace = to_json(r.trace);
  EXPECT_EQ(content_hash(prompt_from_trace(trace)), r.trace.prompt_hash);
  EXPECT_EQ(trace.at("bundle"), to_json(r.trace.bundle));
  EXPECT_FALSE(trace.contains("latencies_ms"));
  EXPECT_TRUE(to_json(r.trace, true).contains("latencies_ms"));
  EXPECT_EQ(trace.at("backends").at("responder").at("presence_penalty"), 0.6);
}

TEST(Degradation, OcrUnavailableBecomesANote) {
  Session s = load_session(fixtures_dir() / "home-01");
  auto r = run_query(s, "q01", make_variant("VOILA-G"), with_failure(Role::Ocr, ErrorKind::BackendUnavailable, true));
  EXPECT_EQ(r.trace.bundle.ocr_text, std::optional<std::string>("unavailable"));
  EXPECT_TRUE(has_note(r.trace, "OCR unavailable"));
  EXPECT_EQ(r.response.answer, "a");
}

TEST(Degradation, OcrBackendAbsentDropsTheSection) {
  Session s = load_session(fixtures_dir() / "home-01");
  Backends b;
  for (Role r : kAllRoles) {
    if (r == Role::Ocr) continue;
    BackendDescriptor d;
    d.role = r;
    d.fixture_dir = fixtures_dir() / "backends";
    b.set(d, std::make_shared<FixtureBackend>(d.fixture_dir));
  }
  // Without OCR the prompt differs, so the responder fixture is absent.
  try {
    run_query(s, "q01", make_variant("VOILA-G"), b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FixtureMiss);
    EXPECT_EQ(e.stage(), "responder");
  }
}

TEST(Degradation, DetectorUnavailableStillAnswersFromCaptions) {
  Session s = load_session(fixtures_dir() / "home-01");
  auto r = run_query(s, "q01", make_variant("VOILA-G"), with_failure(Role::Detector, ErrorKind::BackendUnavailable, true));
  EXPECT_TRUE(has_note(r.trace, "detector unavailable"));
  EXPECT_TRUE(r.trace.bundle.interest_captions.empty());
  EXPECT_FALSE(r.trace.bundle.context_captions.empty());
  auto g = run_query(s, "q01", make_variant("VOILA"), with_failure(Role::Detector, ErrorKind::BackendUnavailable, true));
  EXPECT_TRUE(has_note(g.trace, "detector unavailable"));
}

TEST(Degradation, CaptionerAndSegmenterOutagesAreNoted) {
  Session s = load_session(fixtures_dir() / "home-01");
  auto c = run_query(s, "q05", make_variant("VOILA-G"), with_failure(Role::Captioner, ErrorKind::BackendUnavailable, true));
  EXPECT_TRUE(has_note(c.trace, "captioner unavailable"));
  EXPECT_TRUE(c.trace.bundle.context_captions.empty());
  auto g = run_query(s, "q05", make_variant("VOILA-G"), with_failure(Role::Segmenter, ErrorKind::BackendUnavailable, true));
  EXPECT_TRUE(has_note(g.trace, "segmenter unavailable"));
}

TEST(Degradation, NonTransientErrorsPropagateWithStage) {
  Session s = load_session(fixtures_dir() / "home-01");
  try {
    run_query(s, "q01", make_variant("VOILA-G"), with_failure(Role::Segmenter, ErrorKind::MalformedResponse));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MalformedResponse);
    EXPECT_EQ(e.stage(), "spatial");
  }
  try {
    run_query(s, "q01", make_variant("VOILA-G"), Backends::all_fixture(TempDir().path()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FixtureMiss);
  }
}

TEST(Degradation, SessionWithoutFixationsRejectsGazeVariants) {
  Session s = load_session(fixtures_dir() / "home-01");
  s.fixations.clear();
  s.labels.reset();
  try {
    run_query(s, "q01", make_variant("VOILA-G"), fixture_backends());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PreconditionFailed);
    EXPECT_EQ(e.stage(), "temporal");
  }
}

TEST(Fixtures, RegeneratedByteForByte) {
  TempDir out;
  auto n = authoring::record_fixtures(fixtures_dir(), out.path());
  std::size_t shipped = 0;
  for (const auto& e : fs::recursive_directory_iterator(fixtures_dir() / "backends")) {
    if (!e.is_regular_file()) continue;
    ++shipped;
    auto rel = fs::relative(e.path(), fixtures_dir() / "backends");
    ASSERT_TRUE(fs::exists(out / rel)) << rel;
    EXPECT_EQ(read_file(e.path()), read_file(out / rel)) << rel;
  }
  EXPECT_EQ(n, shipped);
}

}  // namespace
}  // namespace gazeq

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

// One query end to end: temporal localization, spatial localization, caption
// and OCR calls, prompt assembly, generation and response parsing. Variants
// swap the gaze-driven stages for their gaze-free substitutes.

#pragma once

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "gazeq/analytics.hpp"
#include "gazeq/backends.hpp"
#include "gazeq/error.hpp"
#include "gazeq/localization.hpp"
#include "gazeq/prompt.hpp"
#include "gazeq/random.hpp"
#include "gazeq/session.hpp"

namespace gazeq {

enum class TemporalMode { GazeDriven, RandomSharp };
enum class SpatialMode { GazeRegion, GlobalDetection, CenterPoint, ExternalPoint };

struct VariantConfig {
  std::string name;
  TemporalMode temporal = TemporalMode::GazeDriven;
  SpatialMode spatial = SpatialMode::GazeRegion;
  std::uint64_t seed = 0;
};

inline const std::vector<std::string>& variant_names() {
  static const std::vector<std::string> names = {"VOILA-G", "VOILA-S", "VOILA-T", "VOILA", "VOILA-center", "VOILA-ext"};
  return names;
}

inline VariantConfig make_variant(const std::string& name, std::uint64_t seed = 0) {
  VariantConfig v{name, TemporalMode::GazeDriven, SpatialMode::GazeRegion, seed};
  if (name == "VOILA-G") return v;
  if (name == "VOILA-T") {
    v.spatial = SpatialMode::GlobalDetection;
  } else if (name == "VOILA-S") {
    v.temporal = TemporalMode::RandomSharp;
  } else if (name == "VOILA") {
    v.temporal = TemporalMode::RandomSharp;
    v.spatial = SpatialMode::GlobalDetection;
  } else if (name == "VOILA-center") {
    v.temporal = TemporalMode::RandomSharp;
    v.spatial = SpatialMode::CenterPoint;
  } else if (name == "VOILA-ext") {
    v.temporal = TemporalMode::RandomSharp;
    v.spatial = SpatialMode::ExternalPoint;
  } else {
    fail(ErrorKind::UsageError, "unknown variant '" + name + "'", name);
  }
  return v;
}

struct PipelineOptions {
  KeyFrameOptions key_frames;
  double score_threshold = kDefaultScoreThreshold;
  std::size_t global_top_n = 3;
  PromptTemplate prompt_template;
  std::string prompt_examples;
};

// ---------------------------------------------------------------------------
// Localization

struct FrameLocalization {
  FrameRef frame;
  std::optional<std::string> source_fixation;
  double score = 0;
  std::optional<Point> gaze_point;
  std::vector<RegionCandidate> regions;
  std::vector<InterestCandidate> interests;
};

struct Localization {
  std::vector<FrameLocalization> frames;
  std::vector<std::string> notes;  // degraded inputs, in stage order
};

namespace detail {

// The fixation to take a gaze point from for a frame chosen without one:
// the fixation containing the frame time, else the nearest in time.
inline const Fixation* fixation_near(std::span<const Fixation> fixations, double t) {
  const Fixation* best = nullptr;
  double best_d = 0;
  for (const auto& f : fixations) {
    double d = t < f.t_start ? f.t_start - t : (t > f.t_end ? t - f.t_end : 0.0);
    if (!best || d < best_d) {
      best = &f;
      best_d = d;
    }
  }
  return best;
}

inline bool is_transient(const Error& e) { return e.kind() == ErrorKind::BackendUnavailable; }

template <typename F>
auto staged(const char* stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (Error& e) {
    e.with_stage(stage);
    throw;
  }
}

}  // namespace detail

inline std::vector<Role> required_roles(const VariantConfig& v, const QuerySpan& q) {
  std::vector<Role> roles = {Role::Captioner, Role::Detector, Role::Responder};
  if (v.spatial != SpatialMode::GlobalDetection) roles.push_back(Role::Segmenter);
  if (v.spatial == SpatialMode::ExternalPoint) roles.push_back(Role::GazeProvider);
  if (q.words.empty()) roles.push_back(Role::Transcriber);
  return roles;
}

inline void check_roles(const Backends& b, const VariantConfig& v, const QuerySpan& q) {
  for (Role r : required_roles(v, q))
    if (!b.has(r))
      fail(ErrorKind::ConfigError, "variant " + v.name + " requires a " + std::string(to_string(r)) + " backend",
           std::string(to_string(r)));
}

/// The query with words from the transcriber when the session has none.
inline QuerySpan with_transcript(const Session& session, const QuerySpan& query, const Backends& backends) {
  if (!query.words.empty()) return query;
  QuerySpan q = query;
  auto tr = detail::staged("transcribe", [&] {
    return transcribe(backends, session.resolve(q.audio_ref.value_or("")), q.audio_ref.value_or(""));
  });
  q.words = tr.words;
  if (q.words.empty()) throw Error(ErrorKind::MalformedResponse, "transcript is empty", "transcriber").with_stage("transcribe");
  return q;
}

inline Localization localize_query(const Session& session, const QuerySpan& query, const VariantConfig& variant,
                                   const Backends& backends, const SharpnessFn& sharpness,
                                   const PipelineOptions& options = {}) {
  const bool needs_gaze = variant.temporal == TemporalMode::GazeDriven || variant.spatial == SpatialMode::GazeRegion;
  if (needs_gaze && session.fixations.empty())
    throw Error(ErrorKind::PreconditionFailed, variant.name + " requires gaze fixations but the session has none", query.id)
        .with_stage("temporal");

  Localization out;
  KeyFrameSelection sel = detail::staged("temporal", [&] {
    if (variant.temporal == TemporalMode::GazeDriven) {
      auto s = select_key_frames(query, session.fixations, session.frames, sharpness, options.key_frames);
      if (s.size() == 0)
        fail(ErrorKind::PreconditionFailed, "no fixations in the query window", query.id);
      return s;
    }
    return select_random_sharp_frames(query, session.frames, options.key_frames.k,
                                      derive_seed(session.id, query.id, variant.seed), sharpness,
                                      options.key_frames.pre_seconds);
  });

  const auto window = window_fixations(session.fixations, query, options.key_frames.pre_seconds);
  for (std::size_t i = 0; i < sel.size(); ++i) {
    FrameLocalization fl;
    fl.frame = sel.frames[i];
    fl.source_fixation = sel.source_fixations[i];
    fl.score = sel.scores[i];

    if (variant.spatial == SpatialMode::GlobalDetection) {
      detail::staged("spatial", [&] {
        try {
          fl.interests = global_confident_detection(detect(backends, session, fl.frame), options.global_top_n);
        } catch (const Error& e) {
          if (!detail::is_transient(e)) throw;
          out.notes.push_back("detector unavailable for frame " + fl.frame.uri);
        }
      });
      out.frames.push_back(std::move(fl));
      continue;
    }

    detail::staged("spatial", [&] {
      Point p;
      if (variant.spatial == SpatialMode::GazeRegion) {
        const Fixation* fix = nullptr;
        if (fl.source_fixation) {
          for (const auto& f : window)
            if (f.id == *fl.source_fixation) fix = &f;
        } else {
          fix = detail::fixation_near(window.empty() ? std::span<const Fixation>(session.fixations) : std::span<const Fixation>(window), fl.frame.t);
        }
        if (!fix) fail(ErrorKind::PreconditionFailed, "no fixation available for frame " + fl.frame.uri, query.id);
        p = resolve_gaze_point({GazePointSource::Kind::Sensor, std::nullopt}, fix, fl.frame);
      } else if (variant.spatial == SpatialMode::CenterPoint) {
        p = resolve_gaze_point({GazePointSource::Kind::FrameCenter, std::nullopt}, nullptr, fl.frame);
      } else {
        const auto* d = backends.descriptor(Role::GazeProvider);
        std::string uri = d ? (d->kind == BackendKind::Remote ? d->endpoint : d->fixture_dir.string()) : std::string();
        p = resolve_gaze_point({GazePointSource::Kind::External, uri}, nullptr, fl.frame, &backends, &session);
      }
      fl.gaze_point = p;
      try {
        fl.regions = gaze_region_candidates(session, fl.frame, p, backends);
      } catch (const Error& e) {
        if (!detail::is_transient(e)) throw;
        out.notes.push_back("segmenter unavailable for frame " + fl.frame.uri);
        return;
      }
      if (fl.regions.empty()) {
        out.notes.push_back("no region contains the gaze point in frame " + fl.frame.uri);
        return;
      }
      try {
        fl.interests = detect_interest_objects(fl.regions, detect(backends, session, fl.frame), options.score_threshold);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::EmptyDetection) {
          out.notes.push_back("no confident detection at the gaze point in frame " + fl.frame.uri);
        } else if (detail::is_transient(e)) {
          out.notes.push_back("detector unavailable for frame " + fl.frame.uri);
        } else {
          throw;
        }
      }
    });
    out.frames.push_back(std::move(fl));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Trace

struct RunTrace {
  std::string session_id;
  std::string session_ref;  // manifest path as given, for replay
  std::string query_id;
  std::string variant;
  std::uint64_t seed = 0;
  std::string query_text;
  json backends = json::object();  // role -> model parameters of every configured role
  Localization localization;
  PromptBundle bundle;
  std::string prompt_hash;
  std::map<std::string, double> latencies_ms;  // wall-clock; excluded from hashes and result files
};

inline json to_json(const BBox& b) { return json::array({b.x_min, b.y_min, b.x_max, b.y_max}); }

inline json to_json(const FrameLocalization& fl) {
  json regions = json::array();
  for (const auto& r : fl.regions) {
    json jr = {{"bbox", to_json(r.bbox)}, {"tier", std::string(to_string(r.tier))}};
    if (r.mask_ref) jr["mask"] = *r.mask_ref;
    regions.push_back(jr);
  }
  json interests = json::array();
  for (const auto& c : fl.interests) {
    json labels = json::array();
    for (const auto& l : c.labels) labels.push_back({l.label, l.confidence});
    interests.push_back({{"labels", labels}, {"bbox", to_json(c.bbox)}});
  }
  json j = {{"t", fl.frame.t},
            {"uri", fl.frame.uri},
            {"score", fl.score},
            {"source_fixation", fl.source_fixation ? json(*fl.source_fixation) : json(nullptr)},
            {"gaze_point", fl.gaze_point ? json::array({fl.gaze_point->x, fl.gaze_point->y}) : json(nullptr)},
            {"regions", regions},
            {"interests", interests}};
  return j;
}

/// The `localize` record: parallel arrays over the chosen frames.
inline json localization_record(const Localization& loc) {
  json frames = json::array(), points = json::array(), regions = json::array(), interests = json::array();
  for (const auto& fl : loc.frames) {
    json f = to_json(fl);
    frames.push_back({{"t", f["t"]}, {"uri", f["uri"]}, {"score", f["score"]}, {"source_fixation", f["source_fixation"]}});
    points.push_back(f["gaze_point"]);
    regions.push_back(f["regions"]);
    interests.push_back(f["interests"]);
  }
  return {{"frames", frames}, {"gaze_points", points}, {"regions", regions}, {"interests", interests}, {"notes", loc.notes}};
}

inline json to_json(const RunTrace& t, bool include_latencies = false) {
  json frames = json::array();
  for (const auto& fl : t.localization.frames) frames.push_back(to_json(fl));
  json j = {{"session_id", t.session_id},
            {"session", t.session_ref},
            {"query_id", t.query_id},
            {"variant", t.variant},
            {"seed", t.seed},
            {"query_text", t.query_text},
            {"backends", t.backends},
            {"frames", frames},
            {"degraded", t.localization.notes},
            {"bundle", to_json(t.bundle)},
            {"prompt_hash", t.prompt_hash}};
  if (include_latencies) j["latencies_ms"] = t.latencies_ms;
  return j;
}

inline std::string trace_hash(const RunTrace& t) { return content_hash(to_json(t).dump()); }

/// Rebuilds the prompt from a serialized trace.
inline std::string prompt_from_trace(const json& trace, const PromptTemplate& tpl = PromptTemplate(),
                                     std::string_view examples = {}) {
  return tpl.render(bundle_from_json(trace.at("bundle")), examples);
}

struct QueryResult {
  AssistantResponse response;
  RunTrace trace;
};

inline json result_to_json(const QueryResult& r) {
  return {{"variant", r.trace.variant}, {"query_id", r.trace.query_id}, {"response", to_json(r.response)}, {"trace", to_json(r.trace)}};
}

// ---------------------------------------------------------------------------
// Run

inline QueryResult run_query(const Session& session, const std::string& query_id, const VariantConfig& variant,
                             const Backends& backends, const PipelineOptions& options = {},
                             std::string session_ref = {}) {
  const QuerySpan& base_query = session.query(query_id);
  check_roles(backends, variant, base_query);

  using clock = std::chrono::steady_clock;
  RunTrace trace;
  trace.session_id = session.id;
  trace.session_ref = std::move(session_ref);
  trace.query_id = query_id;
  trace.variant = variant.name;
  trace.seed = variant.seed;
  for (Role r : kAllRoles)
    if (backends.has(r)) trace.backends[std::string(to_string(r))] = backends.model_parameters(r);
  auto lap = [&, t0 = clock::now()](const char* stage) mutable {
    auto now = clock::now();
    trace.latencies_ms[stage] += std::chrono::duration<double, std::milli>(now - t0).count();
    t0 = now;
  };

  QuerySpan query = with_transcript(session, base_query, backends);
  if (base_query.words.empty()) lap("transcribe");
  trace.query_text = query.text();

  SharpnessCache sharp(session);
  trace.localization = localize_query(session, query, variant, backends, sharp.fn(), options);
  lap("localize");

  PromptBundle& bundle = trace.bundle;
  std::vector<std::string> ocr_texts;
  bool ocr_failed = false;
  for (const auto& fl : trace.localization.frames) {
    detail::staged("caption", [&] {
      try {
        auto c = caption(backends, session, fl.frame);
        if (std::find(bundle.context_captions.begin(), bundle.context_captions.end(), c.text) == bundle.context_captions.end())
          bundle.context_captions.push_back(c.text);
      } catch (const Error& e) {
        if (!detail::is_transient(e)) throw;
        trace.localization.notes.push_back("captioner unavailable for frame " + fl.frame.uri);
      }
    });
    if (backends.has(Role::Ocr)) {
      detail::staged("ocr", [&] {
        try {
          auto text = trim(ocr(backends, session, fl.frame));
          if (!text.empty() && std::find(ocr_texts.begin(), ocr_texts.end(), text) == ocr_texts.end()) ocr_texts.push_back(text);
        } catch (const Error& e) {
          if (!detail::is_transient(e)) throw;
          ocr_failed = true;
        }
      });
    }
    for (const auto& c : fl.interests) {
      std::vector<std::string> labels;
      for (const auto& l : c.labels) labels.push_back(l.label);
      if (std::find(bundle.interest_captions.begin(), bundle.interest_captions.end(), labels) == bundle.interest_captions.end())
        bundle.interest_captions.push_back(std::move(labels));
    }
  }
  lap("describe");
  if (!ocr_texts.empty()) {
    std::string joined;
    for (const auto& t : ocr_texts) joined += (joined.empty() ? "" : " | ") + t;
    bundle.ocr_text = joined;
  } else if (ocr_failed) {
    bundle.ocr_text = "unavailable";
    trace.localization.notes.push_back("OCR unavailable");
  }
  bundle.query_text = trace.query_text;
  bundle.finalize();

  std::string prompt = detail::staged("prompt", [&] { return options.prompt_template.render(bundle, options.prompt_examples); });
  trace.prompt_hash = content_hash(prompt);
  std::string raw = detail::staged("responder", [&] { return generate(backends, prompt); });
  lap("respond");
  AssistantResponse response = detail::staged("parse", [&] { return parse_response(raw); });
  return {std::move(response), std::move(trace)};
}

}  // namespace gazeq

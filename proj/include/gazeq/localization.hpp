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

// Temporal localization (which frames to look at) and spatial localization
// (which object in a frame), with the gaze-free substitutes used by the
// ablation variants.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gazeq/analytics.hpp"
#include "gazeq/backends.hpp"
#include "gazeq/error.hpp"
#include "gazeq/geometry.hpp"
#include "gazeq/image.hpp"
#include "gazeq/random.hpp"
#include "gazeq/session.hpp"

namespace gazeq {

struct KeyFrameSelection {
  std::vector<FrameRef> frames;
  std::vector<std::optional<std::string>> source_fixations;  // none for baseline selections
  std::vector<double> scores;

  std::size_t size() const { return frames.size(); }
};

using SharpnessFn = std::function<double(const FrameRef&)>;

/// Sharpness from the frame index when present, otherwise computed from the
/// image file and memoized. Safe to call concurrently.
class SharpnessCache {
 public:
  explicit SharpnessCache(const Session& session) : session_(&session) {}

  double operator()(const FrameRef& frame) {
    if (frame.sharpness) return *frame.sharpness;
    std::lock_guard lock(mu_);
    auto it = cache_.find(frame.uri);
    if (it != cache_.end()) return it->second;
    double v = frame_sharpness(session_->resolve(frame.uri));
    cache_.emplace(frame.uri, v);
    return v;
  }

  SharpnessFn fn() {
    return [this](const FrameRef& f) { return (*this)(f); };
  }

 private:
  const Session* session_;
  std::mutex mu_;
  std::map<std::string, double> cache_;
};

// ---------------------------------------------------------------------------
// Temporal localization

struct KeyFrameOptions {
  std::size_t k = 3;
  double tau = 5.0;  // seconds; distance from onset at which a fixation's weight halves
  double pre_seconds = kPreQuerySeconds;
};

/// Long fixations near the query onset score highest.
inline double key_frame_score(const Fixation& f, double query_start, double tau) {
  return f.duration() / (1.0 + std::abs(f.t_start - query_start) / tau);
}

namespace detail {

inline const FrameRef* frame_for_fixation(const Fixation& f, std::span<const FrameRef> frames, const SharpnessFn& sharpness) {
  const FrameRef* best = nullptr;
  double best_sharp = 0;
  auto lo = std::lower_bound(frames.begin(), frames.end(), f.t_start,
                             [](const FrameRef& fr, double t) { return fr.t < t; });
  for (auto it = lo; it != frames.end() && it->t <= f.t_end; ++it) {
    double s = sharpness(*it);
    if (!best || s > best_sharp) {
      best = &*it;
      best_sharp = s;
    }
  }
  if (best) return best;
  // No frame inside the span: nearest frame to the span, earlier wins ties.
  double best_dist = 0;
  for (const auto* cand : {lo == frames.begin() ? nullptr : &*(lo - 1), lo == frames.end() ? nullptr : &*lo}) {
    if (!cand) continue;
    double d = cand->t < f.t_start ? f.t_start - cand->t : cand->t - f.t_end;
    if (!best || d < best_dist) {
      best = cand;
      best_dist = d;
    }
  }
  return best;
}

}  // namespace detail

/// Ranks window fixations by key_frame_score and takes, for each in rank
/// order, the sharpest frame inside its span (nearest frame otherwise) until
/// k distinct frames are chosen. Returns fewer when evidence is sparse.
inline KeyFrameSelection select_key_frames(const QuerySpan& query, std::span<const Fixation> fixations,
                                           std::span<const FrameRef> frames, const SharpnessFn& sharpness,
                                           const KeyFrameOptions& options = {}) {
  if (frames.empty()) fail(ErrorKind::NoFrames, "frame index is empty", query.id);
  auto candidates = window_fixations(fixations, query, options.pre_seconds);
  struct Ranked {
    const Fixation* fixation;
    double score;
  };
  std::vector<Ranked> ranked;
  ranked.reserve(candidates.size());
  for (const auto& f : candidates) ranked.push_back({&f, key_frame_score(f, query.t_start, options.tau)});
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.fixation->t_start != b.fixation->t_start) return a.fixation->t_start < b.fixation->t_start;
    return a.fixation->id < b.fixation->id;
  });

  KeyFrameSelection out;
  for (const auto& r : ranked) {
    if (out.size() >= options.k) break;
    const FrameRef* fr = detail::frame_for_fixation(*r.fixation, frames, sharpness);
    if (!fr) continue;
    bool dup = std::any_of(out.frames.begin(), out.frames.end(), [&](const FrameRef& x) { return x.uri == fr->uri && x.t == fr->t; });
    if (dup) continue;
    out.frames.push_back(*fr);
    out.source_fixations.emplace_back(r.fixation->id);
    out.scores.push_back(r.score);
  }
  return out;
}

/// Baseline temporal localization: k frames drawn uniformly (PCG32, `seed`)
/// from the window's frames whose sharpness is at least the window median.
/// Returned in descending sharpness order.
inline KeyFrameSelection select_random_sharp_frames(const QuerySpan& query, std::span<const FrameRef> frames,
                                                    std::size_t k, std::uint64_t seed, const SharpnessFn& sharpness,
                                                    double pre_seconds = kPreQuerySeconds) {
  auto w = query_window(query, pre_seconds);
  std::vector<const FrameRef*> window;
  for (const auto& fr : frames)
    if (fr.t >= w.lo && fr.t <= w.hi) window.push_back(&fr);
  if (window.empty()) fail(ErrorKind::NoFrames, "no frames in the query window", query.id);

  std::vector<double> sharp(window.size());
  for (std::size_t i = 0; i < window.size(); ++i) sharp[i] = sharpness(*window[i]);
  std::vector<double> sorted = sharp;
  std::sort(sorted.begin(), sorted.end());
  std::size_t n = sorted.size();
  double median = (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < window.size(); ++i)
    if (sharp[i] >= median) pool.push_back(i);

  Pcg32 rng(seed);
  std::size_t take = std::min(k, pool.size());
  for (std::size_t i = 0; i < take; ++i) {
    std::size_t j = i + rng.below(static_cast<std::uint32_t>(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(take);
  std::sort(pool.begin(), pool.end(), [&](std::size_t a, std::size_t b) {
    if (sharp[a] != sharp[b]) return sharp[a] > sharp[b];
    return window[a]->t < window[b]->t;
  });

  KeyFrameSelection out;
  for (std::size_t i : pool) {
    out.frames.push_back(*window[i]);
    out.source_fixations.emplace_back(std::nullopt);
    out.scores.push_back(sharp[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spatial localization

struct GazePointSource {
  enum class Kind { Sensor, FrameCenter, External };
  Kind kind = Kind::Sensor;
  std::optional<std::string> external_uri;

  void validate() const {
    if (kind == Kind::External && (!external_uri || external_uri->empty()))
      fail(ErrorKind::ConfigError, "external gaze-point source requires a provider uri", "gaze_provider");
  }
};

/// Sensor: the fixation's point clamped to the frame. FrameCenter: (0.5, 0.5).
/// External: whatever the gaze-point provider returns for the frame.
inline Point resolve_gaze_point(const GazePointSource& source, const Fixation* fixation, const FrameRef& frame,
                                const Backends* backends = nullptr, const Session* session = nullptr) {
  source.validate();
  switch (source.kind) {
    case GazePointSource::Kind::Sensor:
      if (!fixation) fail(ErrorKind::PreconditionFailed, "sensor gaze point requires a fixation", frame.uri);
      return clamp_unit({fixation->x, fixation->y});
    case GazePointSource::Kind::FrameCenter:
      return {0.5, 0.5};
    case GazePointSource::Kind::External: {
      if (!backends || !session) fail(ErrorKind::ProviderError, "no gaze-point provider available", frame.uri);
      Point p;
      try {
        p = gaze_point(*backends, *session, frame);
      } catch (const Error& e) {
        fail(ErrorKind::ProviderError, "gaze-point provider failed: " + e.message(), frame.uri);
      }
      if (!std::isfinite(p.x) || !std::isfinite(p.y) || p.x < 0 || p.x > 1 || p.y < 0 || p.y > 1)
        fail(ErrorKind::ProviderError, "gaze-point provider returned a point outside the frame", frame.uri);
      return p;
    }
  }
  return {0.5, 0.5};
}

enum class ScaleTier { Fine, Mid, Coarse };

constexpr std::string_view to_string(ScaleTier t) {
  switch (t) {
    case ScaleTier::Fine: return "fine";
    case ScaleTier::Mid: return "mid";
    case ScaleTier::Coarse: return "coarse";
  }
  return "fine";
}

struct RegionCandidate {
  BBox bbox;
  ScaleTier tier = ScaleTier::Fine;
  std::optional<std::string> mask_ref;
};

inline constexpr double kRegionDuplicateIou = 0.9;

/// Keeps masks containing the point, smallest first, drops any mask with
/// IoU > 0.9 against an already kept one, and labels up to three tiers.
inline std::vector<RegionCandidate> tier_regions(std::vector<SegmentMask> masks, Point point) {
  std::erase_if(masks, [&](const SegmentMask& m) { return !m.bbox.contains(point); });
  std::stable_sort(masks.begin(), masks.end(),
                   [](const SegmentMask& a, const SegmentMask& b) { return a.bbox.area() < b.bbox.area(); });
  std::vector<RegionCandidate> out;
  for (const auto& m : masks) {
    if (out.size() == 3) break;
    bool dup = std::any_of(out.begin(), out.end(), [&](const RegionCandidate& r) { return iou(r.bbox, m.bbox) > kRegionDuplicateIou; });
    if (dup) continue;
    out.push_back({m.bbox, static_cast<ScaleTier>(out.size()), m.mask_ref});
  }
  return out;
}

inline std::vector<RegionCandidate> gaze_region_candidates(const Session& session, const FrameRef& frame, Point point,
                                                           const Backends& backends) {
  if (!(point.x >= 0 && point.x <= 1 && point.y >= 0 && point.y <= 1))
    fail(ErrorKind::PreconditionFailed, "gaze point outside the unit square", frame.uri);
  return tier_regions(segment(backends, session, frame, point), point);
}

struct ScoredLabel {
  std::string label;
  double confidence = 0;

  bool operator==(const ScoredLabel&) const = default;
};

struct InterestCandidate {
  std::vector<ScoredLabel> labels;  // up to 3, descending confidence, distinct
  BBox bbox;
};

/// A detector box with every label the detector assigned to it. Detections
/// sharing an identical bbox belong to the same box.
struct DetectedBox {
  BBox bbox;
  std::vector<ScoredLabel> labels;  // descending confidence
  double score() const { return labels.empty() ? 0.0 : labels.front().confidence; }
};

inline std::vector<DetectedBox> group_detections(const DetectionResult& result) {
  std::vector<DetectedBox> boxes;
  for (const auto& d : result.detections) {
    auto it = std::find_if(boxes.begin(), boxes.end(), [&](const DetectedBox& b) { return b.bbox == d.bbox; });
    if (it == boxes.end()) {
      boxes.push_back({d.bbox, {}});
      it = boxes.end() - 1;
    }
    auto dup = std::find_if(it->labels.begin(), it->labels.end(), [&](const ScoredLabel& l) { return l.label == d.label; });
    if (dup == it->labels.end()) it->labels.push_back({d.label, d.score});
    else dup->confidence = std::max(dup->confidence, d.score);
  }
  for (auto& b : boxes)
    std::stable_sort(b.labels.begin(), b.labels.end(), [](const ScoredLabel& x, const ScoredLabel& y) {
      if (x.confidence != y.confidence) return x.confidence > y.confidence;
      return x.label < y.label;
    });
  return boxes;
}

namespace detail {

inline void append_distinct_labels(std::vector<ScoredLabel>& out, const std::vector<ScoredLabel>& from, std::size_t limit) {
  for (const auto& l : from) {
    if (out.size() >= limit) return;
    if (std::none_of(out.begin(), out.end(), [&](const ScoredLabel& x) { return x.label == l.label; })) out.push_back(l);
  }
}

inline void sort_labels(std::vector<ScoredLabel>& labels) {
  std::stable_sort(labels.begin(), labels.end(),
                   [](const ScoredLabel& a, const ScoredLabel& b) { return a.confidence > b.confidence; });
}

}  // namespace detail

inline constexpr double kDefaultScoreThreshold = 0.3;

/// For each region: detector boxes whose best score passes the threshold,
/// ordered by IoU with the region; the best-overlapping box's top three
/// labels, padded from the next boxes. Regions no box overlaps are skipped.
/// Throws EmptyDetection when nothing survives.
inline std::vector<InterestCandidate> detect_interest_objects(std::span<const RegionCandidate> regions,
                                                              const DetectionResult& detections,
                                                              double score_threshold = kDefaultScoreThreshold) {
  if (regions.empty()) fail(ErrorKind::PreconditionFailed, "no regions to match detections against");
  auto boxes = group_detections(detections);
  std::erase_if(boxes, [&](const DetectedBox& b) { return b.score() < score_threshold; });
  if (boxes.empty()) fail(ErrorKind::EmptyDetection, "no detection passed the confidence threshold");

  std::vector<InterestCandidate> out;
  for (const auto& region : regions) {
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      double v = iou(region.bbox, boxes[i].bbox);
      if (v > 0) order.emplace_back(v, i);
    }
    if (order.empty()) continue;
    std::stable_sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return boxes[a.second].score() > boxes[b.second].score();
    });
    InterestCandidate cand;
    cand.bbox = boxes[order.front().second].bbox;
    for (const auto& [v, i] : order) {
      detail::append_distinct_labels(cand.labels, boxes[i].labels, 3);
      if (cand.labels.size() == 3) break;
    }
    detail::sort_labels(cand.labels);
    out.push_back(std::move(cand));
  }
  if (out.empty()) fail(ErrorKind::EmptyDetection, "no detection overlaps the gaze regions");
  return out;
}

/// Baseline spatial localization: the top_n most confident whole-frame boxes.
inline std::vector<InterestCandidate> global_confident_detection(const DetectionResult& detections, std::size_t top_n = 3) {
  auto boxes = group_detections(detections);
  std::stable_sort(boxes.begin(), boxes.end(), [](const DetectedBox& a, const DetectedBox& b) { return a.score() > b.score(); });
  if (boxes.size() > top_n) boxes.resize(top_n);
  std::vector<InterestCandidate> out;
  for (const auto& b : boxes) {
    InterestCandidate c;
    c.bbox = b.bbox;
    detail::append_distinct_labels(c.labels, b.labels, 3);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace gazeq

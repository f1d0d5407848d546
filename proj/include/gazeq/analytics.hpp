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

// Gaze/voice coordination analytics over labeled sessions: word-fixation
// alignment, longest relevant/irrelevant fixations and their neighborhoods,
// fixation density around pronouns, relevancy scatter data and startup time.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gazeq/error.hpp"
#include "gazeq/session.hpp"

namespace gazeq {

/// Seconds of pre-query gaze considered part of a query, and the startup cap.
inline constexpr double kPreQuerySeconds = 20.0;

/// Analysis window of a query: [t_start - pre, t_end].
struct TimeWindow {
  double lo = 0;
  double hi = 0;
};

inline TimeWindow query_window(const QuerySpan& q, double pre_seconds = kPreQuerySeconds) {
  return {q.t_start - pre_seconds, q.t_end};
}

inline std::vector<Fixation> window_fixations(std::span<const Fixation> fixations, const QuerySpan& q,
                                              double pre_seconds = kPreQuerySeconds) {
  auto w = query_window(q, pre_seconds);
  return fixations_in_window(fixations, w.lo, w.hi);
}

// ---------------------------------------------------------------------------
// Alignment

struct AlignmentMap {
  std::string query_id;
  // words[j] lists the ids of fixations concurrent with word j, by t_start.
  std::vector<std::vector<std::string>> words;

  bool operator==(const AlignmentMap&) const = default;
};

inline AlignmentMap align(const QuerySpan& query, std::span<const Fixation> fixations) {
  AlignmentMap out;
  out.query_id = query.id;
  out.words.reserve(query.words.size());
  for (const auto& w : query.words) {
    std::vector<std::string> ids;
    for (const auto& f : fixations_in_window(fixations, w.t_start, w.t_end)) ids.push_back(f.id);
    out.words.push_back(std::move(ids));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Longest fixation

namespace detail {

// Strict "a ranks before b" for argmax-by-duration with deterministic ties.
inline bool longer_than(const Fixation& a, const Fixation& b) {
  double da = a.duration(), db = b.duration();
  if (da != db) return da > db;
  if (a.t_start != b.t_start) return a.t_start < b.t_start;
  return a.id < b.id;
}

inline const RelevanceLabels& require_labels(const Session& s) {
  if (!s.labels)
    fail(ErrorKind::PreconditionFailed, "session '" + s.id + "' has no relevance labels", s.id);
  return *s.labels;
}

inline std::vector<Fixation> labeled_only(std::vector<Fixation> fixations, const QuerySpan& q,
                                          const RelevanceLabels& labels) {
  std::erase_if(fixations, [&](const Fixation& f) { return !labels.get(q.id, f.id).has_value(); });
  return fixations;
}

}  // namespace detail

/// Longest fixation among `candidates` whose label equals `want_relevant`.
/// Every candidate must be labeled for the query.
inline std::optional<std::string> longest_fixation(const QuerySpan& query, std::span<const Fixation> candidates,
                                                   const RelevanceLabels& labels, bool want_relevant) {
  const Fixation* best = nullptr;
  for (const auto& f : candidates) {
    auto label = labels.get(query.id, f.id);
    if (!label)
      fail(ErrorKind::UnlabeledFixation, "fixation '" + f.id + "' is unlabeled for query '" + query.id + "'", f.id);
    if (*label != want_relevant) continue;
    if (!best || detail::longer_than(f, *best)) best = &f;
  }
  if (!best) return std::nullopt;
  return best->id;
}

// ---------------------------------------------------------------------------
// Duration profile around the longest fixation

struct DurationBin {
  double sum = 0;
  std::size_t count = 0;
  double mean() const { return count ? sum / static_cast<double>(count) : 0.0; }
};

struct DurationProfile {
  bool relevant = true;
  int radius = 3;
  std::map<int, DurationBin> bins;  // only offsets with count >= 1
  std::size_t anchored = 0;
  std::size_t skipped = 0;
};

/// Anchors each labeled query at its longest relevant (or irrelevant)
/// fixation and averages durations of the labeled fixations at offsets
/// -radius..radius within the query's window sequence.
inline DurationProfile duration_profile(std::span<const Session> sessions, bool want_relevant, int radius = 3,
                                        double pre_seconds = kPreQuerySeconds) {
  DurationProfile out;
  out.relevant = want_relevant;
  out.radius = radius;
  for (const auto& s : sessions) {
    const auto& labels = detail::require_labels(s);
    for (const auto& q : s.queries) {
      auto seq = detail::labeled_only(window_fixations(s.fixations, q, pre_seconds), q, labels);
      auto anchor = longest_fixation(q, seq, labels, want_relevant);
      if (!anchor) {
        ++out.skipped;
        continue;
      }
      ++out.anchored;
      auto pos = static_cast<long>(std::find_if(seq.begin(), seq.end(), [&](const Fixation& f) {
                                     return f.id == *anchor;
                                   }) - seq.begin());
      for (int k = -radius; k <= radius; ++k) {
        long idx = pos + k;
        if (idx < 0 || idx >= static_cast<long>(seq.size())) continue;
        auto& bin = out.bins[k];
        bin.sum += seq[static_cast<std::size_t>(idx)].duration();
        ++bin.count;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pronoun co-occurrence

struct CooccurrenceSlot {
  int r = 0;
  std::size_t c = 0;      // relevant fixations aligned to word j_pron + r
  std::size_t c_all = 0;  // labeled fixations aligned to word j_pron + r
  std::optional<double> p() const {
    if (c_all == 0) return std::nullopt;
    return static_cast<double>(c) / static_cast<double>(c_all);
  }

  bool operator==(const CooccurrenceSlot&) const = default;
};

struct CooccurrenceProfile {
  int window = 5;
  std::vector<CooccurrenceSlot> slots;  // r = -window .. window
  std::size_t pronouns = 0;

  const CooccurrenceSlot& at(int r) const { return slots.at(static_cast<std::size_t>(r + window)); }
  bool operator==(const CooccurrenceProfile&) const = default;
};

inline CooccurrenceProfile pronoun_cooccurrence(std::span<const Session> sessions, int window = 5) {
  CooccurrenceProfile out;
  out.window = window;
  for (int r = -window; r <= window; ++r) out.slots.push_back({r, 0, 0});
  for (const auto& s : sessions) {
    const auto& labels = detail::require_labels(s);
    for (const auto& q : s.queries) {
      if (q.words.empty()) continue;
      auto alignment = align(q, s.fixations);
      const long n = static_cast<long>(q.words.size());
      for (long j = 0; j < n; ++j) {
        if (!q.words[static_cast<std::size_t>(j)].is_pronoun) continue;
        ++out.pronouns;
        for (int r = -window; r <= window; ++r) {
          long idx = j + r;
          if (idx < 0 || idx >= n) continue;
          auto& slot = out.slots[static_cast<std::size_t>(r + window)];
          for (const auto& fid : alignment.words[static_cast<std::size_t>(idx)]) {
            auto label = labels.get(q.id, fid);
            if (!label) continue;
            ++slot.c_all;
            if (*label) ++slot.c;
          }
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Relevancy distribution

struct RelevancyPoint {
  std::string session_id;
  std::string query_id;
  std::size_t index = 0;  // position in the query's window sequence
  std::string fixation_id;
  double duration = 0;
  bool relevant = false;

  bool operator==(const RelevancyPoint&) const = default;
};

inline std::vector<RelevancyPoint> relevancy_distribution(std::span<const Session> sessions,
                                                          double pre_seconds = kPreQuerySeconds) {
  std::vector<RelevancyPoint> out;
  for (const auto& s : sessions) {
    const auto& labels = detail::require_labels(s);
    for (const auto& q : s.queries) {
      auto seq = window_fixations(s.fixations, q, pre_seconds);
      for (std::size_t i = 0; i < seq.size(); ++i) {
        auto label = labels.get(q.id, seq[i].id);
        if (!label) continue;
        out.push_back({s.id, q.id, i, seq[i].id, seq[i].duration(), *label});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Startup time

struct StartupResult {
  std::string query_id;
  std::optional<double> startup;
  std::optional<std::string> source_fixation;

  bool operator==(const StartupResult&) const = default;
};

/// Earliest relevant fixation starting within [t_start^q - cap, t_start^q];
/// startup = t_start^q - its t_start.
inline StartupResult startup_time(const QuerySpan& query, std::span<const Fixation> fixations,
                                  const RelevanceLabels& labels, double cap = kPreQuerySeconds) {
  StartupResult out{query.id, std::nullopt, std::nullopt};
  // Coarse bound only; the exact test is on the difference below.
  const double coarse_lo = query.t_start - cap - 1.0;
  auto it = std::lower_bound(fixations.begin(), fixations.end(), coarse_lo,
                             [](const Fixation& f, double t) { return f.t_start < t; });
  const Fixation* best = nullptr;
  double best_diff = 0;
  for (; it != fixations.end() && it->t_start <= query.t_start + 1.0; ++it) {
    double diff = query.t_start - it->t_start;
    if (diff < 0 || diff > cap) continue;
    auto label = labels.get(query.id, it->id);
    if (!label || !*label) continue;
    if (!best || diff > best_diff || (diff == best_diff && it->id < best->id)) {
      best = &*it;
      best_diff = diff;
    }
  }
  if (best) {
    out.startup = best_diff;
    out.source_fixation = best->id;
  }
  return out;
}

inline std::vector<StartupResult> startup_times(std::span<const Session> sessions, double cap = kPreQuerySeconds) {
  std::vector<StartupResult> out;
  for (const auto& s : sessions) {
    const auto& labels = detail::require_labels(s);
    for (const auto& q : s.queries) out.push_back(startup_time(q, s.fixations, labels, cap));
  }
  return out;
}

struct StartupStats {
  double mean = 0;
  double median = 0;
  std::size_t defined = 0;
  std::size_t undefined = 0;
};

inline StartupStats startup_stats(std::span<const StartupResult> results) {
  std::vector<double> values;
  StartupStats st;
  for (const auto& r : results) {
    if (r.startup) values.push_back(*r.startup);
    else ++st.undefined;
  }
  if (values.empty()) fail(ErrorKind::EmptyInput, "no defined startup times");
  st.defined = values.size();
  double sum = 0;
  for (double v : values) sum += v;
  st.mean = sum / static_cast<double>(values.size());
  std::sort(values.begin(), values.end());
  std::size_t n = values.size();
  st.median = (n % 2 == 1) ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  return st;
}

}  // namespace gazeq

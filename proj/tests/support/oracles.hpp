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

// Brute-force reference implementations. Each one scans everything and
// shares no code with the library beyond the plain data types, so agreement
// with the library is evidence rather than tautology.

#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gazeq/session.hpp"

namespace gazeq::oracle {

inline bool overlaps(double a0, double a1, double b0, double b1) { return a0 <= b1 && b0 <= a1; }

inline std::optional<bool> label_of(const Session& s, const std::string& qid, const std::string& fid) {
  for (const auto& [key, rel] : s.labels->entries())
    if (key.first == qid && key.second == fid) return rel;
  return std::nullopt;
}

/// Every fixation overlapping [lo, hi], in session order.
inline std::vector<const Fixation*> overlapping(const Session& s, double lo, double hi) {
  std::vector<const Fixation*> out;
  for (const auto& f : s.fixations)
    if (overlaps(f.t_start, f.t_end, lo, hi)) out.push_back(&f);
  return out;
}

inline std::vector<const Fixation*> window(const Session& s, const QuerySpan& q, double pre = 20.0) {
  return overlapping(s, q.t_start - pre, q.t_end);
}

inline std::vector<std::vector<std::string>> align(const Session& s, const QuerySpan& q) {
  std::vector<std::vector<std::string>> out;
  for (const auto& w : q.words) {
    std::vector<std::string> ids;
    for (const auto* f : overlapping(s, w.t_start, w.t_end)) ids.push_back(f->id);
    out.push_back(ids);
  }
  return out;
}

/// Longest labeled fixation with the wanted label among the window fixations.
/// Ties: earlier start, then smaller id.
inline std::optional<std::string> longest(const Session& s, const QuerySpan& q, bool want, double pre = 20.0) {
  const Fixation* best = nullptr;
  for (const auto* f : window(s, q, pre)) {
    auto l = label_of(s, q.id, f->id);
    if (!l || *l != want) continue;
    if (!best) {
      best = f;
      continue;
    }
    double d = f->t_end - f->t_start, bd = best->t_end - best->t_start;
    bool better = d > bd || (d == bd && (f->t_start < best->t_start || (f->t_start == best->t_start && f->id < best->id)));
    if (better) best = f;
  }
  if (!best) return std::nullopt;
  return best->id;
}

struct Slot {
  std::size_t c = 0;
  std::size_t c_all = 0;
};

inline std::map<int, Slot> cooccurrence(const std::vector<Session>& sessions, int window_r = 5) {
  std::map<int, Slot> out;
  for (int r = -window_r; r <= window_r; ++r) out[r];
  for (const auto& s : sessions)
    for (const auto& q : s.queries)
      for (std::size_t j = 0; j < q.words.size(); ++j) {
        if (!q.words[j].is_pronoun) continue;
        for (int r = -window_r; r <= window_r; ++r) {
          long idx = static_cast<long>(j) + r;
          if (idx < 0 || idx >= static_cast<long>(q.words.size())) continue;
          const auto& w = q.words[static_cast<std::size_t>(idx)];
          for (const auto* f : overlapping(s, w.t_start, w.t_end)) {
            auto l = label_of(s, q.id, f->id);
            if (!l) continue;
            ++out[r].c_all;
            if (*l) ++out[r].c;
          }
        }
      }
  return out;
}

inline std::size_t pronoun_count(const std::vector<Session>& sessions) {
  std::size_t n = 0;
  for (const auto& s : sessions)
    for (const auto& q : s.queries)
      for (const auto& w : q.words) n += w.is_pronoun ? 1 : 0;
  return n;
}

struct RelPoint {
  std::string session_id, query_id;
  std::size_t index;
  std::string fixation_id;
  double duration;
  bool relevant;
};

inline std::vector<RelPoint> relevancy(const std::vector<Session>& sessions, double pre = 20.0) {
  std::vector<RelPoint> out;
  for (const auto& s : sessions)
    for (const auto& q : s.queries) {
      auto w = window(s, q, pre);
      for (std::size_t i = 0; i < w.size(); ++i) {
        auto l = label_of(s, q.id, w[i]->id);
        if (l) out.push_back({s.id, q.id, i, w[i]->id, w[i]->t_end - w[i]->t_start, *l});
      }
    }
  return out;
}

struct Startup {
  std::optional<double> value;
  std::optional<std::string> fixation;
};

/// Earliest relevant fixation starting in [T - cap, T]; ties by id.
inline Startup startup(const Session& s, const QuerySpan& q, double cap = 20.0) {
  Startup out;
  for (const auto& f : s.fixations) {
    double diff = q.t_start - f.t_start;
    if (diff < 0 || diff > cap) continue;
    auto l = label_of(s, q.id, f.id);
    if (!l || !*l) continue;
    if (!out.value || diff > *out.value || (diff == *out.value && f.id < *out.fixation)) {
      out.value = diff;
      out.fixation = f.id;
    }
  }
  return out;
}

/// Mean duration per offset around the anchor in the labeled window sequence.
inline std::map<int, std::pair<double, std::size_t>> duration_profile(const std::vector<Session>& sessions, bool want,
                                                                      int radius = 3, double pre = 20.0) {
  std::map<int, std::pair<double, std::size_t>> out;
  for (const auto& s : sessions)
    for (const auto& q : s.queries) {
      std::vector<const Fixation*> seq;
      for (const auto* f : window(s, q, pre))
        if (label_of(s, q.id, f->id)) seq.push_back(f);
      auto anchor = longest(s, q, want, pre);
      if (!anchor) continue;
      long pos = -1;
      for (std::size_t i = 0; i < seq.size(); ++i)
        if (seq[i]->id == *anchor) pos = static_cast<long>(i);
      for (int k = -radius; k <= radius; ++k) {
        long i = pos + k;
        if (i < 0 || i >= static_cast<long>(seq.size())) continue;
        out[k].first += seq[static_cast<std::size_t>(i)]->t_end - seq[static_cast<std::size_t>(i)]->t_start;
        out[k].second += 1;
      }
    }
  return out;
}

struct KeyFrame {
  std::string fixation;
  std::string uri;
  double score;
};

/// Scores every window fixation, sorts by (score desc, start asc, id asc),
/// maps each to the sharpest frame within its span (else the nearest frame,
/// earlier on ties) and keeps the first k distinct frames.
template <typename Sharp>
std::vector<KeyFrame> key_frames(const Session& s, const QuerySpan& q, std::size_t k, double tau, Sharp sharp,
                                 double pre = 20.0) {
  struct Cand {
    const Fixation* f;
    double score;
  };
  std::vector<Cand> cands;
  for (const auto* f : window(s, q, pre))
    cands.push_back({f, (f->t_end - f->t_start) / (1.0 + std::fabs(f->t_start - q.t_start) / tau)});
  // Selection sort: no reliance on std::sort's comparator contract.
  for (std::size_t i = 0; i < cands.size(); ++i) {
    std::size_t m = i;
    for (std::size_t j = i + 1; j < cands.size(); ++j) {
      const auto &a = cands[j], &b = cands[m];
      bool before = a.score > b.score ||
                    (a.score == b.score && (a.f->t_start < b.f->t_start || (a.f->t_start == b.f->t_start && a.f->id < b.f->id)));
      if (before) m = j;
    }
    std::swap(cands[i], cands[m]);
  }
  std::vector<KeyFrame> out;
  for (const auto& c : cands) {
    if (out.size() >= k) break;
    const FrameRef* pick = nullptr;
    for (const auto& fr : s.frames)
      if (fr.t >= c.f->t_start && fr.t <= c.f->t_end && (!pick || sharp(fr) > sharp(*pick))) pick = &fr;
    if (!pick) {
      double best = 0;
      for (const auto& fr : s.frames) {
        double d = fr.t < c.f->t_start ? c.f->t_start - fr.t : fr.t - c.f->t_end;
        if (!pick || d < best) {
          pick = &fr;
          best = d;
        }
      }
    }
    if (!pick) continue;
    bool dup = false;
    for (const auto& o : out) dup = dup || o.uri == pick->uri;
    if (dup) continue;
    out.push_back({c.f->id, pick->uri, c.score});
  }
  return out;
}

}  // namespace gazeq::oracle

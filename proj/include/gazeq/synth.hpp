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

// Synthetic sessions with planted mouth-eye coordination.
//
// Each query occupies its own block of the timeline:
//
//   |<------------- 20 s pre-query ------------->|<--- spoken words --->|
//     wander  [irrelevant peak]  wander  [startup]  w0  w1 (pron)  w2 ...
//                                                        [relevant]
//
// Blocks are at least 22 s apart so no fixation falls in two query windows.
// All times are multiples of 1/1024 s, which keeps every difference exact.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gazeq/error.hpp"
#include "gazeq/random.hpp"
#include "gazeq/session.hpp"
#include "gazeq/util.hpp"

namespace gazeq {

struct SynthConfig {
  std::string session_id = "synth";
  std::size_t query_count = 12;
  std::size_t words_min = 4;
  std::size_t words_max = 10;
  double pronoun_rate = 0.3;
  double startup_mean = 4.62;
  double startup_spread = 1.5;
  double pronoun_cooccurrence_rate = 0.8;
  double relevant_duration_mean = 1.1;
  double irrelevant_duration_mean = 0.75;
  double duration_spread = 0.15;
  double wander_rate = 0.5;
  double frame_interval = 1.0;
  double gaze_rate_hz = 5.0;
  std::uint64_t seed = 1;

  void validate() const {
    auto rate = [](double v, const char* name) {
      if (!(v >= 0 && v <= 1)) fail(ErrorKind::ConfigError, std::string(name) + " must be in [0, 1]", name);
    };
    auto positive = [](double v, const char* name) {
      if (!(std::isfinite(v) && v > 0)) fail(ErrorKind::ConfigError, std::string(name) + " must be a positive number", name);
    };
    rate(pronoun_rate, "pronoun_rate");
    rate(pronoun_cooccurrence_rate, "pronoun_cooccurrence_rate");
    rate(wander_rate, "wander_rate");
    positive(relevant_duration_mean, "relevant_duration_mean");
    positive(irrelevant_duration_mean, "irrelevant_duration_mean");
    positive(frame_interval, "frame_interval");
    positive(gaze_rate_hz, "gaze_rate_hz");
    if (!(std::isfinite(startup_mean) && startup_mean > 0 && startup_mean <= kMaxStartup))
      fail(ErrorKind::ConfigError, "startup_mean must be in (0, 20]", "startup_mean");
    if (!(std::isfinite(startup_spread) && startup_spread >= 0))
      fail(ErrorKind::ConfigError, "startup_spread must be >= 0", "startup_spread");
    if (!(std::isfinite(duration_spread) && duration_spread >= 0))
      fail(ErrorKind::ConfigError, "duration_spread must be >= 0", "duration_spread");
    if (query_count == 0) fail(ErrorKind::ConfigError, "query_count must be >= 1", "query_count");
    if (words_min == 0 || words_max < words_min)
      fail(ErrorKind::ConfigError, "words_per_query must satisfy 1 <= min <= max", "words_per_query");
    if (session_id.empty()) fail(ErrorKind::ConfigError, "session_id must not be empty", "session_id");
  }

  static constexpr double kMaxStartup = 20.0;
};

/// Reads a JSON config; absent keys keep their defaults.
/// `words_per_query` is a two-element array [min, max].
inline SynthConfig synth_config_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorKind::ConfigError, "synth config must be an object");
  SynthConfig c;
  try {
    for (auto& [key, v] : j.items()) {
      if (key == "session_id") c.session_id = v.get<std::string>();
      else if (key == "query_count") c.query_count = v.get<std::size_t>();
      else if (key == "words_per_query") {
        c.words_min = v.at(0).get<std::size_t>();
        c.words_max = v.at(1).get<std::size_t>();
      } else if (key == "pronoun_rate") c.pronoun_rate = v.get<double>();
      else if (key == "startup_mean") c.startup_mean = v.get<double>();
      else if (key == "startup_spread") c.startup_spread = v.get<double>();
      else if (key == "pronoun_cooccurrence_rate") c.pronoun_cooccurrence_rate = v.get<double>();
      else if (key == "relevant_duration_mean") c.relevant_duration_mean = v.get<double>();
      else if (key == "irrelevant_duration_mean") c.irrelevant_duration_mean = v.get<double>();
      else if (key == "duration_spread") c.duration_spread = v.get<double>();
      else if (key == "wander_rate") c.wander_rate = v.get<double>();
      else if (key == "frame_interval") c.frame_interval = v.get<double>();
      else if (key == "gaze_rate_hz") c.gaze_rate_hz = v.get<double>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else fail(ErrorKind::ConfigError, "unknown synth config key '" + key + "'", key);
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::ConfigError, std::string("synth config: ") + e.what());
  }
  c.validate();
  return c;
}

inline json to_json(const SynthConfig& c) {
  return {{"session_id", c.session_id},
          {"query_count", c.query_count},
          {"words_per_query", {c.words_min, c.words_max}},
          {"pronoun_rate", c.pronoun_rate},
          {"startup_mean", c.startup_mean},
          {"startup_spread", c.startup_spread},
          {"pronoun_cooccurrence_rate", c.pronoun_cooccurrence_rate},
          {"relevant_duration_mean", c.relevant_duration_mean},
          {"irrelevant_duration_mean", c.irrelevant_duration_mean},
          {"duration_spread", c.duration_spread},
          {"wander_rate", c.wander_rate},
          {"frame_interval", c.frame_interval},
          {"gaze_rate_hz", c.gaze_rate_hz},
          {"seed", c.seed}};
}

struct PlantedQuery {
  std::string query_id;
  std::string target;
  double startup = 0;
  std::string startup_fixation;
  std::string longest_relevant;
  std::optional<std::string> longest_irrelevant;
  std::size_t pronouns = 0;
  std::vector<std::pair<std::size_t, std::string>> pronoun_fixations;  // word index -> concurrent relevant fixation

  bool operator==(const PlantedQuery&) const = default;
};

struct PlantRecord {
  std::uint64_t seed = 0;
  std::vector<PlantedQuery> queries;

  std::size_t pronouns() const {
    std::size_t n = 0;
    for (const auto& q : queries) n += q.pronouns;
    return n;
  }
  bool operator==(const PlantRecord&) const = default;
};

struct SynthResult {
  Session session;
  GroundTruth truth;
  PlantRecord record;
};

namespace detail {

inline double quantize(double t) { return std::round(t * 1024.0) / 1024.0; }

inline constexpr const char* kSynthObjects[] = {"apple", "mug", "book", "plant", "remote", "kettle", "banana",
                                                "lamp", "bottle", "scissors", "clock", "sneaker"};
inline constexpr const char* kSynthPronouns[] = {"this", "that", "it", "these", "those"};
inline constexpr const char* kSynthFillers[] = {"what", "is", "the", "how", "much", "does", "cost", "where", "can",
                                                "i", "buy", "calories", "in", "made", "of", "color", "brand",
                                                "price", "kind", "use", "for", "about", "tell", "me"};

template <typename T, std::size_t N>
const T& pick(Pcg32& rng, const T (&items)[N]) {
  return items[rng.below(static_cast<std::uint32_t>(N))];
}

struct SynthBuilder {
  const SynthConfig& cfg;
  Pcg32 rng;
  Session session;
  GroundTruth truth;
  PlantRecord record;
  RelevanceLabels labels;
  std::vector<bool> relevant_flags;  // parallel to session.fixations

  explicit SynthBuilder(const SynthConfig& c) : cfg(c), rng(c.seed, 0x5eed5eedULL) {
    session.id = c.session_id;
    session.base_dir = ".";
    record.seed = c.seed;
  }

  double gap() { return quantize(rng.uniform(0.03, 0.1)); }

  std::size_t add_fixation(double t0, double t1, double x, double y, const std::string& qid, bool relevant) {
    Fixation f;
    f.id = "f" + std::string(6 - std::min<std::size_t>(6, std::to_string(session.fixations.size()).size()), '0') +
           std::to_string(session.fixations.size());
    f.t_start = t0;
    f.t_end = t1;
    f.x = std::round(std::clamp(x, 0.0, 1.0) * 1e4) / 1e4;
    f.y = std::round(std::clamp(y, 0.0, 1.0) * 1e4) / 1e4;
    labels.set(qid, f.id, relevant);
    session.fixations.push_back(f);
    relevant_flags.push_back(relevant);
    return session.fixations.size() - 1;
  }

  double truncated_startup() {
    if (cfg.startup_spread == 0) return quantize(cfg.startup_mean);
    for (;;) {
      double s = quantize(rng.normal(cfg.startup_mean, cfg.startup_spread));
      if (s > 0 && s <= SynthConfig::kMaxStartup) return s;
    }
  }

  double peak_duration(double mean) {
    double d = cfg.duration_spread > 0 ? rng.normal(mean, cfg.duration_spread) : mean;
    return std::max(quantize(d), 4.0 / 1024.0);
  }

  // Returns the end of the block.
  double build_query(std::size_t qi, double T) {
    std::string qid = "q" + std::string(qi + 1 < 10 ? "00" : (qi + 1 < 100 ? "0" : "")) + std::to_string(qi + 1);
    PlantedQuery planted;
    planted.query_id = qid;
    planted.target = kSynthObjects[qi % std::size(kSynthObjects)];
    truth.entries[qid] = {planted.target};
    const double ox = rng.uniform(0.2, 0.8), oy = rng.uniform(0.2, 0.8);
    auto near_target = [&] { return std::pair{ox + rng.uniform(-0.02, 0.02), oy + rng.uniform(-0.02, 0.02)}; };
    auto elsewhere = [&] { return std::pair{rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)}; };

    // Words.
    QuerySpan q;
    q.id = qid;
    const PronounLexicon lexicon;
    std::size_t n_words = cfg.words_min + rng.below(static_cast<std::uint32_t>(cfg.words_max - cfg.words_min + 1));
    double t = T;
    for (std::size_t j = 0; j < n_words; ++j) {
      TimedWord w;
      bool pron = rng.bernoulli(cfg.pronoun_rate);
      w.text = pron ? pick(rng, kSynthPronouns) : pick(rng, kSynthFillers);
      w.is_pronoun = lexicon.contains(w.text);
      w.index = j;
      w.t_start = t;
      w.t_end = quantize(t + rng.uniform(0.2, 0.6));
      t = quantize(w.t_end + 0.05);
      planted.pronouns += w.is_pronoun ? 1 : 0;
      q.words.push_back(std::move(w));
    }
    q.t_start = T;
    q.t_end = q.words.back().t_end;

    const double d_rel = peak_duration(cfg.relevant_duration_mean);
    const double d_irr = peak_duration(cfg.irrelevant_duration_mean);

    // Pre-query period: [T - 20, T). The startup fixation is placed first,
    // then the irrelevant peak and wander fill the free time around it.
    const double s = truncated_startup();
    const double st0 = T - s;
    const double st1 = st0 + std::max(std::min(d_rel, quantize(0.9 * s)), 1.0 / 1024.0);
    const double pre_lo = quantize(T - SynthConfig::kMaxStartup + 0.01);
    const double pre_hi = T - 0.05;

    struct Planned {
      double t0, t1;
      bool relevant;
      bool target;
    };
    std::vector<Planned> pre;
    bool peak_placed = false;
    const double peak_at = rng.uniform(pre_lo, std::max(pre_lo, st0 - d_irr - 0.05));
    double cursor = pre_lo;
    auto place_until = [&](double limit) {
      while (cursor < limit) {
        double room = limit - cursor;
        if (!peak_placed && cursor >= peak_at && room >= d_irr + 0.01) {
          pre.push_back({cursor, cursor + d_irr, false, false});
          peak_placed = true;
          cursor = quantize(cursor + d_irr + gap());
          continue;
        }
        if (rng.bernoulli(cfg.wander_rate)) {
          double d = std::max(quantize(rng.uniform(0.3, 0.9) * d_irr), 1.0 / 1024.0);
          if (d + 0.01 <= room) {
            pre.push_back({cursor, cursor + d, false, false});
            cursor = quantize(cursor + d + gap());
            continue;
          }
        }
        cursor = quantize(cursor + rng.uniform(0.2, 0.6));
      }
    };
    place_until(st0 - 0.02);
    pre.push_back({st0, st1, true, true});
    cursor = quantize(st1 + gap());
    place_until(pre_hi);

    double last_end = 0;
    for (const auto& p : pre) {
      auto [x, y] = p.target ? near_target() : elsewhere();
      std::size_t idx = add_fixation(p.t0, p.t1, x, y, qid, p.relevant);
      if (p.target) planted.startup_fixation = session.fixations[idx].id;
      last_end = std::max(last_end, p.t1);
    }
    planted.startup = s;

    // Spoken period.
    cursor = quantize(last_end + gap());
    std::optional<std::size_t> last;
    for (const auto& w : q.words) {
      bool last_covers = last && session.fixations[*last].t_end >= w.t_start;
      if (w.is_pronoun && last_covers && relevant_flags[*last]) {
        planted.pronoun_fixations.emplace_back(w.index, session.fixations[*last].id);
        continue;
      }
      double start = std::max(cursor, w.t_start);
      if (start > w.t_end - 0.02) continue;
      if (w.is_pronoun && rng.bernoulli(cfg.pronoun_cooccurrence_rate)) {
        double d = std::max(quantize(rng.uniform(0.4, 0.95) * d_rel), 1.0 / 1024.0);
        auto [x, y] = near_target();
        last = add_fixation(start, start + d, x, y, qid, true);
        planted.pronoun_fixations.emplace_back(w.index, session.fixations[*last].id);
        cursor = quantize(start + d + gap());
      } else if (!w.is_pronoun && rng.bernoulli(cfg.wander_rate)) {
        double d = std::max(quantize(rng.uniform(0.3, 0.9) * d_irr), 1.0 / 1024.0);
        auto [x, y] = elsewhere();
        last = add_fixation(start, start + d, x, y, qid, false);
        cursor = quantize(start + d + gap());
      }
    }

    // Longest planted fixations, with the analytics tie-break.
    auto better = [](const Fixation& a, const Fixation& b) {
      if (a.duration() != b.duration()) return a.duration() > b.duration();
      if (a.t_start != b.t_start) return a.t_start < b.t_start;
      return a.id < b.id;
    };
    const Fixation* best_rel = nullptr;
    const Fixation* best_irr = nullptr;
    double block_end = q.t_end;
    for (std::size_t i = 0; i < session.fixations.size(); ++i) {
      const auto& f = session.fixations[i];
      if (!labels.get(qid, f.id)) continue;
      block_end = std::max(block_end, f.t_end);
      const Fixation*& slot = relevant_flags[i] ? best_rel : best_irr;
      if (!slot || better(f, *slot)) slot = &f;
    }
    planted.longest_relevant = best_rel->id;
    if (best_irr) planted.longest_irrelevant = best_irr->id;

    session.queries.push_back(std::move(q));
    record.queries.push_back(std::move(planted));
    return block_end;
  }

  void add_gaze_and_frames(double end) {
    const double step = 1.0 / cfg.gaze_rate_hz;
    std::size_t fi = 0;
    Pcg32 jitter(cfg.seed, 0x9a2eULL);
    for (std::size_t i = 0;; ++i) {
      double t = quantize(static_cast<double>(i) * step);
      if (t > end) break;
      while (fi < session.fixations.size() && session.fixations[fi].t_end < t) ++fi;
      GazeSample g;
      g.t = t;
      if (fi < session.fixations.size() && session.fixations[fi].t_start <= t) {
        g.x = session.fixations[fi].x;
        g.y = session.fixations[fi].y;
      } else {
        g.x = std::round(jitter.uniform() * 1e4) / 1e4;
        g.y = std::round(jitter.uniform() * 1e4) / 1e4;
      }
      session.gaze.push_back(g);
    }
    for (std::size_t i = 0;; ++i) {
      double t = quantize(static_cast<double>(i) * cfg.frame_interval);
      if (t > end) break;
      FrameRef fr;
      fr.t = t;
      std::string n = std::to_string(i);
      fr.uri = "frames/" + std::string(n.size() < 6 ? 6 - n.size() : 0, '0') + n + ".pgm";
      fr.width = 1280;
      fr.height = 720;
      fr.sharpness = std::round(jitter.uniform(0.001, 0.05) * 1e6) / 1e6;
      session.frames.push_back(fr);
    }
  }
};

}  // namespace detail

inline SynthResult generate(const SynthConfig& config) {
  config.validate();
  detail::SynthBuilder b(config);
  double T = SynthConfig::kMaxStartup + 2.0;
  double end = 0;
  for (std::size_t i = 0; i < config.query_count; ++i) {
    end = b.build_query(i, T);
    T = detail::quantize(end + SynthConfig::kMaxStartup + 2.0);
  }
  b.add_gaze_and_frames(end + 1.0);
  b.session.labels = std::move(b.labels);
  b.session.truth = b.truth;
  validate(b.session);
  return {std::move(b.session), std::move(b.truth), std::move(b.record)};
}

/// The generator's own record for `session`, which must have come from
/// generate(config).
inline PlantRecord plant_oracle(const SynthConfig& config, const Session& session) {
  auto regenerated = generate(config);
  if (!regenerated.session.same_content(session))
    fail(ErrorKind::SeedMismatch, "session was not generated from this config (seed " + std::to_string(config.seed) + ")",
         session.id);
  return std::move(regenerated.record);
}

inline json to_json(const PlantRecord& r) {
  json qs = json::array();
  for (const auto& q : r.queries) {
    json pf = json::array();
    for (const auto& [w, f] : q.pronoun_fixations) pf.push_back({{"word", w}, {"fixation", f}});
    qs.push_back({{"query_id", q.query_id},
                  {"target", q.target},
                  {"startup", q.startup},
                  {"startup_fixation", q.startup_fixation},
                  {"longest_relevant", q.longest_relevant},
                  {"longest_irrelevant", q.longest_irrelevant ? json(*q.longest_irrelevant) : json(nullptr)},
                  {"pronouns", q.pronouns},
                  {"pronoun_fixations", pf}});
  }
  return {{"seed", r.seed}, {"queries", qs}};
}

}  // namespace gazeq

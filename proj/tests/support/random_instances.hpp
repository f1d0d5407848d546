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

// Random single-query sessions for oracle comparisons. Times sit on a 1/8 s
// grid so closed-interval touches, duration ties and the exact 20 s startup
// boundary all occur often.

#pragma once

#include <cstdio>
#include <random>
#include <string>

#include "gazeq/session.hpp"

namespace gazeq::testing {

struct InstanceShape {
  std::size_t max_fixations = 50;
  std::size_t max_words = 20;
  double unlabeled_rate = 0.15;
  double relevant_rate = 0.4;
  double pronoun_rate = 0.3;
};

inline std::string fixation_id(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "f%04zu", i);
  return buf;
}

/// One session holding one query at t = 25 s, fixations from t = 0 onward
/// (some before the 20 s window), frames every 0.5 s with random sharpness.
inline Session random_instance(std::mt19937_64& rng, const std::string& id, const InstanceShape& shape = {}) {
  auto unit = [&] { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); };
  auto ticks = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  constexpr double kTick = 0.125;

  Session s;
  s.id = id;
  s.base_dir = ".";

  QuerySpan q;
  q.id = "q";
  q.t_start = 25.0;
  const std::size_t n_words = static_cast<std::size_t>(ticks(1, static_cast<int>(shape.max_words)));
  double t = q.t_start;
  for (std::size_t j = 0; j < n_words; ++j) {
    TimedWord w;
    w.index = j;
    w.is_pronoun = unit() < shape.pronoun_rate;
    w.text = w.is_pronoun ? "this" : "word";
    w.t_start = t;
    w.t_end = t + kTick * ticks(1, 4);
    t = w.t_end + kTick * ticks(0, 1);
    q.words.push_back(w);
  }
  q.t_end = q.words.back().t_end;

  const std::size_t n_fix = static_cast<std::size_t>(ticks(0, static_cast<int>(shape.max_fixations)));
  RelevanceLabels labels;
  double cursor = kTick * ticks(0, 40);
  for (std::size_t i = 0; i < n_fix; ++i) {
    Fixation f;
    f.id = fixation_id(i);
    f.t_start = cursor;
    f.t_end = cursor + kTick * ticks(1, 8);
    f.x = unit();
    f.y = unit();
    // Occasionally start exactly at the 20 s startup cap.
    if (i > 0 && s.fixations.back().t_end <= q.t_start - 20.0 && unit() < 0.3) {
      f.t_end = q.t_start - 20.0 + (f.t_end - f.t_start);
      f.t_start = q.t_start - 20.0;
    }
    double r = unit();
    if (r >= shape.unlabeled_rate) labels.set(q.id, f.id, unit() < shape.relevant_rate);
    cursor = f.t_end + kTick * ticks(0, 6);
    s.fixations.push_back(f);
  }
  s.queries.push_back(q);
  s.labels = labels;

  for (int i = 0; i <= 70; ++i) {
    FrameRef fr;
    fr.t = 0.5 * i;
    fr.uri = "frames/" + std::to_string(i) + ".pgm";
    fr.width = 64;
    fr.height = 48;
    // Coarse values so sharpness ties occur too.
    fr.sharpness = static_cast<double>(ticks(1, 6));
    s.frames.push_back(fr);
  }
  validate(s);
  return s;
}

}  // namespace gazeq::testing

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

// Session model: timestamped gaze, fixations, word-timed queries and frames,
// plus the loader for the on-disk session layout (manifest.json + CSV/JSON).

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gazeq/csv.hpp"
#include "gazeq/error.hpp"
#include "gazeq/util.hpp"

namespace gazeq {

using json = nlohmann::json;

struct GazeSample {
  double t = 0;
  double x = 0;
  double y = 0;
  std::optional<double> confidence;

  bool operator==(const GazeSample&) const = default;
};

struct Fixation {
  std::string id;
  double t_start = 0;
  double t_end = 0;
  double x = 0;
  double y = 0;

  double duration() const { return t_end - t_start; }
  // Off-frame gaze is kept; spatial localization clamps at use.
  bool in_frame() const { return x >= 0 && x <= 1 && y >= 0 && y <= 1; }

  bool operator==(const Fixation&) const = default;
};

struct TimedWord {
  std::string text;
  double t_start = 0;
  double t_end = 0;
  std::size_t index = 0;
  bool is_pronoun = false;

  bool operator==(const TimedWord&) const = default;
};

struct QuerySpan {
  std::string id;
  double t_start = 0;
  double t_end = 0;
  std::vector<TimedWord> words;
  std::optional<std::string> audio_ref;

  std::string text() const {
    std::string out;
    for (const auto& w : words) {
      if (!out.empty()) out.push_back(' ');
      out += w.text;
    }
    return out;
  }

  bool operator==(const QuerySpan&) const = default;
};

/// Annotated relevance g(fixation, query). A missing pair is unlabeled, which
/// is not the same as irrelevant.
class RelevanceLabels {
 public:
  void set(const std::string& query_id, const std::string& fixation_id, bool relevant) {
    entries_[{query_id, fixation_id}] = relevant;
  }

  std::optional<bool> get(const std::string& query_id, const std::string& fixation_id) const {
    auto it = entries_.find({query_id, fixation_id});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const { return entries_.size(); }
  const auto& entries() const { return entries_; }

  bool operator==(const RelevanceLabels&) const = default;

 private:
  std::map<std::pair<std::string, std::string>, bool> entries_;
};

struct FrameRef {
  double t = 0;
  std::string uri;
  int width = 0;
  int height = 0;
  std::optional<double> sharpness;

  bool operator==(const FrameRef&) const = default;
};

struct GroundTruth {
  std::map<std::string, std::set<std::string>> entries;
  std::vector<std::set<std::string>> synonym_groups;

  bool operator==(const GroundTruth&) const = default;
};

struct Session {
  std::string id;
  fs::path base_dir;  // frame and audio URIs resolve against this
  std::vector<GazeSample> gaze;
  std::vector<Fixation> fixations;
  std::vector<QuerySpan> queries;
  std::vector<FrameRef> frames;
  std::optional<RelevanceLabels> labels;
  std::optional<GroundTruth> truth;

  const QuerySpan* find_query(std::string_view query_id) const {
    for (const auto& q : queries)
      if (q.id == query_id) return &q;
    return nullptr;
  }

  const QuerySpan& query(std::string_view query_id) const {
    if (auto* q = find_query(query_id)) return *q;
    fail(ErrorKind::DanglingReference, "unknown query '" + std::string(query_id) + "'",
         std::string(query_id));
  }

  fs::path resolve(const std::string& uri) const {
    fs::path p(uri);
    return p.is_absolute() ? p : base_dir / p;
  }

  // Structural equality; base_dir is where the files happen to live.
  bool same_content(const Session& o) const {
    return id == o.id && gaze == o.gaze && fixations == o.fixations && queries == o.queries &&
           frames == o.frames && labels == o.labels && truth == o.truth;
  }
};

// ---------------------------------------------------------------------------
// Intervals

/// Closed-interval intersection: touching endpoints count.
inline bool intervals_intersect(double a_start, double a_end, double b_start, double b_end) {
  if (!(a_start <= a_end) || !(b_start <= b_end))
    fail(ErrorKind::InvalidInterval, "interval start after end");
  return a_start <= b_end && b_start <= a_end;
}

/// Fixations whose closed span intersects [t_lo, t_hi], in t_start order.
/// Relies on fixations being sorted and non-overlapping, so t_end is sorted too.
inline std::vector<Fixation> fixations_in_window(std::span<const Fixation> fixations, double t_lo,
                                                 double t_hi) {
  if (!(t_lo <= t_hi)) fail(ErrorKind::InvalidInterval, "window start after end");
  auto first = std::lower_bound(fixations.begin(), fixations.end(), t_lo,
                                [](const Fixation& f, double t) { return f.t_end < t; });
  std::vector<Fixation> out;
  for (auto it = first; it != fixations.end() && it->t_start <= t_hi; ++it) out.push_back(*it);
  return out;
}

inline std::vector<Fixation> fixations_in_window(const Session& session, double t_lo, double t_hi) {
  return fixations_in_window(std::span<const Fixation>(session.fixations), t_lo, t_hi);
}

// ---------------------------------------------------------------------------
// Pronoun lexicon

class PronounLexicon {
 public:
  PronounLexicon()
      : words_{"this", "that", "these", "those", "it", "they", "them", "here", "there", "one", "ones"} {}

  explicit PronounLexicon(std::set<std::string> words) : words_(std::move(words)) {}

  /// One word per line; blank lines and lines starting with '#' are skipped.
  /// The file extends the default list.
  static PronounLexicon from_file(const fs::path& path) {
    PronounLexicon lex;
    std::istringstream in(read_file(path));
    std::string line;
    while (std::getline(in, line)) {
      auto w = to_lower(trim(line));
      if (w.empty() || w[0] == '#') continue;
      lex.words_.insert(w);
    }
    return lex;
  }

  bool contains(std::string_view token) const {
    auto tokens = tokenize_words(token);
    if (tokens.size() != 1) return false;
    return words_.count(tokens.front()) != 0;
  }

  const std::set<std::string>& words() const { return words_; }

 private:
  std::set<std::string> words_;
};

// ---------------------------------------------------------------------------
// Validation

inline void validate(const Session& s) {
  for (std::size_t i = 0; i < s.gaze.size(); ++i) {
    const auto& g = s.gaze[i];
    if (!std::isfinite(g.t) || !std::isfinite(g.x) || !std::isfinite(g.y))
      fail(ErrorKind::SchemaError, "gaze sample " + std::to_string(i) + " is not finite");
    if (g.confidence && (*g.confidence < 0 || *g.confidence > 1))
      fail(ErrorKind::SchemaError, "gaze confidence outside [0,1] at sample " + std::to_string(i));
    if (i > 0 && g.t < s.gaze[i - 1].t)
      fail(ErrorKind::OrderingError, "gaze samples not sorted at sample " + std::to_string(i));
  }

  std::set<std::string> fixation_ids;
  for (std::size_t i = 0; i < s.fixations.size(); ++i) {
    const auto& f = s.fixations[i];
    if (!std::isfinite(f.t_start) || !std::isfinite(f.t_end) || !std::isfinite(f.x) ||
        !std::isfinite(f.y))
      fail(ErrorKind::SchemaError, "fixation '" + f.id + "' has non-finite fields", f.id);
    if (!(f.t_start < f.t_end))
      fail(ErrorKind::OrderingError, "fixation '" + f.id + "' has t_end <= t_start", f.id);
    if (!fixation_ids.insert(f.id).second)
      fail(ErrorKind::SchemaError, "duplicate fixation id '" + f.id + "'", f.id);
    if (i > 0) {
      const auto& prev = s.fixations[i - 1];
      if (f.t_start < prev.t_start)
        fail(ErrorKind::OrderingError, "fixations not sorted at '" + f.id + "'", f.id);
      if (f.t_start < prev.t_end)
        fail(ErrorKind::SchemaError, "fixation '" + f.id + "' overlaps '" + prev.id + "'", f.id);
    }
  }

  std::set<std::string> query_ids;
  for (std::size_t i = 0; i < s.queries.size(); ++i) {
    const auto& q = s.queries[i];
    if (!query_ids.insert(q.id).second)
      fail(ErrorKind::SchemaError, "duplicate query id '" + q.id + "'", q.id);
    if (!(q.t_start <= q.t_end))
      fail(ErrorKind::OrderingError, "query '" + q.id + "' has t_end < t_start", q.id);
    if (i > 0) {
      const auto& prev = s.queries[i - 1];
      if (q.t_start < prev.t_start)
        fail(ErrorKind::OrderingError, "queries not sorted at '" + q.id + "'", q.id);
      if (q.t_start <= prev.t_end)
        fail(ErrorKind::OrderingError, "query '" + q.id + "' overlaps '" + prev.id + "'", q.id);
    }
    if (q.words.empty() && !q.audio_ref)
      fail(ErrorKind::SchemaError, "query '" + q.id + "' has neither words nor audio", q.id);
    for (std::size_t j = 0; j < q.words.size(); ++j) {
      const auto& w = q.words[j];
      if (w.index != j)
        fail(ErrorKind::SchemaError, "query '" + q.id + "' word index mismatch", q.id);
      if (!(w.t_start <= w.t_end))
        fail(ErrorKind::OrderingError, "query '" + q.id + "' word " + std::to_string(j) + " ends before it starts", q.id);
      if (j > 0 && w.t_start < q.words[j - 1].t_start)
        fail(ErrorKind::OrderingError, "query '" + q.id + "' words not time-ordered", q.id);
      if (w.t_start < q.t_start || w.t_end > q.t_end)
        fail(ErrorKind::OrderingError, "query '" + q.id + "' word " + std::to_string(j) + " outside query span", q.id);
    }
  }

  for (std::size_t i = 0; i < s.frames.size(); ++i) {
    const auto& fr = s.frames[i];
    if (fr.width <= 0 || fr.height <= 0)
      fail(ErrorKind::SchemaError, "frame '" + fr.uri + "' has non-positive size", fr.uri);
    if (!std::isfinite(fr.t) || fr.t < 0)
      fail(ErrorKind::SchemaError, "frame '" + fr.uri + "' timestamp outside session", fr.uri);
    if (fr.sharpness && !(*fr.sharpness >= 0))
      fail(ErrorKind::SchemaError, "frame '" + fr.uri + "' has negative sharpness", fr.uri);
    if (i > 0 && fr.t < s.frames[i - 1].t)
      fail(ErrorKind::OrderingError, "frames not sorted at '" + fr.uri + "'", fr.uri);
  }

  if (s.labels) {
    for (const auto& [key, rel] : s.labels->entries()) {
      if (!query_ids.count(key.first))
        fail(ErrorKind::DanglingReference, "label references unknown query '" + key.first + "'", key.first);
      if (!fixation_ids.count(key.second))
        fail(ErrorKind::DanglingReference, "label references unknown fixation '" + key.second + "'", key.second);
    }
  }
  if (s.truth) {
    for (const auto& [qid, names] : s.truth->entries) {
      if (!query_ids.count(qid))
        fail(ErrorKind::DanglingReference, "truth references unknown query '" + qid + "'", qid);
      for (const auto& n : names)
        if (n.empty()) fail(ErrorKind::SchemaError, "empty object name for query '" + qid + "'", qid);
    }
  }
}

// ---------------------------------------------------------------------------
// Loading

struct LoadOptions {
  std::optional<PronounLexicon> lexicon;  // overrides the manifest's lexicon entry
};

namespace detail {

struct TimeConversion {
  double origin = 0;
  double scale = 1;
  double operator()(double raw) const { return (raw - origin) * scale; }
};

inline double unit_scale(const std::string& unit) {
  if (unit == "s") return 1.0;
  if (unit == "ms") return 1e-3;
  if (unit == "us") return 1e-6;
  if (unit == "ns") return 1e-9;
  fail(ErrorKind::SchemaError, "unknown time_unit '" + unit + "'", "time_unit");
}

inline json parse_json_file(const fs::path& path) {
  auto text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::SchemaError, path.string() + ": " + e.what(), path.string());
  }
}

inline double json_number(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    fail(ErrorKind::SchemaError, where + ": missing field '" + key + "'", key);
  const auto& v = obj.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    if (auto n = parse_number(v.get<std::string>())) return *n;
  }
  fail(ErrorKind::SchemaError, where + ": field '" + key + "' is not a number", key);
}

inline std::string json_string(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    fail(ErrorKind::SchemaError, where + ": missing field '" + key + "'", key);
  const auto& v = obj.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  fail(ErrorKind::SchemaError, where + ": field '" + key + "' is not a string", key);
}

inline fs::path manifest_path(const fs::path& manifest_or_dir) {
  if (fs::is_directory(manifest_or_dir)) return manifest_or_dir / "manifest.json";
  return manifest_or_dir;
}

}  // namespace detail

/// Truth file: {"<query_id>": ["name", ...], ..., "synonyms": [["a", "b"], ...]}.
/// Names are lowercased. A singleton synonym group adds a vocabulary name.
inline GroundTruth parse_truth(const json& tj, const std::string& source) {
  if (!tj.is_object()) fail(ErrorKind::SchemaError, source + ": expected an object");
  GroundTruth truth;
  auto name_of = [&](const json& n, const std::string& key) {
    if (!n.is_string()) fail(ErrorKind::SchemaError, source + ": '" + key + "' entries must be strings", key);
    return to_lower(trim(n.get<std::string>()));
  };
  for (const auto& [key, value] : tj.items()) {
    if (!value.is_array()) fail(ErrorKind::SchemaError, source + ": '" + key + "' must be an array", key);
    if (key == "synonyms") {
      for (const auto& group : value) {
        if (!group.is_array()) fail(ErrorKind::SchemaError, source + ": synonym groups must be arrays", key);
        std::set<std::string> g;
        for (const auto& n : group) g.insert(name_of(n, key));
        if (!g.empty()) truth.synonym_groups.push_back(std::move(g));
      }
      continue;
    }
    auto& names = truth.entries[key];
    for (const auto& n : value) names.insert(name_of(n, key));
  }
  return truth;
}

inline GroundTruth load_truth(const fs::path& path) {
  if (!fs::exists(path)) fail(ErrorKind::MissingFile, "truth file not found: " + path.string(), path.string());
  return parse_truth(detail::parse_json_file(path), path.string());
}

/// Loads and validates a session. `manifest` may be the manifest file or the
/// directory containing `manifest.json`.
inline Session load_session(const fs::path& manifest, const LoadOptions& options = {}) {
  const fs::path mpath = detail::manifest_path(manifest);
  if (!fs::exists(mpath)) fail(ErrorKind::MissingFile, "manifest not found: " + mpath.string(), mpath.string());
  const json m = detail::parse_json_file(mpath);
  if (!m.is_object()) fail(ErrorKind::SchemaError, "manifest must be a JSON object");
  const fs::path base = mpath.has_parent_path() ? mpath.parent_path() : fs::path(".");

  auto require_path = [&](const char* key) -> fs::path {
    if (!m.contains(key) || !m.at(key).is_string())
      fail(ErrorKind::SchemaError, "manifest: missing path '" + std::string(key) + "'", key);
    fs::path p = base / m.at(key).get<std::string>();
    if (!fs::exists(p)) fail(ErrorKind::MissingFile, "referenced file missing: " + p.string(), p.string());
    return p;
  };
  auto optional_path = [&](const char* key) -> std::optional<fs::path> {
    if (!m.contains(key) || m.at(key).is_null()) return std::nullopt;
    return require_path(key);
  };

  detail::TimeConversion tc;
  if (m.contains("time_unit")) tc.scale = detail::unit_scale(m.at("time_unit").get<std::string>());
  if (m.contains("time_origin")) tc.origin = detail::json_number(m, "time_origin", "manifest");

  double xscale = 1, yscale = 1;
  if (m.value("coordinates", std::string("normalized")) == "pixels") {
    double w = detail::json_number(m, "scene_width", "manifest");
    double h = detail::json_number(m, "scene_height", "manifest");
    if (w <= 0 || h <= 0) fail(ErrorKind::SchemaError, "scene size must be positive");
    xscale = 1.0 / w;
    yscale = 1.0 / h;
  }

  PronounLexicon lexicon;
  if (options.lexicon) {
    lexicon = *options.lexicon;
  } else if (auto lp = optional_path("lexicon")) {
    lexicon = PronounLexicon::from_file(*lp);
  }

  Session s;
  s.base_dir = base;
  s.id = m.contains("id") ? m.at("id").get<std::string>()
                          : fs::absolute(base).lexically_normal().filename().string();
  if (s.id.empty()) s.id = "session";

  {
    auto path = require_path("gaze");
    csv::Table t(read_file(path), {"t", "x", "y"}, path.string());
    s.gaze.reserve(t.size());
    for (std::size_t r = 0; r < t.size(); ++r) {
      GazeSample g;
      g.t = tc(t.number(r, "t"));
      g.x = t.number(r, "x") * xscale;
      g.y = t.number(r, "y") * yscale;
      g.confidence = t.optional_number(r, "confidence");
      s.gaze.push_back(g);
    }
  }
  {
    auto path = require_path("fixations");
    csv::Table t(read_file(path), {"id", "t_start", "t_end", "x", "y"}, path.string());
    s.fixations.reserve(t.size());
    for (std::size_t r = 0; r < t.size(); ++r) {
      Fixation f;
      f.id = t.text(r, "id");
      f.t_start = tc(t.number(r, "t_start"));
      f.t_end = tc(t.number(r, "t_end"));
      f.x = t.number(r, "x") * xscale;
      f.y = t.number(r, "y") * yscale;
      if (!(f.t_start < f.t_end))
        fail(ErrorKind::OrderingError, t.where(r) + ": fixation '" + f.id + "' has t_end <= t_start", f.id);
      s.fixations.push_back(std::move(f));
    }
  }
  {
    auto path = require_path("queries");
    json qs = detail::parse_json_file(path);
    if (!qs.is_array()) fail(ErrorKind::SchemaError, path.string() + ": expected an array");
    for (const auto& item : qs) {
      QuerySpan q;
      q.id = detail::json_string(item, "id", path.string());
      q.t_start = tc(detail::json_number(item, "t_start", path.string()));
      q.t_end = tc(detail::json_number(item, "t_end", path.string()));
      if (item.contains("audio") && item.at("audio").is_string()) q.audio_ref = item.at("audio").get<std::string>();
      s.queries.push_back(std::move(q));
    }
  }
  {
    auto path = require_path("transcript");
    json tr = detail::parse_json_file(path);
    if (!tr.is_object()) fail(ErrorKind::SchemaError, path.string() + ": expected an object keyed by query id");
    for (const auto& [qid, words] : tr.items()) {
      QuerySpan* q = nullptr;
      for (auto& cand : s.queries)
        if (cand.id == qid) q = &cand;
      if (!q) fail(ErrorKind::DanglingReference, "transcript references unknown query '" + qid + "'", qid);
      if (!words.is_array()) fail(ErrorKind::SchemaError, path.string() + ": words for '" + qid + "' must be an array");
      std::size_t j = 0;
      for (const auto& w : words) {
        TimedWord tw;
        tw.text = detail::json_string(w, "text", path.string());
        tw.t_start = tc(detail::json_number(w, "t_start", path.string()));
        tw.t_end = tc(detail::json_number(w, "t_end", path.string()));
        tw.index = j++;
        tw.is_pronoun = lexicon.contains(tw.text);
        q->words.push_back(std::move(tw));
      }
    }
  }
  {
    auto path = require_path("frames");
    csv::Table t(read_file(path), {"t", "uri", "width", "height"}, path.string());
    for (std::size_t r = 0; r < t.size(); ++r) {
      FrameRef fr;
      fr.t = tc(t.number(r, "t"));
      fr.uri = t.text(r, "uri");
      fr.width = static_cast<int>(t.number(r, "width"));
      fr.height = static_cast<int>(t.number(r, "height"));
      fr.sharpness = t.optional_number(r, "sharpness");
      s.frames.push_back(std::move(fr));
    }
  }
  if (auto path = optional_path("labels")) {
    json ls = detail::parse_json_file(*path);
    if (!ls.is_array()) fail(ErrorKind::SchemaError, path->string() + ": expected an array");
    RelevanceLabels labels;
    for (const auto& item : ls) {
      auto qid = detail::json_string(item, "query", path->string());
      auto fid = detail::json_string(item, "fixation", path->string());
      double rel = detail::json_number(item, "relevant", path->string());
      if (rel != 0 && rel != 1) fail(ErrorKind::SchemaError, path->string() + ": relevant must be 0 or 1", "relevant");
      labels.set(qid, fid, rel == 1);
    }
    s.labels = std::move(labels);
  }
  if (auto path = optional_path("truth")) s.truth = load_truth(*path);

  validate(s);
  return s;
}

// ---------------------------------------------------------------------------
// Saving

inline json truth_to_json(const GroundTruth& truth) {
  json tj = json::object();
  for (const auto& [qid, names] : truth.entries) tj[qid] = json(std::vector<std::string>(names.begin(), names.end()));
  json syn = json::array();
  for (const auto& g : truth.synonym_groups) syn.push_back(std::vector<std::string>(g.begin(), g.end()));
  tj["synonyms"] = syn;
  return tj;
}

/// Writes the session in canonical form (seconds, normalized coordinates)
/// under `dir`. Output is byte-stable for a given Session.
inline fs::path save_session(const Session& s, const fs::path& dir) {
  fs::create_directories(dir);
  json manifest = {{"id", s.id},
                   {"gaze", "gaze.csv"},
                   {"fixations", "fixations.csv"},
                   {"transcript", "transcript.json"},
                   {"queries", "queries.json"},
                   {"frames", "frames.csv"}};

  std::string gaze = "t,x,y,confidence\n";
  for (const auto& g : s.gaze) {
    gaze += format_number(g.t) + "," + format_number(g.x) + "," + format_number(g.y) + ",";
    if (g.confidence) gaze += format_number(*g.confidence);
    gaze += "\n";
  }
  write_file(dir / "gaze.csv", gaze);

  std::string fix = "id,t_start,t_end,x,y\n";
  for (const auto& f : s.fixations)
    fix += csv::quote(f.id) + "," + format_number(f.t_start) + "," + format_number(f.t_end) + "," +
           format_number(f.x) + "," + format_number(f.y) + "\n";
  write_file(dir / "fixations.csv", fix);

  json queries = json::array();
  json transcript = json::object();
  for (const auto& q : s.queries) {
    json item = {{"id", q.id}, {"t_start", q.t_start}, {"t_end", q.t_end}};
    if (q.audio_ref) item["audio"] = *q.audio_ref;
    queries.push_back(item);
    if (!q.words.empty()) {
      json words = json::array();
      for (const auto& w : q.words) words.push_back({{"text", w.text}, {"t_start", w.t_start}, {"t_end", w.t_end}});
      transcript[q.id] = words;
    }
  }
  write_file(dir / "queries.json", queries.dump(1) + "\n");
  write_file(dir / "transcript.json", transcript.dump(1) + "\n");

  bool any_sharp = std::any_of(s.frames.begin(), s.frames.end(), [](const FrameRef& f) { return f.sharpness.has_value(); });
  std::string frames = any_sharp ? "t,uri,width,height,sharpness\n" : "t,uri,width,height\n";
  for (const auto& fr : s.frames) {
    frames += format_number(fr.t) + "," + csv::quote(fr.uri) + "," + std::to_string(fr.width) + "," +
              std::to_string(fr.height);
    if (any_sharp) {
      frames += ",";
      if (fr.sharpness) frames += format_number(*fr.sharpness);
    }
    frames += "\n";
  }
  write_file(dir / "frames.csv", frames);

  if (s.labels) {
    json ls = json::array();
    for (const auto& [key, rel] : s.labels->entries())
      ls.push_back({{"query", key.first}, {"fixation", key.second}, {"relevant", rel ? 1 : 0}});
    write_file(dir / "labels.json", ls.dump(1) + "\n");
    manifest["labels"] = "labels.json";
  }
  if (s.truth) {
    write_file(dir / "truth.json", truth_to_json(*s.truth).dump(1) + "\n");
    manifest["truth"] = "truth.json";
  }
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  return dir / "manifest.json";
}

}  // namespace gazeq

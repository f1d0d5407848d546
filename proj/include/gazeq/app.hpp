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

// Command-line front end: synth, analyze, localize, respond, eval, replay.
//
// Exit codes: 0 success, 1 domain error (one JSON object on the error
// stream), 2 usage error. Data goes to files; logs go to the error stream as
// JSON lines.

#pragma once

#include <algorithm>
#include <chrono>
#include <exception>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gazeq/analytics.hpp"
#include "gazeq/backends.hpp"
#include "gazeq/error.hpp"
#include "gazeq/evaluation.hpp"
#include "gazeq/pipeline.hpp"
#include "gazeq/prompt.hpp"
#include "gazeq/session.hpp"
#include "gazeq/synth.hpp"
#include "gazeq/util.hpp"

namespace gazeq::app {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kManifestName = "run_manifest.json";

// ---------------------------------------------------------------------------
// Logging

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

class Logger {
 public:
  Logger(std::ostream& err, LogLevel level) : err_(&err), level_(level) {}

  void log(LogLevel level, std::string_view msg, json fields = json::object()) {
    if (level > level_) return;
    static constexpr const char* names[] = {"error", "warn", "info", "debug"};
    fields["level"] = names[static_cast<int>(level)];
    fields["msg"] = msg;
    std::lock_guard lock(mu_);
    *err_ << fields.dump() << '\n';
  }
  void info(std::string_view msg, json fields = json::object()) { log(LogLevel::Info, msg, std::move(fields)); }
  void warn(std::string_view msg, json fields = json::object()) { log(LogLevel::Warn, msg, std::move(fields)); }

 private:
  std::ostream* err_;
  LogLevel level_;
  std::mutex mu_;
};

// ---------------------------------------------------------------------------
// Run manifest

/// Content hash of a file, or of a directory's files (relative path + hash,
/// sorted).
inline std::string hash_path(const fs::path& p) {
  if (fs::is_regular_file(p)) return content_hash(read_file(p));
  if (!fs::is_directory(p)) return "";
  std::vector<std::string> lines;
  for (const auto& e : fs::recursive_directory_iterator(p))
    if (e.is_regular_file()) lines.push_back(fs::relative(e.path(), p).generic_string() + " " + content_hash(read_file(e.path())));
  std::sort(lines.begin(), lines.end());
  std::string all;
  for (const auto& l : lines) all += l + "\n";
  return content_hash(all);
}

struct RunManifest {
  std::string subcommand;
  json config = json::object();
  json inputs = json::object();
  std::vector<std::string> outputs;
  double wall_time_s = 0;

  void add_input(const fs::path& p) { inputs[p.generic_string()] = hash_path(p); }

  json to_json() const {
    return {{"tool", "gazeq"},
            {"version", std::string(kVersion)},
            {"subcommand", subcommand},
            {"config", config},
            {"inputs", inputs},
            {"outputs", outputs},
            {"wall_time_s", wall_time_s}};
  }
};

// ---------------------------------------------------------------------------
// Helpers

/// Runs fn(0..n-1) on up to `jobs` threads. The exception of the lowest
/// failing index is rethrown.
template <typename F>
void parallel_for(std::size_t n, std::size_t jobs, F&& fn) {
  std::vector<std::exception_ptr> errors(n);
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
        break;
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(jobs, n); ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      if (!trim(cur).empty()) out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  return out;
}

inline std::vector<std::string> expand_variants(const std::vector<std::string>& requested) {
  std::vector<std::string> out;
  for (const auto& r : requested)
    for (const auto& v : split_list(r)) {
      if (v == "all") {
        for (const auto& n : variant_names())
          if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
        continue;
      }
      make_variant(v);  // validates the name
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
  if (out.empty()) fail(ErrorKind::UsageError, "no variant selected");
  return out;
}

/// Result files under `dir`, sorted, skipping run manifests.
inline std::vector<fs::path> result_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) fail(ErrorKind::MissingFile, "results directory not found: " + dir.string(), dir.string());
  std::vector<fs::path> out;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json" && e.path().filename() != kManifestName)
      out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

inline json read_json(const fs::path& p) {
  try {
    return json::parse(read_file(p));
  } catch (const json::parse_error& e) {
    fail(ErrorKind::SchemaError, p.string() + ": " + e.what(), p.string());
  }
}

inline std::string dump_result(const json& j) { return j.dump(2) + "\n"; }

inline std::string opt_cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

/// Global config: top-level keys apply to every subcommand, a table named
/// after the subcommand overrides them. Explicit flags win over both.
class Settings {
 public:
  Settings() = default;
  explicit Settings(json root) : root_(std::move(root)) {}

  static Settings load(const fs::path& p) {
    if (!fs::exists(p)) fail(ErrorKind::ConfigError, "config file not found: " + p.string(), p.string());
    if (p.extension() == ".json") {
      try {
        return Settings(json::parse(read_file(p)));
      } catch (const json::parse_error& e) {
        fail(ErrorKind::ConfigError, p.string() + ": " + e.what(), p.string());
      }
    }
    return Settings(detail::parse_toml_subset(read_file(p), p.string()));
  }

  const json* find(const std::string& sub, const std::string& key) const {
    if (root_.contains(sub) && root_.at(sub).is_object() && root_.at(sub).contains(key)) return &root_.at(sub).at(key);
    if (root_.contains(key) && !root_.at(key).is_object()) return &root_.at(key);
    return nullptr;
  }

  template <typename T>
  void merge(const CLI::Option* opt, T& value, const std::string& sub, const std::string& key) const {
    if (opt && opt->count() > 0) return;
    if (const json* v = find(sub, key)) {
      try {
        if constexpr (std::is_same_v<T, std::vector<std::string>>) {
          // A list option also accepts one comma-separated string.
          if (v->is_string()) {
            value = split_list(v->get<std::string>());
            return;
          }
        }
        value = v->get<T>();
      } catch (const json::exception&) {
        fail(ErrorKind::ConfigError, "config key '" + key + "' has the wrong type", key);
      }
    }
  }

 private:
  json root_ = json::object();
};

// ---------------------------------------------------------------------------
// Subcommands

struct Context {
  std::ostream& out;
  std::ostream& err;
  Logger& log;
  std::uint64_t seed = 0;
  bool seed_given = false;
  RunManifest manifest;
};

struct SynthArgs {
  std::string config;
  std::string out;
  std::optional<std::size_t> queries;
};

inline void run_synth(Context& ctx, const SynthArgs& a) {
  SynthConfig cfg;
  if (!a.config.empty()) {
    cfg = synth_config_from_json(read_json(a.config));
    ctx.manifest.add_input(a.config);
  }
  if (ctx.seed_given) cfg.seed = ctx.seed;
  if (a.queries) cfg.query_count = *a.queries;
  cfg.validate();
  auto result = generate(cfg);
  fs::path out = a.out;
  save_session(result.session, out);
  write_file(out / "plant_record.json", to_json(result.record).dump(1) + "\n");
  ctx.manifest.config = to_json(cfg);
  for (const auto* f : {"manifest.json", "gaze.csv", "fixations.csv", "queries.json", "transcript.json", "frames.csv",
                        "labels.json", "truth.json", "plant_record.json"})
    ctx.manifest.outputs.push_back((out / f).generic_string());
  ctx.log.info("synthesized session", {{"queries", cfg.query_count}, {"fixations", result.session.fixations.size()}});
}

struct AnalyzeArgs {
  std::vector<std::string> sessions;
  std::string out = "analysis";
  std::string lexicon;
  int window = 5;
  int radius = 3;
  double cap = kPreQuerySeconds;
};

inline std::vector<Session> load_sessions(Context& ctx, const std::vector<std::string>& paths, const std::string& lexicon) {
  LoadOptions opts;
  if (!lexicon.empty()) {
    opts.lexicon = PronounLexicon::from_file(lexicon);
    ctx.manifest.add_input(lexicon);
  }
  std::vector<Session> out;
  for (const auto& p : paths) {
    ctx.manifest.add_input(p);
    out.push_back(load_session(p, opts));
  }
  return out;
}

inline void run_analyze(Context& ctx, const AnalyzeArgs& a) {
  auto sessions = detail::staged("load", [&] { return load_sessions(ctx, a.sessions, a.lexicon); });
  fs::path out = a.out;
  fs::create_directories(out);

  auto rel = duration_profile(sessions, true, a.radius, a.cap);
  auto irr = duration_profile(sessions, false, a.radius, a.cap);
  std::string dp = "k,relevant_mean,relevant_count,irrelevant_mean,irrelevant_count\n";
  for (int k = -a.radius; k <= a.radius; ++k) {
    auto cell = [&](const DurationProfile& p) {
      auto it = p.bins.find(k);
      if (it == p.bins.end()) return std::string(",0");
      return format_number(it->second.mean()) + "," + std::to_string(it->second.count);
    };
    dp += std::to_string(k) + "," + cell(rel) + "," + cell(irr) + "\n";
  }
  write_file(out / "duration_profile.csv", dp);

  auto co = pronoun_cooccurrence(sessions, a.window);
  std::string cc = "r,c,c_all,p\n";
  for (const auto& s : co.slots)
    cc += std::to_string(s.r) + "," + std::to_string(s.c) + "," + std::to_string(s.c_all) + "," + opt_cell(s.p()) + "\n";
  write_file(out / "cooccurrence.csv", cc);

  std::string rd = "session_id,query_id,index,fixation_id,duration,relevant\n";
  for (const auto& p : relevancy_distribution(sessions, a.cap))
    rd += csv::quote(p.session_id) + "," + csv::quote(p.query_id) + "," + std::to_string(p.index) + "," +
          csv::quote(p.fixation_id) + "," + format_number(p.duration) + "," + (p.relevant ? "1" : "0") + "\n";
  write_file(out / "relevancy.csv", rd);

  std::string st = "session_id,query_id,startup,fixation_id\n";
  std::vector<StartupResult> all;
  for (const auto& s : sessions) {
    const auto& labels = detail::require_labels(s);
    for (const auto& q : s.queries) {
      auto r = startup_time(q, s.fixations, labels, a.cap);
      st += csv::quote(s.id) + "," + csv::quote(q.id) + "," + opt_cell(r.startup) + "," +
            (r.source_fixation ? csv::quote(*r.source_fixation) : std::string()) + "\n";
      all.push_back(std::move(r));
    }
  }
  write_file(out / "startup.csv", st);

  std::size_t n_queries = 0, n_fix = 0;
  for (const auto& s : sessions) {
    n_queries += s.queries.size();
    n_fix += s.fixations.size();
  }
  json summary = {{"sessions", sessions.size()},
                  {"queries", n_queries},
                  {"fixations", n_fix},
                  {"pronouns", co.pronouns},
                  {"duration_profile", {{"radius", a.radius}, {"relevant_anchored", rel.anchored}, {"irrelevant_anchored", irr.anchored}}},
                  {"cooccurrence_window", a.window},
                  {"startup_cap", a.cap}};
  json stats = nullptr;
  std::size_t defined = static_cast<std::size_t>(std::count_if(all.begin(), all.end(), [](const auto& r) { return r.startup.has_value(); }));
  if (defined > 0) {
    auto s = startup_stats(all);
    stats = {{"mean", s.mean}, {"median", s.median}, {"defined", s.defined}, {"undefined", s.undefined}};
  } else {
    stats = {{"mean", nullptr}, {"median", nullptr}, {"defined", 0}, {"undefined", all.size()}};
  }
  summary["startup"] = stats;
  write_file(out / "summary.json", summary.dump(2) + "\n");

  ctx.manifest.config = {{"window", a.window}, {"radius", a.radius}, {"cap", a.cap}, {"out", a.out}};
  for (const auto* f : {"duration_profile.csv", "cooccurrence.csv", "relevancy.csv", "startup.csv", "summary.json"})
    ctx.manifest.outputs.push_back((out / f).generic_string());
}

struct PipelineArgs {
  std::string session;
  std::vector<std::string> variants{"VOILA-G"};
  std::vector<std::string> queries;
  std::string backends;
  std::string out;
  std::string template_path;
  std::string record_log;
  std::string record_fixtures;
  std::size_t jobs = 1;
  std::size_t k = 3;
  double tau = 5.0;
};

inline Backends build_backends(Context& ctx, const PipelineArgs& a) {
  Backends b;
  if (!a.backends.empty()) {
    ctx.manifest.add_input(a.backends);
    b = load_backends(a.backends);
  }
  if (!a.record_log.empty() || !a.record_fixtures.empty()) {
    std::shared_ptr<RecordLog> log;
    if (!a.record_log.empty()) log = std::make_shared<RecordLog>(a.record_log);
    b.record(log, a.record_fixtures.empty() ? std::nullopt : std::optional<fs::path>(a.record_fixtures));
  }
  return b;
}

inline PipelineOptions pipeline_options(Context& ctx, const PipelineArgs& a) {
  PipelineOptions o;
  o.key_frames.k = a.k;
  o.key_frames.tau = a.tau;
  if (!a.template_path.empty()) {
    ctx.manifest.add_input(a.template_path);
    o.prompt_template = PromptTemplate::from_file(a.template_path);
  }
  return o;
}

inline std::vector<std::string> selected_queries(const Session& s, const std::vector<std::string>& requested) {
  std::vector<std::string> out;
  if (requested.empty()) {
    for (const auto& q : s.queries) out.push_back(q.id);
    return out;
  }
  for (const auto& r : requested)
    for (const auto& id : split_list(r)) {
      s.query(id);
      out.push_back(id);
    }
  return out;
}

inline json pipeline_config(const PipelineArgs& a, std::uint64_t seed, const std::vector<std::string>& variants) {
  return {{"session", a.session}, {"variants", variants},  {"queries", a.queries}, {"backends", a.backends},
          {"out", a.out},         {"template", a.template_path}, {"jobs", a.jobs},   {"k", a.k},
          {"tau", a.tau},         {"seed", seed}};
}

inline void run_localize(Context& ctx, const PipelineArgs& a) {
  auto variants = expand_variants(a.variants);
  Session session = detail::staged("load", [&] {
    ctx.manifest.add_input(a.session);
    return load_session(a.session);
  });
  Backends backends = build_backends(ctx, a);
  PipelineOptions opts = pipeline_options(ctx, a);
  auto queries = selected_queries(session, a.queries);
  fs::path out = a.out.empty() ? fs::path("localization") : fs::path(a.out);
  ctx.manifest.config = pipeline_config(a, ctx.seed, variants);

  std::vector<std::pair<std::string, std::string>> jobs;
  for (const auto& v : variants)
    for (const auto& q : queries) jobs.emplace_back(v, q);
  for (const auto& v : variants) {
    auto vc = make_variant(v, ctx.seed);
    for (Role r : required_roles(vc, session.queries.front()))
      if (r != Role::Captioner && r != Role::Responder && r != Role::Transcriber && !backends.has(r))
        fail(ErrorKind::ConfigError, "variant " + v + " requires a " + std::string(to_string(r)) + " backend",
             std::string(to_string(r)));
  }
  std::mutex mu;
  parallel_for(jobs.size(), a.jobs, [&](std::size_t i) {
    const auto& [v, qid] = jobs[i];
    auto vc = make_variant(v, ctx.seed);
    QuerySpan q = with_transcript(session, session.query(qid), backends);
    SharpnessCache sharp(session);
    auto loc = localize_query(session, q, vc, backends, sharp.fn(), opts);
    json rec = {{"variant", v}, {"query_id", qid}, {"session_id", session.id}, {"seed", ctx.seed}};
    rec["localization"] = localization_record(loc);
    fs::path p = out / v / (qid + ".json");
    write_file(p, dump_result(rec));
    std::lock_guard lock(mu);
    ctx.manifest.outputs.push_back(p.generic_string());
  });
  std::sort(ctx.manifest.outputs.begin(), ctx.manifest.outputs.end());
}

inline void run_respond(Context& ctx, const PipelineArgs& a) {
  auto variants = expand_variants(a.variants);
  Session session = detail::staged("load", [&] {
    ctx.manifest.add_input(a.session);
    return load_session(a.session);
  });
  Backends backends = build_backends(ctx, a);
  PipelineOptions opts = pipeline_options(ctx, a);
  auto queries = selected_queries(session, a.queries);
  fs::path out = a.out.empty() ? fs::path("results") : fs::path(a.out);
  ctx.manifest.config = pipeline_config(a, ctx.seed, variants);

  // Missing roles fail before any backend call.
  for (const auto& v : variants)
    for (const auto& qid : queries) check_roles(backends, make_variant(v, ctx.seed), session.query(qid));

  std::vector<std::pair<std::string, std::string>> jobs;
  for (const auto& v : variants)
    for (const auto& q : queries) jobs.emplace_back(v, q);
  std::mutex mu;
  parallel_for(jobs.size(), a.jobs, [&](std::size_t i) {
    const auto& [v, qid] = jobs[i];
    auto result = run_query(session, qid, make_variant(v, ctx.seed), backends, opts, a.session);
    fs::path p = out / v / (qid + ".json");
    write_file(p, dump_result(result_to_json(result)));
    json lat = result.trace.latencies_ms;
    ctx.log.info("query done", {{"variant", v}, {"query_id", qid}, {"latency_ms", lat}});
    std::lock_guard lock(mu);
    ctx.manifest.outputs.push_back(p.generic_string());
  });
  std::sort(ctx.manifest.outputs.begin(), ctx.manifest.outputs.end());
}

struct EvalArgs {
  std::string results;
  std::string truth;
  std::string out = "report";
  std::string scope = "answer,query";
  std::size_t jobs = 1;
};

inline unsigned parse_scope(const std::string& s) {
  unsigned scope = 0;
  for (const auto& part : split_list(s)) {
    if (part == "thought") scope |= kMatchThought;
    else if (part == "answer") scope |= kMatchAnswer;
    else if (part == "query") scope |= kMatchQuery;
    else fail(ErrorKind::UsageError, "unknown match scope '" + part + "'", part);
  }
  if (!scope) fail(ErrorKind::UsageError, "empty match scope");
  return scope;
}

/// Scores every result file under `results` against `truth`.
inline std::vector<EvalRecord> evaluate_results(const fs::path& results, const GroundTruth& truth, unsigned scope,
                                                std::size_t jobs = 1) {
  auto files = result_files(results);
  Vocabulary vocab(truth);
  std::vector<std::optional<EvalRecord>> recs(files.size());
  parallel_for(files.size(), jobs, [&](std::size_t i) {
    json j = read_json(files[i]);
    if (!j.contains("response") || !j.contains("variant")) return;
    AssistantResponse r;
    try {
      r.thought = j.at("response").at("thought").get<std::string>();
      r.answer = j.at("response").at("answer").get<std::string>();
      r.query = j.at("response").at("query").get<std::string>();
    } catch (const json::exception& e) {
      fail(ErrorKind::SchemaError, files[i].string() + ": " + e.what(), files[i].string());
    }
    std::string qid = j.at("query_id").get<std::string>();
    std::string text = j.contains("trace") ? j.at("trace").value("query_text", std::string()) : std::string();
    auto it = truth.entries.find(qid);
    std::set<std::string> t = it == truth.entries.end() ? std::set<std::string>{} : it->second;
    recs[i] = evaluate_response(qid, j.at("variant").get<std::string>(), text, r, t, vocab, scope);
  });
  std::vector<EvalRecord> out;
  for (auto& r : recs)
    if (r) out.push_back(std::move(*r));
  return out;
}

inline void run_eval(Context& ctx, const EvalArgs& a) {
  unsigned scope = parse_scope(a.scope);
  ctx.manifest.add_input(a.truth);
  ctx.manifest.add_input(a.results);
  GroundTruth truth = load_truth(a.truth);
  auto records = evaluate_results(a.results, truth, scope, a.jobs);
  if (records.empty()) fail(ErrorKind::EmptyInput, "no result files under " + a.results, a.results);
  auto report = aggregate(records);
  fs::path stem = a.out;
  if (stem.extension() == ".json" || stem.extension() == ".csv") stem.replace_extension();
  fs::path jp = stem, cp = stem;
  jp += ".json";
  cp += ".csv";
  write_file(jp, to_json(report, records).dump(2) + "\n");
  write_file(cp, report_to_csv(report));
  ctx.manifest.config = {{"results", a.results}, {"truth", a.truth}, {"out", a.out}, {"scope", a.scope}, {"jobs", a.jobs}};
  ctx.manifest.outputs = {jp.generic_string(), cp.generic_string()};
}

struct ReplayArgs {
  std::string trace;
  std::string fixtures;
  std::string session;  // overrides the path recorded in each trace
  std::string template_path;
  std::string out = "replay";
};

namespace detail {

inline std::string first_difference(const json& a, const json& b, const std::string& path = "") {
  if (a.type() != b.type()) return path.empty() ? "<root>" : path;
  if (a.is_object()) {
    std::set<std::string> keys;
    for (auto& [k, v] : a.items()) keys.insert(k);
    for (auto& [k, v] : b.items()) keys.insert(k);
    for (const auto& k : keys) {
      std::string sub = path.empty() ? k : path + "." + k;
      if (!a.contains(k) || !b.contains(k)) return sub;
      auto d = first_difference(a.at(k), b.at(k), sub);
      if (!d.empty()) return d;
    }
    return "";
  }
  if (a.is_array()) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      auto d = first_difference(a.at(i), b.at(i), path + "[" + std::to_string(i) + "]");
      if (!d.empty()) return d;
    }
    return a.size() == b.size() ? "" : path + ".size";
  }
  return a == b ? "" : (path.empty() ? "<root>" : path);
}

}  // namespace detail

/// Fixture-only backends with the roles and parameters a trace recorded.
inline Backends replay_backends(const json& trace_backends, const fs::path& fixtures) {
  Backends b;
  for (auto& [name, params] : trace_backends.items()) {
    BackendDescriptor d;
    d.role = role_from_string(name);
    d.kind = BackendKind::Fixture;
    d.fixture_dir = fixtures;
    d.parameters = params;
    b.set(d, Backends::make_client(d));
  }
  return b;
}

inline void run_replay(Context& ctx, const ReplayArgs& a) {
  auto files = result_files(a.trace);
  ctx.manifest.add_input(a.trace);
  ctx.manifest.add_input(a.fixtures);
  if (!fs::is_directory(a.fixtures)) fail(ErrorKind::MissingFile, "fixture directory not found: " + a.fixtures, a.fixtures);
  PipelineOptions opts;
  if (!a.template_path.empty()) opts.prompt_template = PromptTemplate::from_file(a.template_path);
  std::map<std::string, Session> sessions;
  std::vector<std::string> divergent;
  std::size_t replayed = 0;
  fs::path out = a.out;
  for (const auto& f : files) {
    std::string original = read_file(f);
    json orig = read_json(f);
    if (!orig.contains("trace")) continue;
    const json& tr = orig.at("trace");
    std::string spath = a.session.empty() ? tr.at("session").get<std::string>() : a.session;
    auto it = sessions.find(spath);
    if (it == sessions.end()) it = sessions.emplace(spath, load_session(spath)).first;
    Backends b = replay_backends(tr.value("backends", json::object()), a.fixtures);
    auto variant = make_variant(tr.at("variant").get<std::string>(), tr.at("seed").get<std::uint64_t>());
    auto result = run_query(it->second, tr.at("query_id").get<std::string>(), variant, b, opts,
                            tr.at("session").get<std::string>());
    std::string regenerated = dump_result(result_to_json(result));
    fs::path p = out / fs::relative(f, a.trace);
    write_file(p, regenerated);
    ctx.manifest.outputs.push_back(p.generic_string());
    ++replayed;
    if (regenerated != original) {
      std::string where = detail::first_difference(orig, json::parse(regenerated));
      divergent.push_back(variant.name + "/" + result.trace.query_id + " (" + where + ")");
    }
  }
  ctx.manifest.config = {{"trace", a.trace}, {"fixtures", a.fixtures}, {"session", a.session}, {"out", a.out}};
  if (replayed == 0) fail(ErrorKind::EmptyInput, "no traces under " + a.trace, a.trace);
  if (!divergent.empty()) {
    std::string list;
    for (const auto& d : divergent) list += (list.empty() ? "" : ", ") + d;
    fail(ErrorKind::DivergenceDetected, std::to_string(divergent.size()) + " of " + std::to_string(replayed) +
                                            " replayed outputs differ: " + list, list);
  }
  ctx.log.info("replay identical", {{"files", replayed}});
}

// ---------------------------------------------------------------------------
// Dispatch

inline json error_json(const Error& e, const std::string& subcommand) {
  return {{"error", std::string(to_string(e.kind()))},
          {"message", e.message()},
          {"detail", e.detail()},
          {"stage", e.stage()},
          {"subcommand", subcommand}};
}

inline int dispatch(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"gazeq: gaze-assisted query disambiguation toolkit", "gazeq"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::string config_path;
  std::uint64_t seed = 0;
  std::string log_level = "warn";
  app.add_option("--config", config_path, "Global config file (.toml or .json); flags win over it");
  auto* seed_opt = app.add_option("--seed", seed, "Run seed")->default_val(0);
  app.add_option("--log-level", log_level, "error|warn|info|debug")->check(CLI::IsMember({"error", "warn", "info", "debug"}));

  SynthArgs synth;
  auto* c_synth = app.add_subcommand("synth", "Generate a synthetic session")->fallthrough();
  c_synth->add_option("--config", synth.config, "Synth config JSON");
  auto* synth_out = c_synth->add_option("--out", synth.out, "Output session directory");
  c_synth->add_option("--queries", synth.queries, "Override query_count");

  AnalyzeArgs an;
  auto* c_an = app.add_subcommand("analyze", "Gaze-voice coordination analytics")->fallthrough();
  auto* an_session = c_an->add_option("--session", an.sessions, "Session directory or manifest (repeatable)");
  auto* an_out = c_an->add_option("--out", an.out, "Output directory")->capture_default_str();
  auto* an_lex = c_an->add_option("--lexicon", an.lexicon, "Pronoun lexicon file");
  auto* an_window = c_an->add_option("--window", an.window, "Co-occurrence offset range")->check(CLI::NonNegativeNumber);
  auto* an_radius = c_an->add_option("--radius", an.radius, "Duration-profile radius")->check(CLI::NonNegativeNumber);
  auto* an_cap = c_an->add_option("--cap", an.cap, "Startup cap in seconds")->check(CLI::PositiveNumber);

  PipelineArgs loc, resp;
  auto add_pipeline = [](CLI::App* c, PipelineArgs& p, std::map<std::string, CLI::Option*>& opts) {
    opts["session"] = c->add_option("--session", p.session, "Session directory or manifest");
    opts["variant"] = c->add_option("--variant", p.variants, "Variant name, comma list, or 'all'");
    opts["query"] = c->add_option("--query", p.queries, "Query id(s); default all");
    opts["backends"] = c->add_option("--backends", p.backends, "Backend config (.toml or .json)");
    opts["out"] = c->add_option("--out", p.out, "Output directory");
    opts["template"] = c->add_option("--template", p.template_path, "Prompt template file");
    opts["record"] = c->add_option("--record", p.record_log, "Append backend traffic to this JSONL log");
    opts["record_fixtures"] = c->add_option("--record-fixtures", p.record_fixtures, "Write fixtures for every backend call");
    opts["jobs"] = c->add_option("--jobs", p.jobs, "Query-level parallelism")->check(CLI::PositiveNumber);
    opts["k"] = c->add_option("--k", p.k, "Frames per query")->check(CLI::PositiveNumber);
    opts["tau"] = c->add_option("--tau", p.tau, "Key-frame time constant (s)")->check(CLI::PositiveNumber);
  };
  std::map<std::string, CLI::Option*> loc_opts, resp_opts;
  auto* c_loc = app.add_subcommand("localize", "Temporal and spatial localization only")->fallthrough();
  add_pipeline(c_loc, loc, loc_opts);
  auto* c_resp = app.add_subcommand("respond", "Full pipeline for one or more variants")->fallthrough();
  add_pipeline(c_resp, resp, resp_opts);

  EvalArgs ev;
  auto* c_eval = app.add_subcommand("eval", "Score responses against truth")->fallthrough();
  auto* ev_results = c_eval->add_option("--results", ev.results, "Results directory");
  auto* ev_truth = c_eval->add_option("--truth", ev.truth, "Truth JSON");
  auto* ev_out = c_eval->add_option("--out", ev.out, "Report path stem; writes .json and .csv");
  auto* ev_scope = c_eval->add_option("--scope", ev.scope, "Match scope: thought,answer,query");
  auto* ev_jobs = c_eval->add_option("--jobs", ev.jobs, "Parallel scoring")->check(CLI::PositiveNumber);

  ReplayArgs rp;
  auto* c_rp = app.add_subcommand("replay", "Re-run recorded traces against fixtures")->fallthrough();
  auto* rp_trace = c_rp->add_option("--trace", rp.trace, "Directory of result files");
  auto* rp_fix = c_rp->add_option("--fixtures", rp.fixtures, "Fixture directory");
  auto* rp_session = c_rp->add_option("--session", rp.session, "Override the session path recorded in traces");
  c_rp->add_option("--template", rp.template_path, "Prompt template file");
  auto* rp_out = c_rp->add_option("--out", rp.out, "Directory for regenerated outputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  static constexpr LogLevel levels[] = {LogLevel::Error, LogLevel::Warn, LogLevel::Info, LogLevel::Debug};
  static const std::vector<std::string> level_names = {"error", "warn", "info", "debug"};
  Logger logger(err, levels[std::find(level_names.begin(), level_names.end(), log_level) - level_names.begin()]);
  Context ctx{out, err, logger, seed, seed_opt->count() > 0, {}};
  ctx.manifest.subcommand = name;
  auto started = std::chrono::steady_clock::now();

  auto usage = [&](const std::string& msg) {
    err << msg << "\n" << sub->help();
    return 2;
  };

  try {
    Settings settings;
    if (!config_path.empty()) {
      settings = Settings::load(config_path);
      ctx.manifest.add_input(config_path);
    }
    if (!ctx.seed_given) {
      if (const json* v = settings.find(name, "seed")) {
        ctx.seed = v->get<std::uint64_t>();
        ctx.seed_given = true;
      }
    }

    fs::path manifest_dir;
    if (name == "synth") {
      settings.merge(synth_out, synth.out, name, "out");
      if (synth.out.empty()) return usage("synth: --out is required");
      run_synth(ctx, synth);
      manifest_dir = synth.out;
    } else if (name == "analyze") {
      settings.merge(an_session, an.sessions, name, "session");
      settings.merge(an_out, an.out, name, "out");
      settings.merge(an_lex, an.lexicon, name, "lexicon");
      settings.merge(an_window, an.window, name, "window");
      settings.merge(an_radius, an.radius, name, "radius");
      settings.merge(an_cap, an.cap, name, "cap");
      if (an.sessions.empty()) return usage("analyze: --session is required");
      run_analyze(ctx, an);
      manifest_dir = an.out;
    } else if (name == "localize" || name == "respond") {
      PipelineArgs& p = name == "localize" ? loc : resp;
      auto& o = name == "localize" ? loc_opts : resp_opts;
      settings.merge(o["session"], p.session, name, "session");
      settings.merge(o["variant"], p.variants, name, "variant");
      settings.merge(o["query"], p.queries, name, "query");
      settings.merge(o["backends"], p.backends, name, "backends");
      settings.merge(o["out"], p.out, name, "out");
      settings.merge(o["template"], p.template_path, name, "template");
      settings.merge(o["record"], p.record_log, name, "record");
      settings.merge(o["record_fixtures"], p.record_fixtures, name, "record_fixtures");
      settings.merge(o["jobs"], p.jobs, name, "jobs");
      settings.merge(o["k"], p.k, name, "k");
      settings.merge(o["tau"], p.tau, name, "tau");
      if (p.session.empty()) return usage(name + ": --session is required");
      if (p.out.empty()) p.out = name == "localize" ? "localization" : "results";
      if (name == "localize") run_localize(ctx, p);
      else run_respond(ctx, p);
      manifest_dir = p.out;
    } else if (name == "eval") {
      settings.merge(ev_results, ev.results, name, "results");
      settings.merge(ev_truth, ev.truth, name, "truth");
      settings.merge(ev_out, ev.out, name, "out");
      settings.merge(ev_scope, ev.scope, name, "scope");
      settings.merge(ev_jobs, ev.jobs, name, "jobs");
      if (ev.results.empty() || ev.truth.empty()) return usage("eval: --results and --truth are required");
      run_eval(ctx, ev);
      fs::path stem = ev.out;
      if (stem.extension() == ".json" || stem.extension() == ".csv") stem.replace_extension();
      manifest_dir = stem.has_parent_path() ? stem.parent_path() : fs::path(".");
    } else if (name == "replay") {
      settings.merge(rp_trace, rp.trace, name, "trace");
      settings.merge(rp_fix, rp.fixtures, name, "fixtures");
      settings.merge(rp_session, rp.session, name, "session");
      settings.merge(rp_out, rp.out, name, "out");
      if (rp.trace.empty() || rp.fixtures.empty()) return usage("replay: --trace and --fixtures are required");
      manifest_dir = rp.out;
      try {
        run_replay(ctx, rp);
      } catch (...) {
        ctx.manifest.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        write_file(fs::path(manifest_dir) / kManifestName, ctx.manifest.to_json().dump(2) + "\n");
        throw;
      }
    }
    ctx.manifest.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    fs::path mpath = manifest_dir / kManifestName;
    if (name == "eval") {
      fs::path stem = ev.out;
      if (stem.extension() == ".json" || stem.extension() == ".csv") stem.replace_extension();
      mpath = stem;
      mpath += ".manifest.json";
    }
    write_file(mpath, ctx.manifest.to_json().dump(2) + "\n");
    out << mpath.generic_string() << "\n";
    return 0;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UsageError) return usage(e.message());
    err << error_json(e, name).dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << json{{"error", "InternalError"}, {"message", e.what()}, {"detail", ""}, {"stage", ""}, {"subcommand", name}}.dump()
        << "\n";
    return 1;
  }
}

}  // namespace gazeq::app

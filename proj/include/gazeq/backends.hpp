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

// External model backends (speech, segmentation, captioning, detection, OCR,
// text generation, gaze-point providers) behind one request/response
// interface. Two kinds ship: a JSON-over-HTTP client and a file-backed
// fixture store keyed by request hash. A recording decorator logs traffic and
// can materialize fixtures for later offline replay.
//
// Wire format (Remote): POST <endpoint>
//   {"role": <role>, "payload": {...}, "attachments": [{"name", "base64"}]}
// and the response body is the role's response object (see README).

#pragma once

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "gazeq/error.hpp"
#include "gazeq/geometry.hpp"
#include "gazeq/session.hpp"
#include "gazeq/util.hpp"

namespace gazeq {

enum class Role { Transcriber, Segmenter, Captioner, Detector, Responder, Ocr, GazeProvider };

inline constexpr Role kAllRoles[] = {Role::Transcriber, Role::Segmenter, Role::Captioner, Role::Detector,
                                     Role::Responder,   Role::Ocr,       Role::GazeProvider};

constexpr std::string_view to_string(Role role) {
  switch (role) {
    case Role::Transcriber: return "transcriber";
    case Role::Segmenter: return "segmenter";
    case Role::Captioner: return "captioner";
    case Role::Detector: return "detector";
    case Role::Responder: return "responder";
    case Role::Ocr: return "ocr";
    case Role::GazeProvider: return "gaze_provider";
  }
  return "unknown";
}

inline Role role_from_string(std::string_view name) {
  for (Role r : kAllRoles)
    if (to_string(r) == name) return r;
  fail(ErrorKind::ConfigError, "unknown backend role '" + std::string(name) + "'", std::string(name));
}

enum class BackendKind { Remote, Fixture };

struct BackendDescriptor {
  Role role = Role::Responder;
  BackendKind kind = BackendKind::Fixture;
  std::string endpoint;
  fs::path fixture_dir;
  json parameters = json::object();

  void validate() const {
    if (kind == BackendKind::Remote && endpoint.empty())
      fail(ErrorKind::ConfigError, "remote backend requires an endpoint", std::string(to_string(role)));
    if (kind == BackendKind::Fixture && fixture_dir.empty())
      fail(ErrorKind::ConfigError, "fixture backend requires fixture_dir", std::string(to_string(role)));
  }
};

/// Generation parameters sent with every Responder request unless overridden.
inline json default_parameters(Role role) {
  switch (role) {
    case Role::Responder:
      return {{"max_tokens", 1500}, {"temperature", 0}, {"top_p", 1}, {"frequency_penalty", 0}, {"presence_penalty", 0.6}};
    case Role::Captioner:
      return {{"description_type", "Detail"}};
    default:
      return json::object();
  }
}

// Parameters that configure transport, not the model; never hashed.
inline bool is_transport_parameter(const std::string& key) {
  return key == "timeout_s" || key == "retries";
}

// ---------------------------------------------------------------------------
// Requests and clients

struct BackendRequest {
  Role role = Role::Responder;
  json payload = json::object();       // canonical, hashed
  std::vector<fs::path> attachments;  // sent to remote services, not hashed

  std::string canonical() const { return std::string(to_string(role)) + "\n" + payload.dump(); }
  std::string key() const { return content_hash(canonical()); }
};

class BackendClient {
 public:
  virtual ~BackendClient() = default;
  virtual json call(const BackendRequest& request) = 0;
};

class FixtureBackend final : public BackendClient {
 public:
  explicit FixtureBackend(fs::path dir) : dir_(std::move(dir)) {}

  static fs::path fixture_path(const fs::path& dir, const BackendRequest& request) {
    return dir / std::string(to_string(request.role)) / (request.key() + ".json");
  }

  json call(const BackendRequest& request) override {
    auto path = fixture_path(dir_, request);
    if (!fs::exists(path))
      fail(ErrorKind::FixtureMiss,
           "no fixture for " + std::string(to_string(request.role)) + " request " + request.key() + " (" +
               request.payload.dump() + ")",
           std::string(to_string(request.role)));
    try {
      return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
      fail(ErrorKind::MalformedResponse, path.string() + ": " + e.what(), std::string(to_string(request.role)));
    }
  }

  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
};

class RemoteBackend final : public BackendClient {
 public:
  RemoteBackend(std::string endpoint, double timeout_s = 30.0, int retries = 1)
      : timeout_s_(timeout_s), retries_(retries) {
    auto scheme = endpoint.find("://");
    if (scheme == std::string::npos) fail(ErrorKind::ConfigError, "endpoint must be a URL: " + endpoint, endpoint);
    auto path_start = endpoint.find('/', scheme + 3);
    host_ = endpoint.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/" : endpoint.substr(path_start);
  }

  json call(const BackendRequest& request) override {
    const std::string role(to_string(request.role));
    json body = {{"role", role}, {"payload", request.payload}, {"attachments", json::array()}};
    for (const auto& a : request.attachments) {
      if (!fs::exists(a)) continue;
      body["attachments"].push_back({{"name", a.filename().string()}, {"base64", httplib::detail::base64_encode(read_file(a))}});
    }
    const std::string text = body.dump();

    httplib::Headers headers;
    if (const char* token = std::getenv("GAZEQ_BACKEND_TOKEN"); token && *token)
      headers.emplace("Authorization", std::string("Bearer ") + token);

    std::string last_error;
    for (int attempt = 0; attempt <= retries_; ++attempt) {
      httplib::Client client(host_);
      auto secs = static_cast<time_t>(timeout_s_);
      auto usecs = static_cast<time_t>((timeout_s_ - static_cast<double>(secs)) * 1e6);
      client.set_connection_timeout(secs, usecs);
      client.set_read_timeout(secs, usecs);
      client.set_write_timeout(secs, usecs);
      auto res = client.Post(path_, headers, text, "application/json");
      if (!res) {
        last_error = httplib::to_string(res.error());
        continue;
      }
      if (res->status < 200 || res->status >= 300) {
        last_error = "HTTP " + std::to_string(res->status);
        if (res->status < 500) break;
        continue;
      }
      try {
        return json::parse(res->body);
      } catch (const json::parse_error& e) {
        fail(ErrorKind::MalformedResponse, role + " returned invalid JSON: " + e.what(), role);
      }
    }
    fail(ErrorKind::BackendUnavailable, role + " backend at " + host_ + path_ + " failed: " + last_error, role);
  }

 private:
  std::string host_;
  std::string path_;
  double timeout_s_;
  int retries_;
};

/// Append-only JSON-lines log of backend traffic. Writes are serialized.
class RecordLog {
 public:
  explicit RecordLog(fs::path path) : path_(std::move(path)) {
    if (path_.has_parent_path()) fs::create_directories(path_.parent_path());
    out_.open(path_, std::ios::app);
    if (!out_) fail(ErrorKind::MissingFile, "cannot open record log " + path_.string(), path_.string());
  }

  void append(const json& entry) {
    std::lock_guard lock(mu_);
    out_ << entry.dump() << '\n';
    out_.flush();
  }

  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
  std::ofstream out_;
  std::mutex mu_;
};

class RecordingBackend final : public BackendClient {
 public:
  RecordingBackend(std::shared_ptr<BackendClient> inner, std::shared_ptr<RecordLog> log,
                   std::optional<fs::path> fixture_out = std::nullopt)
      : inner_(std::move(inner)), log_(std::move(log)), fixture_out_(std::move(fixture_out)) {}

  json call(const BackendRequest& request) override {
    auto t0 = std::chrono::steady_clock::now();
    json response = inner_->call(request);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (log_) {
      log_->append({{"role", std::string(to_string(request.role))},
                    {"hash", request.key()},
                    {"latency_ms", ms},
                    {"request", request.payload},
                    {"response", response}});
    }
    if (fixture_out_) {
      std::lock_guard lock(mu_);
      write_file(FixtureBackend::fixture_path(*fixture_out_, request), response.dump(2) + "\n");
    }
    return response;
  }

 private:
  std::shared_ptr<BackendClient> inner_;
  std::shared_ptr<RecordLog> log_;
  std::optional<fs::path> fixture_out_;
  std::mutex mu_;
};

/// Turns a record log into a fixture directory (`<role>/<hash>.json`).
inline std::size_t materialize_fixtures(const fs::path& log_path, const fs::path& fixture_dir) {
  std::istringstream in(read_file(log_path));
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    json entry = json::parse(line);
    fs::path p = fixture_dir / entry.at("role").get<std::string>() / (entry.at("hash").get<std::string>() + ".json");
    write_file(p, entry.at("response").dump(2) + "\n");
    ++n;
  }
  return n;
}

// ---------------------------------------------------------------------------
// Configuration

namespace detail {

// Minimal TOML reader: [table] / [table.sub] headers, key = "string" | number
// | true/false | [single-line array], and # comments. Enough for configs.
inline json parse_toml_subset(const std::string& text, const std::string& source) {
  json root = json::object();
  json* table = &root;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  auto error = [&](const std::string& msg) {
    fail(ErrorKind::ConfigError, source + ":" + std::to_string(line_no) + ": " + msg);
  };
  auto scalar = [&](const std::string& value) -> json {
    if (value.front() == '"') {
      if (value.size() < 2 || value.back() != '"') error("unterminated string");
      std::string s;
      for (std::size_t i = 1; i + 1 < value.size(); ++i) {
        char c = value[i];
        if (c == '\\' && i + 2 < value.size()) {
          char n = value[++i];
          switch (n) {
            case 'n': s.push_back('\n'); break;
            case 't': s.push_back('\t'); break;
            case '"': s.push_back('"'); break;
            case '\\': s.push_back('\\'); break;
            default: error(std::string("unsupported escape \\") + n);
          }
        } else {
          s.push_back(c);
        }
      }
      return s;
    }
    if (value == "true" || value == "false") return value == "true";
    if (auto n = parse_number(value)) {
      if (value.find_first_of(".eE") == std::string::npos) return static_cast<long long>(*n);
      return *n;
    }
    error("unsupported value '" + value + "'");
    return nullptr;
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line;
    bool in_string = false;
    for (char c : raw) {
      if (c == '"') in_string = !in_string;
      if (c == '#' && !in_string) break;
      line.push_back(c);
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') error("unterminated table header");
      std::string name = trim(std::string_view(line).substr(1, line.size() - 2));
      table = &root;
      std::size_t start = 0;
      while (start <= name.size()) {
        auto dot = name.find('.', start);
        std::string part = trim(name.substr(start, dot == std::string::npos ? std::string::npos : dot - start));
        if (part.empty()) error("empty table name");
        json& next = (*table)[part];
        if (next.is_null()) next = json::object();
        table = &next;
        if (dot == std::string::npos) break;
        start = dot + 1;
      }
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) error("expected key = value");
    std::string key = trim(line.substr(0, eq));
    if (key.size() >= 2 && key.front() == '"' && key.back() == '"') key = key.substr(1, key.size() - 2);
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) error("expected key = value");
    if (value.front() == '[') {
      if (value.back() != ']') error("unterminated array");
      json arr = json::array();
      std::string item;
      bool quoted = false;
      for (char c : value.substr(1, value.size() - 2) + ",") {
        if (c == '"') quoted = !quoted;
        if (c == ',' && !quoted) {
          if (!trim(item).empty()) arr.push_back(scalar(trim(item)));
          item.clear();
        } else {
          item.push_back(c);
        }
      }
      (*table)[key] = arr;
    } else {
      (*table)[key] = scalar(value);
    }
  }
  return root;
}

}  // namespace detail

/// The configured backend per role, plus effective role parameters.
class Backends {
 public:
  void set(const BackendDescriptor& d, std::shared_ptr<BackendClient> client) {
    d.validate();
    json params = default_parameters(d.role);
    for (auto& [k, v] : d.parameters.items()) params[k] = v;
    entries_[d.role] = Entry{d, std::move(client), std::move(params)};
  }

  bool has(Role role) const { return entries_.count(role) != 0; }

  BackendClient& client(Role role) const {
    auto it = entries_.find(role);
    if (it == entries_.end())
      fail(ErrorKind::ConfigError, "no backend configured for role '" + std::string(to_string(role)) + "'",
           std::string(to_string(role)));
    return *it->second.client;
  }

  /// Model parameters for the role (transport parameters removed).
  json model_parameters(Role role) const {
    json out = json::object();
    auto it = entries_.find(role);
    json params = it == entries_.end() ? default_parameters(role) : it->second.parameters;
    for (auto& [k, v] : params.items())
      if (!is_transport_parameter(k)) out[k] = v;
    return out;
  }

  const BackendDescriptor* descriptor(Role role) const {
    auto it = entries_.find(role);
    return it == entries_.end() ? nullptr : &it->second.descriptor;
  }

  bool any_remote() const {
    for (const auto& [role, e] : entries_)
      if (e.descriptor.kind == BackendKind::Remote) return true;
    return false;
  }

  /// Wraps every client in a RecordingBackend sharing `log`.
  void record(std::shared_ptr<RecordLog> log, std::optional<fs::path> fixture_out = std::nullopt) {
    for (auto& [role, e] : entries_)
      e.client = std::make_shared<RecordingBackend>(e.client, log, fixture_out);
  }

  static std::shared_ptr<BackendClient> make_client(const BackendDescriptor& d) {
    d.validate();
    if (d.kind == BackendKind::Fixture) return std::make_shared<FixtureBackend>(d.fixture_dir);
    double timeout = d.parameters.value("timeout_s", 30.0);
    int retries = d.parameters.value("retries", 1);
    return std::make_shared<RemoteBackend>(d.endpoint, timeout, retries);
  }

  static Backends from_descriptors(const std::vector<BackendDescriptor>& ds) {
    Backends b;
    for (const auto& d : ds) b.set(d, make_client(d));
    return b;
  }

  /// Every role served from one fixture directory.
  static Backends all_fixture(const fs::path& dir) {
    Backends b;
    for (Role r : kAllRoles) {
      BackendDescriptor d;
      d.role = r;
      d.kind = BackendKind::Fixture;
      d.fixture_dir = dir;
      b.set(d, make_client(d));
    }
    return b;
  }

 private:
  struct Entry {
    BackendDescriptor descriptor;
    std::shared_ptr<BackendClient> client;
    json parameters;
  };
  std::map<Role, Entry> entries_;
};

/// Parses a backend config (`.toml` subset or `.json`). One table per role:
///   [responder]
///   kind = "fixture"            # or "remote"
///   fixture_dir = "fixtures/backends"
///   endpoint = "http://host:port/path"
///   [responder.parameters]
///   max_tokens = 1500
/// Relative fixture paths resolve against the config file's directory.
inline std::vector<BackendDescriptor> parse_backend_config(const json& cfg, const fs::path& base_dir) {
  if (!cfg.is_object()) fail(ErrorKind::ConfigError, "backend config must be a table");
  std::vector<BackendDescriptor> out;
  for (auto& [name, table] : cfg.items()) {
    BackendDescriptor d;
    d.role = role_from_string(name);
    if (!table.is_object()) fail(ErrorKind::ConfigError, "role '" + name + "' must be a table", name);
    std::string kind = table.value("kind", std::string());
    if (kind == "fixture") d.kind = BackendKind::Fixture;
    else if (kind == "remote") d.kind = BackendKind::Remote;
    else fail(ErrorKind::ConfigError, "role '" + name + "': kind must be \"fixture\" or \"remote\"", name);
    d.endpoint = table.value("endpoint", std::string());
    if (table.contains("fixture_dir")) {
      fs::path p = table.at("fixture_dir").get<std::string>();
      d.fixture_dir = p.is_absolute() ? p : base_dir / p;
    }
    if (table.contains("parameters")) d.parameters = table.at("parameters");
    d.validate();
    out.push_back(std::move(d));
  }
  return out;
}

inline Backends load_backends(const fs::path& config_path) {
  if (!fs::exists(config_path))
    fail(ErrorKind::ConfigError, "backend config not found: " + config_path.string(), config_path.string());
  std::string text = read_file(config_path);
  json cfg;
  if (config_path.extension() == ".json") {
    try {
      cfg = json::parse(text);
    } catch (const json::parse_error& e) {
      fail(ErrorKind::ConfigError, config_path.string() + ": " + e.what());
    }
  } else {
    cfg = detail::parse_toml_subset(text, config_path.string());
  }
  fs::path base = config_path.has_parent_path() ? config_path.parent_path() : fs::path(".");
  return Backends::from_descriptors(parse_backend_config(cfg, base));
}

// ---------------------------------------------------------------------------
// Typed role calls

struct TranscriptResult {
  std::vector<TimedWord> words;
  std::string language;
};

struct SegmentMask {
  BBox bbox;
  std::optional<std::string> mask_ref;
};

struct Detection {
  std::string label;
  BBox bbox;
  double score = 0;
};

struct DetectionResult {
  std::vector<Detection> detections;
};

struct CaptionResult {
  std::string text;
  std::string detail_level;
};

namespace detail {

inline double round6(double v) { return std::round(v * 1e6) / 1e6; }

inline json frame_payload(const FrameRef& frame) {
  return {{"frame", frame.uri}, {"t", frame.t}, {"width", frame.width}, {"height", frame.height}};
}

inline BackendRequest make_request(const Backends& b, Role role, json payload, std::vector<fs::path> attachments = {}) {
  json params = b.model_parameters(role);
  if (!params.empty()) payload["parameters"] = params;
  return BackendRequest{role, std::move(payload), std::move(attachments)};
}

[[noreturn]] inline void malformed(Role role, const std::string& what) {
  fail(ErrorKind::MalformedResponse, std::string(to_string(role)) + " response: " + what, std::string(to_string(role)));
}

inline BBox parse_bbox(Role role, const json& v) {
  if (!v.is_array() || v.size() != 4) malformed(role, "bbox must be [x_min, y_min, x_max, y_max]");
  BBox b;
  try {
    b = {v[0].get<double>(), v[1].get<double>(), v[2].get<double>(), v[3].get<double>()};
  } catch (const json::exception&) {
    malformed(role, "bbox must be numeric");
  }
  if (!b.valid()) malformed(role, "bbox outside the unit square or empty");
  return b;
}

inline std::string require_text(Role role, const json& r, const char* key) {
  if (!r.is_object() || !r.contains(key) || !r.at(key).is_string()) malformed(role, std::string("missing string '") + key + "'");
  return r.at(key).get<std::string>();
}

}  // namespace detail

/// Transcribes an audio file. The request is keyed by the audio's content
/// hash; when the file is not present locally, by its reference string.
inline TranscriptResult transcribe(const Backends& b, const fs::path& audio_path, const std::string& audio_ref) {
  json payload;
  std::vector<fs::path> attachments;
  if (fs::exists(audio_path)) {
    payload["audio_hash"] = content_hash(read_file(audio_path));
    attachments.push_back(audio_path);
  } else {
    payload["audio_ref"] = audio_ref;
  }
  auto req = detail::make_request(b, Role::Transcriber, payload, attachments);
  json r = b.client(Role::Transcriber).call(req);
  if (!r.is_object() || !r.contains("words") || !r.at("words").is_array()) detail::malformed(Role::Transcriber, "missing 'words'");
  TranscriptResult out;
  out.language = r.value("language", std::string("und"));
  std::size_t j = 0;
  for (const auto& w : r.at("words")) {
    TimedWord tw;
    tw.text = detail::require_text(Role::Transcriber, w, "text");
    try {
      tw.t_start = w.at("t_start").get<double>();
      tw.t_end = w.at("t_end").get<double>();
    } catch (const json::exception&) {
      detail::malformed(Role::Transcriber, "word timing missing");
    }
    if (!(tw.t_start <= tw.t_end)) detail::malformed(Role::Transcriber, "word ends before it starts");
    if (j > 0 && tw.t_start < out.words.back().t_start) detail::malformed(Role::Transcriber, "words not time-ordered");
    tw.index = j++;
    out.words.push_back(std::move(tw));
  }
  return out;
}

inline std::vector<SegmentMask> segment(const Backends& b, const Session& s, const FrameRef& frame, Point point) {
  json payload = detail::frame_payload(frame);
  payload["point"] = {detail::round6(point.x), detail::round6(point.y)};
  json r = b.client(Role::Segmenter).call(detail::make_request(b, Role::Segmenter, payload, {s.resolve(frame.uri)}));
  if (!r.is_object() || !r.contains("masks") || !r.at("masks").is_array()) detail::malformed(Role::Segmenter, "missing 'masks'");
  std::vector<SegmentMask> out;
  for (const auto& m : r.at("masks")) {
    SegmentMask sm;
    sm.bbox = detail::parse_bbox(Role::Segmenter, m.value("bbox", json()));
    if (m.contains("mask") && m.at("mask").is_string()) sm.mask_ref = m.at("mask").get<std::string>();
    out.push_back(std::move(sm));
  }
  return out;
}

inline CaptionResult caption(const Backends& b, const Session& s, const FrameRef& frame) {
  json r = b.client(Role::Captioner).call(detail::make_request(b, Role::Captioner, detail::frame_payload(frame), {s.resolve(frame.uri)}));
  CaptionResult out;
  out.text = detail::require_text(Role::Captioner, r, "text");
  if (trim(out.text).empty()) detail::malformed(Role::Captioner, "empty caption");
  out.detail_level = r.value("detail_level", b.model_parameters(Role::Captioner).value("description_type", std::string("Detail")));
  return out;
}

inline DetectionResult detect(const Backends& b, const Session& s, const FrameRef& frame) {
  json r = b.client(Role::Detector).call(detail::make_request(b, Role::Detector, detail::frame_payload(frame), {s.resolve(frame.uri)}));
  if (!r.is_object() || !r.contains("detections") || !r.at("detections").is_array())
    detail::malformed(Role::Detector, "missing 'detections'");
  DetectionResult out;
  for (const auto& d : r.at("detections")) {
    Detection det;
    det.label = detail::require_text(Role::Detector, d, "label");
    det.bbox = detail::parse_bbox(Role::Detector, d.value("bbox", json()));
    if (!d.contains("score") || !d.at("score").is_number()) detail::malformed(Role::Detector, "missing score");
    det.score = d.at("score").get<double>();
    if (!(det.score >= 0 && det.score <= 1)) detail::malformed(Role::Detector, "score outside [0,1]");
    out.detections.push_back(std::move(det));
  }
  return out;
}

inline std::string ocr(const Backends& b, const Session& s, const FrameRef& frame) {
  json r = b.client(Role::Ocr).call(detail::make_request(b, Role::Ocr, detail::frame_payload(frame), {s.resolve(frame.uri)}));
  return detail::require_text(Role::Ocr, r, "text");
}

inline std::string generate(const Backends& b, const std::string& prompt) {
  json payload = {{"prompt", prompt}};
  json r = b.client(Role::Responder).call(detail::make_request(b, Role::Responder, payload));
  return detail::require_text(Role::Responder, r, "text");
}

inline Point gaze_point(const Backends& b, const Session& s, const FrameRef& frame) {
  json r = b.client(Role::GazeProvider).call(detail::make_request(b, Role::GazeProvider, detail::frame_payload(frame), {s.resolve(frame.uri)}));
  if (!r.is_object() || !r.contains("point") || !r.at("point").is_array() || r.at("point").size() != 2)
    detail::malformed(Role::GazeProvider, "missing 'point'");
  try {
    return {r.at("point")[0].get<double>(), r.at("point")[1].get<double>()};
  } catch (const json::exception&) {
    detail::malformed(Role::GazeProvider, "point must be numeric");
  }
}

}  // namespace gazeq

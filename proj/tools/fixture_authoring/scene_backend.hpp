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

// Deterministic stand-in for every model role, driven by a session's
// scene.json. Used only to author fixtures; the shipped pipeline never links
// it.
//
// scene.json:
//   {"layouts": [{"t_from", "t_to", "caption", "ocr",
//                 "objects": [{"name", "labels": [[label, score], ...], "bbox"}]}],
//    "transcripts": {"<audio file name>": [{"text", "t_start", "t_end"}]},
//    "default_caption": "..."}

#pragma once

#include <string>
#include <vector>

#include "gazeq/backends.hpp"
#include "gazeq/prompt.hpp"
#include "gazeq/util.hpp"

namespace gazeq::authoring {

class SceneBackend final : public BackendClient {
 public:
  explicit SceneBackend(const fs::path& scene_path) : scene_(json::parse(read_file(scene_path))) {}
  explicit SceneBackend(json scene) : scene_(std::move(scene)) {}

  json call(const BackendRequest& req) override {
    switch (req.role) {
      case Role::Transcriber: return transcribe(req);
      case Role::Segmenter: return segment(req);
      case Role::Captioner: {
        const json* l = layout(req);
        std::string text = l ? l->at("caption").get<std::string>() : scene_.value("default_caption", "A room.");
        json params = req.payload.value("parameters", json::object());
        return {{"text", text}, {"detail_level", params.value("description_type", "Detail")}};
      }
      case Role::Detector: return detect(req);
      case Role::Ocr: {
        const json* l = layout(req);
        return {{"text", l ? l->value("ocr", "") : ""}};
      }
      case Role::GazeProvider: return salient_point(req);
      case Role::Responder: return {{"text", respond(req.payload.at("prompt").get<std::string>())}};
    }
    fail(ErrorKind::BackendError, "unsupported role");
  }

  /// Reply of the simulated language model for a rendered prompt.
  static std::string respond(const std::string& prompt) {
    std::string query = section_lines(prompt, "User Query:").empty() ? "" : section_lines(prompt, "User Query:").front();
    std::vector<std::vector<std::string>> interests;
    for (const auto& line : section_lines(prompt, "Interest Caption:")) {
      auto open = line.find('['), close = line.rfind(']');
      if (open == std::string::npos || close == std::string::npos) continue;
      std::vector<std::string> labels;
      std::string cur;
      for (char c : line.substr(open + 1, close - open - 1) + ",") {
        if (c == ',') {
          if (!trim(cur).empty()) labels.push_back(trim(cur));
          cur.clear();
        } else {
          cur.push_back(c);
        }
      }
      if (!labels.empty()) interests.push_back(labels);
    }

    // Focus: interest labels the query names, else the top label of each.
    auto tokens = tokenize_words(to_lower(query));
    auto named = [&](const std::string& label) {
      auto lt = tokenize_words(to_lower(label));
      for (std::size_t i = 0; i + lt.size() <= tokens.size(); ++i)
        if (std::equal(lt.begin(), lt.end(), tokens.begin() + static_cast<std::ptrdiff_t>(i))) return true;
      return false;
    };
    std::vector<std::string> focus;
    auto add = [&](const std::string& l) {
      if (std::find(focus.begin(), focus.end(), l) == focus.end()) focus.push_back(l);
    };
    for (const auto& ls : interests)
      for (const auto& l : ls)
        if (named(l)) add(l);
    if (focus.empty())
      for (const auto& ls : interests) add(ls.front());

    std::string thought = "The user asked \"" + query + "\".";
    if (!interests.empty()) {
      thought += " Gaze-related detections:";
      for (const auto& ls : interests) {
        thought += " [";
        for (std::size_t i = 0; i < ls.size(); ++i) thought += (i ? ", " : "") + ls[i];
        thought += "]";
      }
      thought += ".";
    } else {
      thought += " No object of interest was identified.";
    }

    std::string answer, rewritten;
    if (focus.empty()) {
      answer = "I could not tell which object you mean from the current view. " + hint(tokens);
      rewritten = query;
    } else {
      std::string f;
      for (std::size_t i = 0; i < focus.size(); ++i) {
        if (i) f += i + 1 == focus.size() ? " or " : ", ";
        f += focus[i];
      }
      thought += " The question most likely refers to the " + f + ".";
      answer = "You are looking at the " + f + ". " + hint(tokens);
      rewritten = rewrite(tokens, f);
    }
    json body = {{"thought", thought}, {"answer", answer}, {"query", rewritten}};
    return "Here is my response.\n```json\n" + body.dump(2) + "\n```\n";
  }

 private:
  static std::vector<std::string> section_lines(const std::string& prompt, const std::string& header) {
    std::vector<std::string> out;
    auto pos = prompt.rfind("\n" + header + "\n");
    if (pos == std::string::npos) return out;
    std::istringstream in(prompt.substr(pos + header.size() + 2));
    std::string line;
    while (std::getline(in, line)) {
      if (trim(line).empty()) break;
      out.push_back(line.rfind("- ", 0) == 0 ? line.substr(2) : line);
    }
    return out;
  }

  static std::string hint(const std::vector<std::string>& tokens) {
    auto has = [&](const char* w) { return std::find(tokens.begin(), tokens.end(), w) != tokens.end(); };
    if (has("calories") || has("caffeine")) return "Nutrition values depend on the serving size; see the search results.";
    if (has("price") || has("cost") || has("buy")) return "Prices vary by retailer; the search below compares offers.";
    if (has("brand") || has("wrote") || has("from") || has("made")) return "The search below should identify its origin.";
    if (has("time")) return "I cannot read the exact time reliably from the view.";
    return "The search below has more details.";
  }

  static std::string rewrite(const std::vector<std::string>& tokens, const std::string& focus) {
    static const std::vector<std::string> pronouns = {"this", "that", "these", "those", "it", "one", "them", "they"};
    std::string out;
    bool replaced = false;
    for (const auto& t : tokens) {
      bool pron = std::find(pronouns.begin(), pronouns.end(), t) != pronouns.end();
      out += out.empty() ? "" : " ";
      if (pron && !replaced) {
        out += "the " + focus;
        replaced = true;
      } else {
        out += t;
      }
    }
    if (!replaced) out += " " + focus;
    return out;
  }

  const json* layout(const BackendRequest& req) const {
    double t = req.payload.value("t", -1.0);
    for (const auto& l : scene_.at("layouts"))
      if (l.at("t_from").get<double>() <= t && t < l.at("t_to").get<double>()) return &l;
    return nullptr;
  }

  static json box(const json& b, double grow) {
    double x0 = b[0].get<double>(), y0 = b[1].get<double>(), x1 = b[2].get<double>(), y1 = b[3].get<double>();
    if (grow < 0) {
      double cx = (x0 + x1) / 2, cy = (y0 + y1) / 2, f = 1 + grow;
      return json::array({cx - (x1 - x0) * f / 2, cy - (y1 - y0) * f / 2, cx + (x1 - x0) * f / 2, cy + (y1 - y0) * f / 2});
    }
    return json::array({std::max(0.0, x0 - grow), std::max(0.0, y0 - grow), std::min(1.0, x1 + grow), std::min(1.0, y1 + grow)});
  }

  json segment(const BackendRequest& req) const {
    json masks = json::array();
    if (const json* l = layout(req)) {
      for (const auto& o : l->at("objects")) {
        const std::string n = o.at("name").get<std::string>();
        masks.push_back({{"bbox", box(o.at("bbox"), -0.5)}, {"mask", n + "/part"}});
        masks.push_back({{"bbox", o.at("bbox")}, {"mask", n + "/whole"}});
        masks.push_back({{"bbox", box(o.at("bbox"), 0.04)}, {"mask", n + "/surround"}});
      }
    }
    return {{"masks", masks}};
  }

  json detect(const BackendRequest& req) const {
    json dets = json::array();
    if (const json* l = layout(req)) {
      for (const auto& o : l->at("objects"))
        for (const auto& lab : o.at("labels"))
          dets.push_back({{"label", lab[0]}, {"bbox", o.at("bbox")}, {"score", lab[1]}});
    }
    dets.push_back({{"label", "shadow"}, {"bbox", {0.0, 0.9, 0.2, 1.0}}, {"score", 0.15}});
    return {{"detections", dets}};
  }

  json salient_point(const BackendRequest& req) const {
    json best = {0.5, 0.5};
    double best_area = -1;
    if (const json* l = layout(req)) {
      for (const auto& o : l->at("objects")) {
        const auto& b = o.at("bbox");
        double area = (b[2].get<double>() - b[0].get<double>()) * (b[3].get<double>() - b[1].get<double>());
        if (area > best_area) {
          best_area = area;
          best = {(b[0].get<double>() + b[2].get<double>()) / 2, (b[1].get<double>() + b[3].get<double>()) / 2};
        }
      }
    }
    return {{"point", best}};
  }

  json transcribe(const BackendRequest& req) const {
    std::string name;
    if (!req.attachments.empty()) name = req.attachments.front().filename().string();
    else name = fs::path(req.payload.value("audio_ref", "")).filename().string();
    const auto& ts = scene_.at("transcripts");
    if (!ts.contains(name)) fail(ErrorKind::FixtureMiss, "scene has no transcript for " + name, name);
    return {{"words", ts.at(name)}, {"language", "en"}};
  }

  json scene_;
};

}  // namespace gazeq::authoring

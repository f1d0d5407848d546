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

// Prompt assembly for the responder and parsing of its JSON reply.
//
// A template is plain text with three placeholders:
//   {{examples}}  optional few-shot block (empty by default)
//   {{inputs}}    roster of the input types present, with their descriptions
//   {{values}}    the input values, one section per present type
// The default template is identical to templates/voila_prompt.txt.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gazeq/error.hpp"
#include "gazeq/util.hpp"

namespace gazeq {

using json = nlohmann::json;

enum class InputType { ContextCaption, InterestCaption, Ocr, UserQuery };

inline constexpr std::array<InputType, 4> kInputOrder = {InputType::ContextCaption, InputType::InterestCaption,
                                                         InputType::Ocr, InputType::UserQuery};

constexpr std::string_view to_string(InputType t) {
  switch (t) {
    case InputType::ContextCaption: return "Context Caption";
    case InputType::InterestCaption: return "Interest Caption";
    case InputType::Ocr: return "OCR";
    case InputType::UserQuery: return "User Query";
  }
  return "";
}

constexpr std::string_view input_description(InputType t) {
  switch (t) {
    case InputType::ContextCaption:
      return "A textual description of the whole visual content, generated by the visual captioning tool.";
    case InputType::InterestCaption:
      return "A textual description of the user's eye gaze interest, generated by a visual captioning tool -- a list "
             "of textual descriptions of the object that the user is looking at. The recognition result might be "
             "inaccurate, and the input is the top 3 descriptions with the highest confidence.";
    case InputType::Ocr:
      return "Extracted text from the whole vision field, generated by OCR tool, the recognition result can be "
             "considered highly inaccurate except for understandable phrases.";
    case InputType::UserQuery:
      return "The user's query question, may be vague by using pronouns or skipping intent words. Query text is a "
             "transcript using a speech recognition tool, which may be inaccurate if you find some words hard to "
             "understand.";
  }
  return "";
}

struct PromptBundle {
  std::vector<std::string> context_captions;
  std::vector<std::vector<std::string>> interest_captions;  // top-3 labels per object
  std::optional<std::string> ocr_text;
  std::string query_text;
  std::vector<InputType> input_roster;

  /// Roster implied by the populated fields, in template order.
  std::vector<InputType> implied_roster() const {
    std::vector<InputType> r;
    if (!context_captions.empty()) r.push_back(InputType::ContextCaption);
    if (!interest_captions.empty()) r.push_back(InputType::InterestCaption);
    if (ocr_text) r.push_back(InputType::Ocr);
    r.push_back(InputType::UserQuery);
    return r;
  }

  PromptBundle& finalize() {
    input_roster = implied_roster();
    return *this;
  }

  void validate() const {
    if (trim(query_text).empty()) fail(ErrorKind::TemplateError, "bundle has an empty query text");
    if (input_roster != implied_roster()) fail(ErrorKind::TemplateError, "bundle roster does not match its fields");
  }
};

inline json to_json(const PromptBundle& b) {
  json j = {{"context_captions", b.context_captions}, {"interest_captions", b.interest_captions}, {"query_text", b.query_text}};
  if (b.ocr_text) j["ocr_text"] = *b.ocr_text;
  return j;
}

inline PromptBundle bundle_from_json(const json& j) {
  PromptBundle b;
  try {
    b.context_captions = j.value("context_captions", std::vector<std::string>{});
    b.interest_captions = j.value("interest_captions", std::vector<std::vector<std::string>>{});
    if (j.contains("ocr_text") && !j.at("ocr_text").is_null()) b.ocr_text = j.at("ocr_text").get<std::string>();
    b.query_text = j.at("query_text").get<std::string>();
  } catch (const json::exception& e) {
    fail(ErrorKind::TemplateError, std::string("malformed prompt bundle: ") + e.what());
  }
  b.finalize();
  return b;
}

inline constexpr std::string_view kDefaultPromptTemplate = R"TPL(VOILA is designed to be able to assist with visual question answering task. With the input of a series of ego-centric snapshot description and user's query question, VOILA can (1) answer the question directly and (2) provide query input for web search engine. VOILA is able to understand large amounts of images and videos, then answer user's question with its knowledge and the help of search engine. VOILA can not directly read images or videos, but a list of visual understanding tools will provide textual information about the visual content, based on which VOILA can infer knowledge about the visual content. The textual information provided may be vague and general, but VOILA should do its best to organize the information to understand the visual content.
The whole visual assitant is able to capture ego-center snapshots and user's eyegaze attention coordinate, based on which several visual understanding tools will generate textual information. When the user asks questions knowing that VOILA has already understood the visual content and his/her eyeygaze interest, so his/her question may be vague by using pronoun or skipping intent words. VOILA should do its best to infer user's query intent by fulfilling the missing information. With the fulfilled query content, VOILA should (1) answer the questions directly and (2) generate proper and unambiguous query input for web search engine.
When inferring user's query intent, Voila should follow steps below: (1) figure out whether user's query contains ambiguous words, such as pronouns or words can not be understand depend solely on query text. (2) if yes, figure out the possible meaning of the ambiguous words based on the textual information provided by visual understanding tools and user's query question. (3) if no, check out whether the context or interest information might be related to user's query. If yes, combine it with query text properly. If no again, infer user's query intent solely based on the query text.
Overall, VOILA is a powerful visual dialogue assistant tool that can integrate visual understanding content and user's ambiguous query to answer user's question and generate proper query input for web search engine.
{{examples}}
------

VOILA takes the following information type as input: {{inputs}}

{{values}}

------

VOILA output a response in format (MUST BE IN JSON FORMAT):

```json
{
"thought": string \\ Explain the process of inferencing user's unambiguous query intent, use the textual information provided by visual understanding tools and user's query question
"answer": string \\ The answer to user's question
"query": string \\ The query input for web search engine
}
```
)TPL";

class PromptTemplate {
 public:
  PromptTemplate() : text_(kDefaultPromptTemplate) {}
  explicit PromptTemplate(std::string text) : text_(std::move(text)) { check(); }

  static PromptTemplate from_file(const fs::path& path) { return PromptTemplate(read_file(path)); }

  const std::string& text() const { return text_; }

  std::string render(const PromptBundle& bundle, std::string_view examples = {}) const {
    bundle.validate();
    std::string out;
    std::size_t pos = 0;
    while (true) {
      auto open = text_.find("{{", pos);
      if (open == std::string::npos) {
        out.append(text_, pos, std::string::npos);
        break;
      }
      auto close = text_.find("}}", open);
      out.append(text_, pos, open - pos);
      std::string name = text_.substr(open + 2, close - open - 2);
      if (name == "inputs") out += render_inputs(bundle);
      else if (name == "values") out += render_values(bundle);
      else if (name == "examples") out.append(examples);
      pos = close + 2;
    }
    return out;
  }

 private:
  void check() const {
    std::size_t pos = 0;
    bool inputs = false, values = false;
    while ((pos = text_.find("{{", pos)) != std::string::npos) {
      auto close = text_.find("}}", pos);
      if (close == std::string::npos) fail(ErrorKind::TemplateError, "unterminated placeholder");
      std::string name = text_.substr(pos + 2, close - pos - 2);
      if (name == "inputs") inputs = true;
      else if (name == "values") values = true;
      else if (name != "examples") fail(ErrorKind::TemplateError, "unknown placeholder {{" + name + "}}", name);
      pos = close + 2;
    }
    if (!inputs) fail(ErrorKind::TemplateError, "template lacks {{inputs}}", "inputs");
    if (!values) fail(ErrorKind::TemplateError, "template lacks {{values}}", "values");
  }

  static std::string one_line(std::string_view s) {
    std::string out;
    for (char c : s) out.push_back(c == '\n' || c == '\r' ? ' ' : c);
    return trim(out);
  }

  static std::string render_inputs(const PromptBundle& b) {
    std::string names;
    std::string descriptions;
    for (auto t : b.input_roster) {
      if (!names.empty()) names += ", ";
      names += to_string(t);
      descriptions += "\n- ";
      descriptions += to_string(t);
      descriptions += ": ";
      descriptions += input_description(t);
    }
    return names + "." + descriptions;
  }

  static std::string render_values(const PromptBundle& b) {
    std::string out;
    for (auto t : b.input_roster) {
      if (!out.empty()) out += "\n\n";
      out += to_string(t);
      out += ":";
      switch (t) {
        case InputType::ContextCaption:
          for (const auto& c : b.context_captions) out += "\n- " + one_line(c);
          break;
        case InputType::InterestCaption:
          for (const auto& labels : b.interest_captions) {
            out += "\n- [";
            for (std::size_t i = 0; i < labels.size(); ++i) {
              if (i) out += ", ";
              out += one_line(labels[i]);
            }
            out += "]";
          }
          break;
        case InputType::Ocr:
          out += "\n" + one_line(*b.ocr_text);
          break;
        case InputType::UserQuery:
          out += "\n" + one_line(b.query_text);
          break;
      }
    }
    return out;
  }

  std::string text_;
};

inline std::string build_prompt(const PromptBundle& bundle, const PromptTemplate& tpl = PromptTemplate()) {
  return tpl.render(bundle);
}

// ---------------------------------------------------------------------------
// Response parsing

struct AssistantResponse {
  std::string thought;
  std::string answer;
  std::string query;

  bool operator==(const AssistantResponse&) const = default;
};

inline json to_json(const AssistantResponse& r) {
  return {{"thought", r.thought}, {"answer", r.answer}, {"query", r.query}};
}

inline std::string serialize(const AssistantResponse& r) { return to_json(r).dump(); }

namespace detail {

// End of the balanced {...} starting at `open`, honoring JSON strings.
inline std::optional<std::size_t> balanced_object_end(std::string_view text, std::size_t open) {
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  for (std::size_t i = open; i < text.size(); ++i) {
    char c = text[i];
    if (in_string) {
      if (escaped) escaped = false;
      else if (c == '\\') escaped = true;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') in_string = true;
    else if (c == '{') ++depth;
    else if (c == '}' && --depth == 0) return i;
  }
  return std::nullopt;
}

}  // namespace detail

/// Extracts the first balanced top-level JSON object from a model reply
/// (surrounding prose and ``` fences are ignored) and reads the three fields.
inline AssistantResponse parse_response(std::string_view raw) {
  std::optional<json> obj;
  std::size_t pos = 0;
  while ((pos = raw.find('{', pos)) != std::string_view::npos) {
    auto end = detail::balanced_object_end(raw, pos);
    if (!end) break;
    try {
      json j = json::parse(raw.substr(pos, *end - pos + 1));
      if (j.is_object()) {
        obj = std::move(j);
        break;
      }
    } catch (const json::parse_error&) {
    }
    ++pos;
  }
  if (!obj) fail(ErrorKind::ParseError, "no JSON object found in response");

  auto field = [&](const char* name) {
    if (!obj->contains(name) || !obj->at(name).is_string() || trim(obj->at(name).get<std::string>()).empty())
      fail(ErrorKind::MissingField, std::string("response lacks '") + name + "'", name);
    return obj->at(name).get<std::string>();
  };
  AssistantResponse r;
  r.thought = field("thought");
  r.answer = field("answer");
  r.query = field("query");
  return r;
}

}  // namespace gazeq

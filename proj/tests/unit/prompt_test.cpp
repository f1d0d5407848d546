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

#include <gtest/gtest.h>

#include "gazeq/prompt.hpp"
#include "support/paths.hpp"

namespace gazeq {
namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::UsageError;
}

TEST(Template, ShippedFileMatchesTheBuiltIn) {
  auto text = read_file(testing::source_dir() / "templates" / "voila_prompt.txt");
  EXPECT_EQ(text, std::string(kDefaultPromptTemplate));
  EXPECT_EQ(PromptTemplate::from_file(testing::source_dir() / "templates" / "voila_prompt.txt").text(), text);
}

// Goldens come from tests/data/prompts/make_goldens.py, an independent renderer.
class Golden : public ::testing::TestWithParam<const char*> {};

TEST_P(Golden, RenderIsByteEqual) {
  auto dir = testing::data_dir() / "prompts";
  auto bundle = bundle_from_json(json::parse(read_file(dir / (std::string(GetParam()) + ".json"))));
  EXPECT_EQ(build_prompt(bundle), read_file(dir / (std::string(GetParam()) + ".txt")));
}

INSTANTIATE_TEST_SUITE_P(Bundles, Golden,
                         ::testing::Values("full", "no_ocr", "single_frame", "no_interest", "multi_object"));

TEST(Bundle, RosterFollowsPopulatedFields) {
  PromptBundle b;
  b.query_text = "what is this";
  b.finalize();
  EXPECT_EQ(b.input_roster, std::vector<InputType>{InputType::UserQuery});
  b.ocr_text = "";
  b.finalize();
  EXPECT_EQ(b.input_roster, (std::vector<InputType>{InputType::Ocr, InputType::UserQuery}));
  b.context_captions = {"x"};
  EXPECT_EQ(kind_of([&] { b.validate(); }), ErrorKind::TemplateError);
  b.finalize();
  b.query_text = "  ";
  EXPECT_EQ(kind_of([&] { b.validate(); }), ErrorKind::TemplateError);
}

TEST(Bundle, JsonRoundTrip) {
  PromptBundle b;
  b.context_captions = {"a", "b"};
  b.interest_captions = {{"x", "y", "z"}};
  b.ocr_text = "T";
  b.query_text = "q";
  b.finalize();
  auto back = bundle_from_json(to_json(b));
  EXPECT_EQ(build_prompt(back), build_prompt(b));
  EXPECT_EQ(kind_of([] { bundle_from_json(json{{"context_captions", {"a"}}}); }), ErrorKind::TemplateError);
}

TEST(Template, PlaceholdersAreChecked) {
  EXPECT_EQ(kind_of([] { PromptTemplate("{{values}} only"); }), ErrorKind::TemplateError);
  EXPECT_EQ(kind_of([] { PromptTemplate("{{inputs}} only"); }), ErrorKind::TemplateError);
  EXPECT_EQ(kind_of([] { PromptTemplate("{{inputs}} {{values}} {{bogus}}"); }), ErrorKind::TemplateError);
  EXPECT_EQ(kind_of([] { PromptTemplate("{{inputs}} {{values}} {{open"); }), ErrorKind::TemplateError);
  PromptTemplate tiny("I: {{inputs}}\nV: {{values}}{{examples}}");
  PromptBundle b;
  b.query_text = "hi\nthere";
  b.finalize();
  EXPECT_EQ(tiny.render(b, "\nEX"),
            "I: User Query.\n- User Query: " + std::string(input_description(InputType::UserQuery)) +
                "\nV: User Query:\nhi there\nEX");
}

TEST(Response, ParsesPlainFencedAndEmbeddedObjects) {
  AssistantResponse want{"t", "a", "q"};
  EXPECT_EQ(parse_response(serialize(want)), want);
  EXPECT_EQ(parse_response("```json\n" + serialize(want) + "\n```"), want);
  EXPECT_EQ(parse_response("Sure! {not json} then " + serialize(want) + " trailing {\"x\": 1}"), want);
  AssistantResponse braces{"uses {braces} and \"quotes\"", "}", "{"};
  EXPECT_EQ(parse_response(serialize(braces)), braces);
}

TEST(Response, EachMissingFieldIsNamed) {
  for (const char* field : {"thought", "answer", "query"}) {
    json j = to_json(AssistantResponse{"t", "a", "q"});
    j.erase(field);
    try {
      parse_response(j.dump());
      FAIL() << field;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::MissingField);
      EXPECT_EQ(e.detail(), field);
    }
    j[field] = 3;
    EXPECT_EQ(kind_of([&] { parse_response(j.dump()); }), ErrorKind::MissingField);
  }
}

TEST(Response, NoObjectIsAParseError) {
  EXPECT_EQ(kind_of([] { parse_response("I cannot help with that."); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_response("{\"thought\": \"unterminated"); }), ErrorKind::ParseError);
}

}  // namespace
}  // namespace gazeq

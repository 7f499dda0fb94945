// Copyright 2026 The Texkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "doctest.h"
#include "texkit/json_schema.h"

namespace texkit {
namespace {

using nlohmann::json;

TEST_SUITE("json_schema") {

TEST_CASE("types, required and additional properties") {
  json schema = json::parse(R"({
    "type": "object",
    "required": ["a"],
    "additionalProperties": false,
    "properties": {
      "a": {"type": "integer", "minimum": 0},
      "b": {"type": ["string", "null"], "minLength": 2}
    }})");
  CHECK(ValidateJsonSchema(json::parse(R"({"a": 1})"), schema).empty());
  CHECK(ValidateJsonSchema(json::parse(R"({"a": 1, "b": null})"), schema)
            .empty());
  auto errs = ValidateJsonSchema(json::parse(R"({"a": -1, "c": 0})"), schema);
  CHECK(errs.size() == 2);
  errs = ValidateJsonSchema(json::parse(R"({"b": "x"})"), schema);
  REQUIRE(errs.size() == 2);
  bool pointer = false;
  for (const auto &e : errs) pointer |= e.rfind("/b", 0) == 0;
  CHECK(pointer);
  CHECK(!ValidateJsonSchema(json::parse(R"({"a": 1.5})"), schema).empty());
}

TEST_CASE("arrays, enum and const") {
  json schema = json::parse(R"({
    "type": "array", "minItems": 1, "maxItems": 2,
    "items": {"enum": ["x", "y"]}})");
  CHECK(ValidateJsonSchema(json::parse(R"(["x"])"), schema).empty());
  CHECK(ValidateJsonSchema(json::parse(R"([])"), schema).size() == 1);
  CHECK(ValidateJsonSchema(json::parse(R"(["x","y","x"])"), schema).size() ==
        1);
  auto errs = ValidateJsonSchema(json::parse(R"(["z"])"), schema);
  REQUIRE(errs.size() == 1);
  CHECK(errs[0].rfind("/0", 0) == 0);
  json c = json::parse(R"({"const": 3, "maximum": 5})");
  CHECK(ValidateJsonSchema(3, c).empty());
  CHECK(ValidateJsonSchema(4, c).size() == 1);
}

TEST_CASE("additional properties as a schema") {
  json schema = json::parse(
      R"({"type":"object","additionalProperties":{"type":"number"}})");
  CHECK(ValidateJsonSchema(json::parse(R"({"k": 1})"), schema).empty());
  CHECK(ValidateJsonSchema(json::parse(R"({"k": "v"})"), schema).size() == 1);
}

}  // TEST_SUITE

}  // namespace
}  // namespace texkit

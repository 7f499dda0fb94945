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

#include <sstream>

#include "doctest.h"
#include "test_util.h"
#include "texkit/errors.h"
#include "texkit/ontology.h"

namespace texkit {
namespace {

Ontology Load(const std::string &jsonl) {
  std::istringstream in(jsonl);
  return load_ontology(in);
}

const Ontology &Toy() {
  static Ontology ont = load_ontology(testing::ToyDir() + "/ontology.jsonl");
  return ont;
}

TEST_SUITE("ontology") {

TEST_CASE("toy ontology structure") {
  const Ontology &ont = Toy();
  CHECK(ont.size() >= 30);
  CHECK(ont.depth("work.generic") == 0);
  CHECK(ont.depth("work.movie") == 1);
  CHECK(ont.path("loc.city") ==
        std::vector<std::string>{"loc.generic", "loc.city"});
  CHECK(ont.is_ancestor("food.generic", "food.fruit"));
  CHECK_FALSE(ont.is_ancestor("food.fruit", "food.generic"));
  CHECK(ont.types_named("FILM").count("work.movie") == 1);
  CHECK(ont.types_named("电影").count("work.movie") == 1);
  CHECK_THROWS_AS(ont.type("work.opera"), LookupError);
}

TEST_CASE("compatibility is reflexive, symmetric and chain closed") {
  const Ontology &ont = Toy();
  for (const auto &[a, ta] : ont.types()) {
    CHECK(is_compatible(a, a, ont));
    for (const auto &[b, tb] : ont.types()) {
      CHECK(is_compatible(a, b, ont) == is_compatible(b, a, ont));
    }
    auto chain = ont.path(a);
    for (const auto &x : chain) {
      for (const auto &y : chain) CHECK(is_compatible(x, y, ont));
    }
  }
  CHECK(is_compatible("food.fruit", "food.generic", ont));
  CHECK_FALSE(is_compatible("org.company", "food.generic", ont));
  CHECK_FALSE(is_compatible("food.fruit", "food.drink", ont));
}

TEST_CASE("validation errors") {
  CHECK_THROWS_AS(Load(R"({"type_id":"a","names":["x"]}
{"type_id":"a","names":["y"]})"),
                  ValidationError);
  CHECK_THROWS_AS(Load(R"({"type_id":"a","names":[]})"), ValidationError);
  CHECK_THROWS_AS(Load(R"({"type_id":"a","parent":"zz","names":["x"]})"),
                  ValidationError);
  CHECK_THROWS_AS(Load(R"({"type_id":"a","parent":"b","names":["x"]}
{"type_id":"b","parent":"a","names":["y"]})"),
                  ValidationError);
}

TEST_CASE("candidate type ranking") {
  const Ontology &ont = Toy();
  // language.programming: 0.5 * 1/1 + 0.5 * 2/4 = 0.75
  // language.human_lang and language.generic: 0.5; the deeper type first.
  auto ranked =
      score_candidate_types({"language"}, {"python", "java"}, ont);
  REQUIRE(ranked.size() == 3);
  CHECK(ranked[0].type_id == "language.programming");
  CHECK(ranked[0].score == doctest::Approx(0.75));
  CHECK(ranked[1].type_id == "language.human_lang");
  CHECK(ranked[1].score == doctest::Approx(0.5));
  CHECK(ranked[2].type_id == "language.generic");

  auto human = score_candidate_types({"language"}, {"English", "French"}, ont);
  // generic root lists English as an instance: 0.5 + 0.5 * 1/1 = 1.0;
  // human_lang: 0.5 + 0.5 * 2/4 = 0.75.
  REQUIRE(human.size() == 3);
  CHECK(human[0].type_id == "language.generic");
  CHECK(human[0].score == doctest::Approx(1.0));
  CHECK(human[1].type_id == "language.human_lang");
  CHECK(human[1].score == doctest::Approx(0.75));

  CHECK(score_candidate_types({"spaceship"}, {"x"}, ont).empty());
}

TEST_CASE("coarse types") {
  CHECK(IsCoarseType("food.generic"));
  CHECK_FALSE(IsCoarseType("food.fruit"));
}

}  // TEST_SUITE

}  // namespace
}  // namespace texkit

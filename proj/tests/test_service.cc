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

#include <cstdlib>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "test_util.h"
#include "texkit/errors.h"
#include "texkit/json_schema.h"
#include "texkit/service.h"

namespace texkit {
namespace {

using nlohmann::json;

const Analyzer &Toy() {
  static Analyzer analyzer(testing::ToyModels());
  return analyzer;
}

const json &Schema(const std::string &name) {
  static std::map<std::string, json> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    it = cache.emplace(name, LoadJsonFile(testing::SourcePath("schemas/" + name)))
             .first;
  }
  return it->second;
}

void ExpectValidSingle(const json &response) {
  auto errs = ValidateJsonSchema(response, Schema("analyze_response.schema.json"));
  for (const auto &e : errs) INFO(e);
  CHECK(errs.empty());
}

json StripTimes(json j) {
  if (j.contains("header")) {
    j["header"].erase("time_cost_ms");
    j["header"].erase("core_time_cost_ms");
  }
  return j;
}

const char *kPremiere =
    "Captain Marvel was premiered in Los Angeles 22 months ago.";

json PremiereRequest() {
  return {{"str", kPremiere},
          {"options", {{"reference_time", "2020-12-23"}}}};
}

TEST_SUITE("service") {

TEST_CASE("premiere sentence end to end") {
  json r = Toy().HandleAnalyze(PremiereRequest());
  ExpectValidSingle(r);
  CHECK(r["header"]["ret_code"] == "succ");
  CHECK(r["norm_str"] == kPremiere);
  const json &ents = r["entity_list"];
  REQUIRE(ents.size() == 3);
  CHECK(ents[0]["str"] == "Captain Marvel");
  CHECK(ents[0]["type"]["name"] == "work.movie");
  CHECK(ents[0]["type"]["path"] == "work.generic/work.movie");
  CHECK(ents[1]["str"] == "Los Angeles");
  CHECK(ents[1]["type"]["name"] == "loc.city");
  CHECK(ents[1]["hit"] == json::array({32, 11}));
  CHECK(ents[2]["meaning"] == json::parse(R"({"value":[2019,2]})"));
  CHECK(r["header"]["time_cost_ms"].get<double>() >=
        r["header"]["core_time_cost_ms"].get<double>());
}

TEST_CASE("coarse only path") {
  json req = PremiereRequest();
  req["options"]["ner"] = {{"alg", "coarse.crf"}};
  json r = Toy().HandleAnalyze(req);
  ExpectValidSingle(r);
  bool found = false;
  for (const auto &e : r["entity_list"]) {
    if (e["str"] == "Los Angeles") {
      found = true;
      CHECK(e["type"]["name"] == "loc.generic");
    }
    CHECK(e["str"] != "Captain Marvel");
  }
  CHECK(found);
}

TEST_CASE("disabled modules yield empty values") {
  json req = PremiereRequest();
  req["options"]["word_seg"] = {{"enable", false}};
  req["options"]["ner"] = {{"enable", false}};
  json r = Toy().HandleAnalyze(req);
  ExpectValidSingle(r);
  CHECK(r["word_list"].empty());
  CHECK(r["phrase_list"].empty());
  CHECK(r["entity_list"].empty());
  CHECK(r["syntactic_parsing_str"] == "");
  CHECK(r["srl_str"] == "");
  CHECK(r["cat_list"].empty());
  CHECK(r["norm_str"] == kPremiere);

  req = PremiereRequest();
  req["options"]["pos_tagging"] = {{"enable", false}};
  r = Toy().HandleAnalyze(req);
  ExpectValidSingle(r);
  REQUIRE(!r["word_list"].empty());
  for (const auto &w : r["word_list"]) CHECK(w["tag"] == "");
}

TEST_CASE("batch responses match single responses") {
  std::vector<std::string> texts = {kPremiere, "上个月30号我在洛杉矶吃了三公斤苹果。",
                                    "", "apple juice costs 3 dollars"};
  json req = {{"str", texts}, {"options", {{"reference_time", "2020-12-23"}}}};
  json batch = Toy().HandleAnalyze(req);
  CHECK(ValidateJsonSchema(batch, Schema("analyze_batch_response.schema.json"))
            .empty());
  REQUIRE(batch["res_list"].size() == texts.size());
  for (size_t i = 0; i < texts.size(); ++i) {
    ExpectValidSingle(batch["res_list"][i]);
    json single = Toy().HandleAnalyze(
        {{"str", texts[i]}, {"options", {{"reference_time", "2020-12-23"}}}});
    CHECK(StripTimes(batch["res_list"][i]) == StripTimes(single));
  }
  json empty = Toy().HandleAnalyze({{"str", json::array()}});
  CHECK(empty["res_list"].empty());
}

TEST_CASE("unsupported algorithms and bad requests") {
  auto code = [](const json &req) {
    json r = Toy().HandleAnalyze(req);
    ExpectValidSingle(r);
    return r["header"]["ret_code"].get<std::string>();
  };
  for (const char *alg : {"coarse.dnn", "coarse.lua", "fine.high_acc"}) {
    CHECK(code({{"str", "x"}, {"options", {{"ner", {{"alg", alg}}}}}}) ==
          "error.unsupported_alg");
  }
  for (const char *alg : {"crf", "dnn"}) {
    CHECK(code({{"str", "x"},
                {"options", {{"pos_tagging", {{"alg", alg}}}}}}) ==
          "error.unsupported_alg");
  }
  CHECK(code({{"str", "x"},
              {"options", {{"syntactic_parsing", {{"enable", true}}}}}}) ==
        "error.unsupported_alg");
  CHECK(code({{"str", "x"}, {"options", {{"srl", {{"enable", true}}}}}}) ==
        "error.unsupported_alg");
  CHECK(code({{"options", json::object()}}) == "error.missing_str");
  CHECK(code({{"str", "x"}, {"options", {{"ner", {{"alg", "magic"}}}}}}) ==
        "error.bad_option");
  CHECK(code({{"str", "x"}, {"options", {{"reference_time", "soon"}}}}) ==
        "error.bad_option");
  CHECK(code({{"str", "x"}, {"options", {{"colour", 1}}}}) ==
        "error.bad_option");
  CHECK(code({{"str", 5}}) == "error.bad_request");
  CHECK(code(json::array()) == "error.bad_request");
}

TEST_CASE("raw bodies") {
  auto reply = Toy().AnalyzeBody("{not json");
  CHECK(reply.status == 400);
  json j = json::parse(reply.body);
  ExpectValidSingle(j);
  CHECK(j["header"]["ret_code"] == "error.bad_json");
  reply = Toy().AnalyzeBody(R"({"str":"ÿ ok"})");
  CHECK(reply.status == 200);
  reply = Toy().AnalyzeBody("{\"str\":\"\xff\"}");
  CHECK(reply.status == 400);
}

TEST_CASE("match endpoint") {
  json r = Toy().HandleMatch({{"str_a", "a big city"}, {"str_b", "a large city"}});
  CHECK(ValidateJsonSchema(r, Schema("match_response.schema.json")).empty());
  CHECK(r["score"].get<double>() == doctest::Approx(1.0));
  CHECK(r["alignment"].size() == 3);
  json swapped =
      Toy().HandleMatch({{"str_a", "a large city"}, {"str_b", "a big city"}});
  CHECK(swapped["score"] == r["score"]);
  CHECK(Toy().HandleMatch({{"str_b", "x"}})["header"]["ret_code"] ==
        "error.missing_str_a");
  CHECK(Toy().HandleMatch({{"str_a", "x"}})["header"]["ret_code"] ==
        "error.missing_str_b");
  json esim = Toy().HandleMatch(
      {{"str_a", "x"}, {"str_b", "y"}, {"options", {{"alg", "esim"}}}});
  CHECK(esim["header"]["ret_code"] == "error.unsupported_alg");
  CHECK(ValidateJsonSchema(esim, Schema("match_response.schema.json")).empty());
}

TEST_CASE("option defaults") {
  AnalyzeRequest req = parse_options({{"str", "x"}});
  CHECK_FALSE(req.batch);
  CHECK(req.options.lang == Language::kAuto);
  CHECK(req.options.word_seg);
  CHECK(req.options.pos_tagging);
  CHECK(req.options.ner);
  CHECK(req.options.ner_alg == "fine.std");
  CHECK_FALSE(req.options.syntactic_parsing);
  CHECK_FALSE(req.options.reference_time.has_value());
  CHECK(ResolveLanguage("上个月", Language::kAuto) == Language::kChinese);
  CHECK(ResolveLanguage("hello", Language::kAuto) == Language::kEnglish);
  CHECK(ResolveLanguage("hello", Language::kChinese) == Language::kChinese);
}

TEST_CASE("model directory loading") {
  CHECK_THROWS_AS(ModelSet::Load("/nonexistent/texkit"), LoadError);
  auto m = testing::ToyModels();
  CHECK(m->pos_en.has_value());
  CHECK(m->ner_en.has_value());
  CHECK_FALSE(m->grammar_en.empty());
  CHECK_FALSE(m->clusters.empty());
}

TEST_CASE("config file and environment") {
  ServiceConfig c = LoadServiceConfig("");
  CHECK(c.port == 8080);
  setenv("TEXKIT_PORT", "9123", 1);
  setenv("TEXKIT_THREADS", "2", 1);
  c = LoadServiceConfig("");
  CHECK(c.port == 9123);
  CHECK(c.threads == 2);
  unsetenv("TEXKIT_PORT");
  unsetenv("TEXKIT_THREADS");
  CHECK_THROWS_AS(LoadServiceConfig("/nonexistent/config.json"), LoadError);
}

TEST_CASE("http server round trip") {
  ServiceConfig config;
  config.threads = 2;
  config.max_body_bytes = 4096;
  auto analyzer = std::make_shared<Analyzer>(testing::ToyModels());
  Server server(config, analyzer);
  int port = server.BindEphemeral();
  REQUIRE(port > 0);
  std::thread t([&] { server.RunBound(); });

  httplib::Client client("127.0.0.1", port);
  auto health = client.Get("/healthz");
  REQUIRE(health);
  CHECK(health->status == 200);

  auto res = client.Post("/api/analyze", PremiereRequest().dump(),
                         "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  json body = json::parse(res->body);
  ExpectValidSingle(body);
  CHECK(StripTimes(body) == StripTimes(Toy().HandleAnalyze(PremiereRequest())));

  res = client.Post("/api/analyze", "nope", "application/json");
  REQUIRE(res);
  CHECK(res->status == 400);

  res = client.Post("/api/match_text",
                    R"({"str_a":"big city","str_b":"large city"})",
                    "application/json");
  REQUIRE(res);
  CHECK(json::parse(res->body)["score"].get<double>() ==
        doctest::Approx(1.0));

  std::string huge = json{{"str", std::string(10000, 'a')}}.dump();
  res = client.Post("/api/analyze", huge, "application/json");
  REQUIRE(res);
  CHECK(res->status == 413);

  server.Stop();
  t.join();
}

}  // TEST_SUITE

}  // namespace
}  // namespace texkit

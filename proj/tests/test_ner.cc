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

#include <random>
#include <sstream>

#include "doctest.h"
#include "test_util.h"
#include "texkit/errors.h"
#include "texkit/ner.h"
#include "texkit/segmentation.h"

namespace texkit {
namespace {

EntityMention M(int off, int len, const std::string &type,
                MentionSource src = MentionSource::kFine) {
  EntityMention m;
  m.span = {off, len};
  m.type_id = type;
  m.source = src;
  return m;
}

const Ontology &Ont() { return testing::ToyModels()->ontology; }

std::vector<LabeledSentence> NerFixture() {
  return ReadColumnCorpus(testing::SourcePath("tests/data/ner_bio.tsv"));
}

TEST_SUITE("ner") {

TEST_CASE("hybrid truth table") {
  const Ontology &ont = Ont();
  // "apple" at [0,5).
  auto r = combine_hybrid({M(0, 5, "food.fruit")},
                          {M(0, 5, "food.generic", MentionSource::kCoarse)},
                          ont);
  REQUIRE(r.size() == 1);
  CHECK(r[0].type_id == "food.fruit");
  CHECK(r[0].source == MentionSource::kHybrid);

  r = combine_hybrid({M(0, 5, "org.company")},
                     {M(0, 5, "food.generic", MentionSource::kCoarse)}, ont);
  REQUIRE(r.size() == 1);
  CHECK(r[0].type_id == "food.generic");

  r = combine_hybrid({M(0, 5, "food.fruit")}, {}, ont);
  REQUIRE(r.size() == 1);
  CHECK(r[0].type_id == "food.fruit");
  CHECK(r[0].source == MentionSource::kFine);

  r = combine_hybrid({}, {M(3, 4, "loc.generic", MentionSource::kCoarse)},
                     ont);
  REQUIRE(r.size() == 1);
  CHECK(r[0].type_id == "loc.generic");
  CHECK(r[0].source == MentionSource::kCoarse);
}

TEST_CASE("hybrid partial overlap keeps the coarse span") {
  auto r = combine_hybrid(
      {M(0, 7, "loc.city"), M(20, 3, "food.fruit")},
      {M(4, 6, "org.generic", MentionSource::kCoarse)}, Ont());
  REQUIRE(r.size() == 2);
  CHECK(r[0].span == Span{4, 6});
  CHECK(r[0].type_id == "org.generic");
  CHECK(r[1].span == Span{20, 3});
}

TEST_CASE("f1 variant hand cases") {
  const Ontology &ont = Ont();
  auto pr = f1_variant({M(0, 5, "food.fruit")}, {M(0, 5, "food.fruit")}, ont);
  CHECK(pr.precision == 1.0);
  CHECK(pr.recall == 1.0);
  CHECK(pr.f1 == 1.0);
  pr = f1_variant({M(0, 5, "food.fruit")}, {M(0, 5, "food.generic")}, ont);
  CHECK(pr.precision == 0.5);
  CHECK(pr.recall == 0.5);
  CHECK(pr.f1 == 0.5);
  pr = f1_variant({M(0, 5, "food.fruit")}, {M(0, 5, "org.generic")}, ont);
  CHECK(pr.f1 == 0.0);
  pr = f1_variant({M(0, 5, "food.fruit")}, {M(0, 4, "food.fruit")}, ont);
  CHECK(pr.f1 == 0.0);
  // Only coarse predictions earn partial credit.
  pr = f1_variant({M(0, 5, "food.generic")}, {M(0, 5, "food.fruit")}, ont);
  CHECK(pr.f1 == 0.0);
  pr = f1_variant({}, {}, ont);
  CHECK(pr.f1 == 0.0);
}

TEST_CASE("f1 variant equals standard F1 on fine predictions") {
  const Ontology &ont = Ont();
  std::vector<std::string> fine = {"food.fruit", "loc.city", "work.movie",
                                   "org.company"};
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<EntityMention> gold, pred;
    for (int i = 0; i < 6; ++i) {
      if (rng() % 4) gold.push_back(M(i * 10, 5, fine[rng() % 4]));
      if (rng() % 4) pred.push_back(M(i * 10, 5 + rng() % 2, fine[rng() % 4]));
    }
    size_t tp = 0;
    for (const auto &p : pred) {
      for (const auto &g : gold) {
        tp += p.span == g.span && p.type_id == g.type_id;
      }
    }
    double p = pred.empty() ? 0 : double(tp) / pred.size();
    double r = gold.empty() ? 0 : double(tp) / gold.size();
    double f = p + r == 0 ? 0 : 2 * p * r / (p + r);
    auto got = f1_variant(gold, pred, ont);
    CHECK(got.f1 == doctest::Approx(f).epsilon(1e-12));
  }
}

TEST_CASE("coarse perceptron separates its fixture") {
  auto corpus = NerFixture();
  CHECK(corpus.size() == 10);
  TrainConfig config;
  CoarseModel model = train_coarse(corpus, config);
  CHECK(model.labels().size() == 7);
  MatchCounts counts;
  for (const auto &s : corpus) {
    auto tokens = testing::SymbolTokens(s.words);
    std::string joined;
    for (size_t i = 0; i < s.words.size(); ++i) {
      joined += (i ? " " : "") + s.words[i];
    }
    std::u32string text = DecodeUtf8(joined);
    auto gold = LabelsToMentions(text, tokens, s.labels, MentionSource::kCoarse);
    auto pred = tag_coarse(text, tokens, model);
    counts.add(f1_variant_counts(gold, pred, Ont()));
  }
  CHECK(PrecisionRecallFromCounts(counts).f1 == 1.0);

  CoarseModel again = train_coarse(corpus, config);
  CHECK(again.Serialize() == model.Serialize());
  CHECK(CoarseModel::Deserialize(model.Serialize()).Serialize() ==
        model.Serialize());
}

TEST_CASE("malformed BIO is rejected with its line") {
  std::istringstream in("Paris\tI-loc.generic\n");
  auto bad = ReadColumnCorpus(in);
  try {
    train_coarse(bad, {});
    FAIL("expected DataError");
  } catch (const DataError &e) {
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
  std::istringstream in2("Paris\tB-loc.generic\nFrance\tI-org.generic\n");
  CHECK_THROWS_AS(train_coarse(ReadColumnCorpus(in2), {}), DataError);
  std::istringstream in3("Paris\tB-planet.generic\n");
  CHECK_THROWS_AS(train_coarse(ReadColumnCorpus(in3), {}), DataError);
}

TEST_CASE("labels to mentions") {
  std::u32string text = U"Tom Hanks visited New York";
  auto tokens = testing::SymbolTokens({"Tom", "Hanks", "visited", "New", "York"});
  auto m = LabelsToMentions(
      text, tokens,
      {"B-person.generic", "I-person.generic", "O", "B-loc.generic",
       "I-loc.generic"},
      MentionSource::kCoarse);
  REQUIRE(m.size() == 2);
  CHECK(m[0].surface == "Tom Hanks");
  CHECK(m[0].span == Span{0, 9});
  CHECK(m[1].surface == "New York");
  CHECK(m[1].type_id == "loc.generic");
}

TEST_CASE("unsupervised fine NER on the toy knowledge base") {
  auto models = testing::ToyModels();
  std::string text = "Captain Marvel was premiered in Los Angeles 22 months ago.";
  auto words = segment_words(text, Language::kEnglish);
  auto fine = tag_fine_unsupervised(DecodeUtf8(text), words, models->clusters,
                                    models->embeddings, models->ontology);
  REQUIRE(fine.size() == 2);
  CHECK(fine[0].surface == "Captain Marvel");
  CHECK(fine[0].type_id == "work.movie");
  CHECK(fine[0].source == MentionSource::kFine);
  CHECK(fine[1].surface == "Los Angeles");
  CHECK(fine[1].type_id == "loc.city");
  auto has = [&](const std::vector<std::string> &v, const std::string &x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  CHECK(has(fine[0].related, "Spider-Man"));
  CHECK(has(fine[0].related, "Captain America"));
  CHECK_FALSE(has(fine[0].related, "Captain Marvel"));
}

}  // TEST_SUITE

}  // namespace
}  // namespace texkit

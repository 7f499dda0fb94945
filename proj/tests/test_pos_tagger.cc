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
#include "texkit/pos_tagger.h"

namespace texkit {
namespace {

std::vector<LabeledSentence> Ptb() {
  return ReadColumnCorpus(testing::SourcePath("tests/data/pos_ptb.tsv"));
}

double Accuracy(const PosModel &model,
                const std::vector<LabeledSentence> &corpus) {
  size_t ok = 0, total = 0;
  for (const auto &s : corpus) {
    auto tags = model.Tag(s.words);
    for (size_t i = 0; i < tags.size(); ++i) ok += tags[i] == s.labels[i];
    total += tags.size();
  }
  return static_cast<double>(ok) / total;
}

TEST_SUITE("pos_tagger") {

TEST_CASE("column corpus reader") {
  std::istringstream in("a\tDT\nb\tNN\n\n\nc\tVB\n");
  auto c = ReadColumnCorpus(in);
  REQUIRE(c.size() == 2);
  CHECK(c[0].words == std::vector<std::string>{"a", "b"});
  CHECK(c[1].lines == std::vector<int>{5});
  std::istringstream bad("a\tDT\nnolabel\n");
  try {
    ReadColumnCorpus(bad);
    FAIL("expected DataError");
  } catch (const DataError &e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("fixture treebank is learnable") {
  auto corpus = Ptb();
  CHECK(corpus.size() == 50);
  TrainConfig config;
  config.epochs = 10;
  std::vector<double> losses;
  PosModel model = train_log_linear(corpus, TagSetName::kPtb, config, &losses);
  CHECK(Accuracy(model, corpus) >= 0.99);
  REQUIRE(losses.size() == 10);
  CHECK(losses.back() < losses.front());
  CHECK(model.Tag({"He", "stayed", "in", "San", "Francisco", "."}) ==
        std::vector<std::string>{"PRP", "VBD", "IN", "NNP", "NNP", "."});
}

TEST_CASE("training is deterministic and serialization round trips") {
  auto corpus = Ptb();
  TrainConfig config;
  config.seed = 3;
  PosModel a = train_log_linear(corpus, TagSetName::kPtb, config);
  PosModel b = train_log_linear(corpus, TagSetName::kPtb, config);
  CHECK(a.Serialize() == b.Serialize());
  PosModel c = PosModel::Deserialize(a.Serialize());
  CHECK(c.Serialize() == a.Serialize());
  CHECK(c.Tag({"Mary", "liked", "the", "red", "car", "."}) ==
        a.Tag({"Mary", "liked", "the", "red", "car", "."}));
}

TEST_CASE("invalid training input") {
  auto corpus = Ptb();
  corpus[0].labels[0] = "NOTATAG";
  CHECK_THROWS_AS(train_log_linear(corpus, TagSetName::kPtb, {}), DataError);
  CHECK_THROWS_AS(train_log_linear({}, TagSetName::kPtb, {}), DataError);
  TrainConfig zero;
  zero.epochs = 0;
  CHECK_THROWS_AS(train_log_linear(Ptb(), TagSetName::kPtb, zero),
                  ValidationError);
  CHECK_THROWS_AS(ParseTagSetName("xyz"), ValidationError);
  CHECK_THROWS_AS(PosModel::Deserialize("{}"), LoadError);
}

TEST_CASE("ctb tag set") {
  auto corpus =
      ReadColumnCorpus(testing::SourcePath("tests/data/pos_ctb.tsv"));
  PosModel model = train_log_linear(corpus, TagSetName::kCtb, {});
  CHECK(model.tag_set_name() == TagSetName::kCtb);
  CHECK(Accuracy(model, corpus) >= 0.99);
  // PTB tags are rejected under CTB.
  corpus[0].labels[0] = "PRP";
  CHECK_THROWS_AS(train_log_linear(corpus, TagSetName::kCtb, {}), DataError);
}

TEST_CASE("tag_pos fills tokens") {
  PosModel model = train_log_linear(Ptb(), TagSetName::kPtb, {});
  std::vector<Token> toks = testing::SymbolTokens({"He", "stayed", "."});
  auto tagged = tag_pos(toks, model);
  REQUIRE(tagged.size() == 3);
  CHECK(tagged[0].pos_tag == "PRP");
  CHECK(tagged[2].pos_tag == ".");
  CHECK(tagged[1].span == toks[1].span);
  CHECK(tag_pos({}, model).empty());
}

}  // TEST_SUITE

}  // namespace
}  // namespace texkit

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

#include <map>
#include <sstream>

#include "doctest.h"
#include "test_util.h"
#include "texkit/errors.h"
#include "texkit/knowledge.h"

namespace texkit {
namespace {

IsaMap Extract(const std::vector<std::string> &lines, Language lang,
               const Lexicon &lex = {}) {
  ExtractOptions o;
  o.min_count = 1;
  o.lexicon = lex;
  return extract_isa_pairs(lines, lang, o);
}

TEST_SUITE("knowledge") {

TEST_CASE("english lexical patterns") {
  IsaMap isa = Extract({"We like fruits such as apple, banana and pear."},
                       Language::kEnglish);
  CHECK(isa.count("apple", "fruit") == 1);
  CHECK(isa.count("banana", "fruit") == 1);
  CHECK(isa.count("pear", "fruit") == 1);
  CHECK(isa.size() == 3);

  isa = Extract({"Critics liked films including Titanic and Star Wars."},
                Language::kEnglish);
  CHECK(isa.count("titanic", "film") == 1);
  CHECK(isa.count("star wars", "film") == 1);

  isa = Extract({"Paris, London and other cities were mentioned."},
                Language::kEnglish);
  CHECK(isa.count("paris", "city") == 1);
  CHECK(isa.count("london", "city") == 1);

  isa = Extract({"Spider-Man is a movie."}, Language::kEnglish);
  CHECK(isa.count("spider-man", "movie") == 1);
}

TEST_CASE("chinese lexical patterns") {
  Lexicon lex = {"苹果", "香蕉", "水果", "北京", "城市", "我们", "讨论"};
  IsaMap isa = Extract({"苹果、香蕉等水果都很好吃。"}, Language::kChinese, lex);
  CHECK(isa.count("苹果", "水果") == 1);
  CHECK(isa.count("香蕉", "水果") == 1);
  isa = Extract({"我们讨论了城市(如北京)。"}, Language::kChinese, lex);
  CHECK(isa.count("北京", "城市") == 1);
  isa = Extract({"苹果是一种水果。"}, Language::kChinese, lex);
  CHECK(isa.count("苹果", "水果") == 1);
}

TEST_CASE("pruning and merging counts") {
  IsaMap a = Extract({"fruits such as apple", "fruits such as kiwi"},
                     Language::kEnglish);
  IsaMap b = Extract({"fruits such as apple"}, Language::kEnglish);
  a.merge(b);
  CHECK(a.count("apple", "fruit") == 2);
  a.prune(2);
  CHECK(a.size() == 1);
  CHECK_FALSE(a.contains_hyponym("kiwi"));

  std::stringstream ss;
  SaveIsaMap(a, ss);
  IsaMap back = LoadIsaMap(ss);
  CHECK(back.count("apple", "fruit") == 2);
}

TEST_CASE("singularization") {
  CHECK(SingularizeNoun("movies") == "movie");
  CHECK(SingularizeNoun("cities") == "city");
  CHECK(SingularizeNoun("boxes") == "box");
  CHECK(SingularizeNoun("churches") == "church");
  CHECK(SingularizeNoun("films") == "film");
  CHECK(SingularizeNoun("species") == "species");
  CHECK(SingularizeNoun("bus") == "bus");
  CHECK(SingularizeNoun("glass") == "glass");
}

TEST_CASE("term similarity oracle") {
  EmbeddingStore store(2);
  store.add(EmbeddingTable::kInput, "a", {1, 0});
  store.add(EmbeddingTable::kInput, "b", {0, 1});
  IsaMap isa;
  isa.add("a", "x");
  isa.add("b", "y");
  CollocationStats cooc;
  cooc.unigram_counts = {{"a", 1}, {"b", 1}, {"p", 1}, {"q", 1}};
  cooc.total_unigrams = 4;
  cooc.bigram_counts[{"a", "p"}] = 1;
  cooc.bigram_counts[{"b", "q"}] = 1;

  // No shared hypernyms, orthogonal vectors, disjoint contexts:
  // 0.5 * (0 + 1) / 2 + 0.25 * 0 + 0.25 * 0 = 0.25.
  CHECK(term_similarity("a", "b", store, isa, cooc) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(term_similarity("b", "a", store, isa, cooc) ==
        term_similarity("a", "b", store, isa, cooc));
  CHECK(term_similarity("a", "a", store, isa, cooc) == doctest::Approx(1.0));

  // Only the embedding component is available: weight renormalized to 1.
  CHECK(term_similarity("a", "b", store, IsaMap(), CollocationStats()) ==
        doctest::Approx(0.5));
  // Only the pattern component: Jaccard {x} vs {x, y, z, w} = 1/4.
  IsaMap isa2;
  isa2.add("m", "x");
  for (const char *h : {"x", "y", "z", "w"}) isa2.add("n", h);
  CHECK(term_similarity("m", "n", EmbeddingStore(2), isa2,
                        CollocationStats()) == doctest::Approx(0.25));
  // Nothing known.
  CHECK(term_similarity("u", "v", EmbeddingStore(2), IsaMap(),
                        CollocationStats()) == 0.0);
}

TEST_CASE("average link clustering") {
  IsaMap isa;
  for (const char *m : {"a", "b", "c", "d", "e"}) isa.add(m, "thing");
  std::map<std::pair<std::string, std::string>, double> table = {
      {{"a", "b"}, 0.9}, {{"b", "c"}, 0.7}, {{"a", "c"}, 0.3},
      {{"d", "e"}, 0.8}};
  auto sim = [&](std::string_view x, std::string_view y) {
    std::string s(x), t(y);
    if (s > t) std::swap(s, t);
    auto it = table.find({s, t});
    return it == table.end() ? 0.0 : it->second;
  };
  ClusterOptions opts;
  opts.threshold = 0.6;
  ClusterIndex index = build_clusters(isa, sim, opts);
  // {a, b} then c: average link (0.3 + 0.7) / 2 = 0.5 < 0.6.
  REQUIRE(index.size() == 2);
  std::set<std::vector<std::string>> got;
  for (const auto &[id, c] : index.clusters()) {
    got.insert(c.members);
    CHECK(c.hypernyms == std::vector<std::string>{"thing"});
  }
  CHECK(got.count({"a", "b"}) == 1);
  CHECK(got.count({"d", "e"}) == 1);
  CHECK(index.clusters_of("A") == std::set<int>{index.clusters_of("b")});
  CHECK(index.clusters_of("c").empty());

  opts.seed = 12345;
  opts.threads = 3;
  ClusterIndex again = build_clusters(isa, sim, opts);
  std::stringstream s1, s2;
  SaveClusterIndex(index, s1);
  SaveClusterIndex(again, s2);
  CHECK(s1.str() == s2.str());
}

TEST_CASE("cluster index invariants") {
  CHECK_THROWS_AS(ClusterIndex({{0, {"x"}, {}}}), ValidationError);
  CHECK_THROWS_AS(ClusterIndex({{0, {}, {"a"}}}), ValidationError);
  CHECK_THROWS_AS(ClusterIndex({{0, {"x"}, {"a", "A"}}}), ValidationError);
  CHECK_THROWS_AS(ClusterIndex({{0, {"x"}, {"a"}}, {0, {"y"}, {"b"}}}),
                  ValidationError);
  ClusterIndex ok({{3, {"x"}, {"New York", "Paris"}}});
  CHECK(ok.max_member_words() == 2);
  CHECK(ok.clusters_of("new york") == std::set<int>{3});
}

TEST_CASE("toy clusters") {
  ClusterIndex index = LoadClusterIndex(testing::ToyDir() + "/clusters.jsonl");
  // apple is both a fruit and a company.
  CHECK(index.clusters_of("apple").size() == 2);
  const auto &movies = index.clusters_of("captain marvel");
  REQUIRE(movies.size() == 1);
  const TermCluster &c = index.cluster(*movies.begin());
  CHECK(std::find(c.members.begin(), c.members.end(), "Spider-Man") !=
        c.members.end());
}

}  // TEST_SUITE

}  // namespace
}  // namespace texkit

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

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"
#include "test_util.h"
#include "texkit/text_matching.h"

namespace texkit {
namespace {

// Best total over all injective row -> column maps (or -1 for unused).
double BruteForceAssignment(const std::vector<std::vector<double>> &w) {
  const size_t rows = w.size(), cols = rows ? w[0].size() : 0;
  std::vector<int> perm(std::max(rows, cols));
  std::iota(perm.begin(), perm.end(), 0);
  double best = 0;
  do {
    double total = 0;
    for (size_t r = 0; r < rows; ++r) {
      if (perm[r] < static_cast<int>(cols)) total += w[r][perm[r]];
    }
    best = std::max(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

TEST_SUITE("text_matching") {

TEST_CASE("assignment agrees with brute force") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 300; ++trial) {
    size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
    std::vector<std::vector<double>> w(rows, std::vector<double>(cols));
    for (auto &row : w) {
      for (double &x : row) x = (rng() % 3 == 0) ? 0.0 : u(rng);
    }
    auto pick = MaxWeightAssignment(w);
    REQUIRE(pick.size() == rows);
    double total = 0;
    std::set<int> used;
    for (size_t r = 0; r < rows; ++r) {
      if (pick[r] < 0) continue;
      CHECK(used.insert(pick[r]).second);
      total += w[r][pick[r]];
    }
    CHECK(total == doctest::Approx(BruteForceAssignment(w)).epsilon(1e-9));
  }
}

TEST_CASE("greedy counterexample is solved optimally") {
  // Greedy takes 0.9 + 0.5 = 1.4; the optimum is 0.8 + 0.8 = 1.6.
  std::vector<std::vector<double>> w = {{0.9, 0.8}, {0.8, 0.5}};
  auto pick = MaxWeightAssignment(w);
  CHECK(pick == std::vector<int>{1, 0});
}

TEST_CASE("synonyms and scores") {
  SynonymTable syn({{"big", "large"}, {"city", "town"}});
  CHECK(syn.are_synonyms("Big", "LARGE"));
  CHECK_FALSE(syn.are_synonyms("big", "town"));
  EmbeddingStore store(2);
  auto r = match_score("a big city", "a large town", store, syn,
                       Language::kEnglish);
  CHECK(r.score == doctest::Approx(1.0));
  CHECK(r.alignment.size() == 3);
  r = match_score("a big city", "a large town", store, SynonymTable(),
                  Language::kEnglish);
  // Only "a" links: 2 * 1 / (3 + 3).
  CHECK(r.score == doctest::Approx(1.0 / 3));
  CHECK(match_score("", "", store, syn, Language::kEnglish).score == 1.0);
  CHECK(match_score("", "x", store, syn, Language::kEnglish).score == 0.0);
}

TEST_CASE("embedding links respect the floor") {
  EmbeddingStore store(2);
  store.add(EmbeddingTable::kInput, "cat", {1, 0});
  store.add(EmbeddingTable::kInput, "kitten", {0.8, 0.6});
  store.add(EmbeddingTable::kInput, "car", {0.1, 1});
  SynonymTable syn;
  CHECK(link_weight("cat", "kitten", store, syn) == doctest::Approx(0.8));
  CHECK(link_weight("cat", "cat", store, syn) == 1.0);
  CHECK(link_weight("cat", "unknown", store, syn) == 0.0);
  auto r = match_score("cat", "kitten", store, syn, Language::kEnglish);
  CHECK(r.score == doctest::Approx(0.8));
  MatchOptions high;
  high.link_floor = 0.9;
  CHECK(match_score("cat", "kitten", store, syn, Language::kEnglish, high)
            .score == 0.0);
}

TEST_CASE("symmetry and monotonicity in knowledge") {
  std::vector<std::string> vocab = {"red", "blue", "car", "auto", "fast",
                                    "quick", "slow", "big", "large", "dog"};
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> coord(-1, 1);
  EmbeddingStore store(4);
  for (const auto &w : vocab) {
    std::vector<double> v(4);
    for (double &x : v) x = coord(rng);
    store.add(EmbeddingTable::kInput, w, v);
  }
  auto sentence = [&] {
    std::string s;
    int n = 1 + rng() % 5;
    for (int i = 0; i < n; ++i) s += (i ? " " : "") + vocab[rng() % vocab.size()];
    return s;
  };
  for (int trial = 0; trial < 200; ++trial) {
    std::string a = sentence(), b = sentence();
    SynonymTable syn;
    double before = match_score(a, b, store, syn, Language::kEnglish).score;
    CHECK(before ==
          doctest::Approx(
              match_score(b, a, store, syn, Language::kEnglish).score));
    syn.add_group({vocab[rng() % vocab.size()], vocab[rng() % vocab.size()],
                   vocab[rng() % vocab.size()]});
    double after = match_score(a, b, store, syn, Language::kEnglish).score;
    CHECK(after >= before - 1e-12);
    CHECK(after <= 1.0 + 1e-12);
  }
}

TEST_CASE("match words drop punctuation and lowercase") {
  CHECK(MatchWords("Hello, World!", Language::kEnglish) ==
        std::vector<std::string>{"hello", "world"});
  CHECK(MatchWords("我爱北京。", Language::kChinese).size() == 4);
}

TEST_CASE("synonym and idf tables load") {
  std::istringstream in("# c\nbig\tlarge\thuge\n\nx\n");
  SynonymTable t = LoadSynonymTable(in);
  CHECK(t.groups().size() == 1);
  CHECK(t.are_synonyms("huge", "big"));

  CollocationStats stats;
  stats.unigram_counts = {{"the", 9}, {"rare", 0}};
  stats.total_unigrams = 9;
  IdfTable idf(stats);
  // idf(the) = log(10/10) + 1 = 1; idf(rare) = log(10/1) + 1; scaled by max.
  CHECK(idf.weight("the") ==
        doctest::Approx(1.0 / (std::log(10.0) + 1.0)));
  CHECK(idf.weight("rare") == doctest::Approx(1.0));
  CHECK(idf.weight("unseen") == 1.0);
}

}  // TEST_SUITE

}  // namespace
}  // namespace texkit

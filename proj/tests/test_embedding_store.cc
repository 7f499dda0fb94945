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

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "test_util.h"
#include "texkit/embedding_store.h"
#include "texkit/errors.h"

namespace texkit {
namespace {

TEST_SUITE("embedding_store") {

TEST_CASE("cosine oracle") {
  std::vector<double> a = {1, 2, 3}, b = {4, 5, 6};
  // 32 / (sqrt(14) * sqrt(77))
  CHECK(cosine(a, b) == doctest::Approx(0.9746318461970762).epsilon(1e-12));
  CHECK(cosine(a, a) == doctest::Approx(1.0));
  std::vector<double> z = {0, 0, 0};
  CHECK(cosine(a, z) == 0.0);
  std::vector<double> short_vec = {1, 2};
  CHECK_THROWS_AS(cosine(a, short_vec), DimensionError);
}

TEST_CASE("text format with multi-word terms") {
  std::istringstream in("3 2\nlos angeles 1 0\nnew york 0 1\nParis 0.5 0.5\n");
  EmbeddingStore store;
  ReadEmbeddingTable(in, EmbeddingTable::kInput, &store);
  CHECK(store.dim() == 2);
  CHECK(store.size(EmbeddingTable::kInput) == 3);
  REQUIRE(store.find(EmbeddingTable::kInput, "Los Angeles") != nullptr);
  CHECK((*store.find(EmbeddingTable::kInput, "paris"))[0] == 0.5);
  CHECK(store.find(EmbeddingTable::kOutput, "paris") == nullptr);
}

TEST_CASE("dimension errors") {
  EmbeddingStore store(3);
  CHECK_THROWS_AS(store.add(EmbeddingTable::kInput, "x", {1, 2}),
                  DimensionError);
  std::istringstream bad("1 3\nx 1 2\n");
  EmbeddingStore s2;
  CHECK_THROWS(ReadEmbeddingTable(bad, EmbeddingTable::kInput, &s2));
}

TEST_CASE("multi-word term vectors are word means") {
  EmbeddingStore store(2);
  store.add(EmbeddingTable::kInput, "iron", {1, 0});
  store.add(EmbeddingTable::kInput, "man", {0, 1});
  auto v = term_vector("Iron Man", EmbeddingTable::kInput, store);
  REQUIRE(v.has_value());
  CHECK((*v)[0] == doctest::Approx(0.5));
  CHECK((*v)[1] == doctest::Approx(0.5));
  CHECK_FALSE(term_vector("unknown words", EmbeddingTable::kInput, store));
}

TEST_CASE("toy tables load with a shared dimension") {
  EmbeddingStore store =
      load_embeddings(testing::ToyDir() + "/embeddings.in.txt",
                      testing::ToyDir() + "/embeddings.out.txt");
  CHECK(store.dim() == 8);
  CHECK(store.size(EmbeddingTable::kInput) ==
        store.size(EmbeddingTable::kOutput));
  CHECK(store.find(EmbeddingTable::kOutput, "captain marvel") != nullptr);
}

}  // TEST_SUITE

}  // namespace
}  // namespace texkit

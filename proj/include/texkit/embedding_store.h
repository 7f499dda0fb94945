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

#ifndef TEXKIT_EMBEDDING_STORE_H_
#define TEXKIT_EMBEDDING_STORE_H_

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace texkit {

using Vector = std::vector<double>;

enum class EmbeddingTable { kInput, kOutput };

// Input ("v") and output ("w") word vectors over a shared dimension. Keys are
// stored ASCII-lowercased.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  explicit EmbeddingStore(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  // Throws DimensionError when the vector length differs from dim().
  void add(EmbeddingTable table, std::string_view term, Vector vec);

  const Vector *find(EmbeddingTable table, std::string_view term) const;
  size_t size(EmbeddingTable table) const { return map(table).size(); }

 private:
  using Map = std::unordered_map<std::string, Vector>;
  const Map &map(EmbeddingTable t) const {
    return t == EmbeddingTable::kInput ? input_ : output_;
  }
  Map &map(EmbeddingTable t) {
    return t == EmbeddingTable::kInput ? input_ : output_;
  }

  int dim_ = 0;
  Map input_;
  Map output_;
};

// Text format: a "vocab_size dim" header, then one "term f1 ... fdim" row per
// term. Terms may contain spaces; the last `dim` fields are the vector.
// When `output_path` is empty the input file serves both tables.
EmbeddingStore load_embeddings(const std::string &input_path,
                               const std::string &output_path);

// Reads one table into `store`, which must be empty or share the dimension.
void ReadEmbeddingTable(std::istream &in, EmbeddingTable table,
                        EmbeddingStore *store);

// Stored row for the term; for a multi-word term missing from the
// vocabulary, the mean of its known word vectors. nullopt when nothing is
// known.
std::optional<Vector> term_vector(std::string_view term, EmbeddingTable table,
                                  const EmbeddingStore &store);

// Cosine similarity. A zero vector yields 0. Throws DimensionError on length
// mismatch.
double cosine(std::span<const double> a, std::span<const double> b);

}  // namespace texkit

#endif  // TEXKIT_EMBEDDING_STORE_H_

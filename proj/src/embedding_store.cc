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

#include "texkit/embedding_store.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "texkit/errors.h"
#include "texkit/text.h"

namespace texkit {

void EmbeddingStore::add(EmbeddingTable table, std::string_view term,
                         Vector vec) {
  if (static_cast<int>(vec.size()) != dim_) {
    throw DimensionError("vector for '" + std::string(term) + "' has " +
                         std::to_string(vec.size()) + " entries, expected " +
                         std::to_string(dim_));
  }
  map(table)[AsciiLower(term)] = std::move(vec);
}

const Vector *EmbeddingStore::find(EmbeddingTable table,
                                   std::string_view term) const {
  const Map &m = map(table);
  auto it = m.find(AsciiLower(term));
  return it == m.end() ? nullptr : &it->second;
}

void ReadEmbeddingTable(std::istream &in, EmbeddingTable table,
                        EmbeddingStore *store) {
  std::string line;
  if (!std::getline(in, line)) throw LoadError("empty embedding file");
  std::istringstream header(line);
  long vocab = -1, dim = -1;
  if (!(header >> vocab >> dim) || vocab < 0 || dim <= 0) {
    throw LoadError("bad embedding header: " + line);
  }
  if (store->dim() == 0) {
    *store = EmbeddingStore(static_cast<int>(dim));
  } else if (store->dim() != dim) {
    throw LoadError("embedding dimension mismatch: " + std::to_string(dim) +
                    " vs " + std::to_string(store->dim()));
  }

  long rows = 0;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream ss(line);
    for (std::string f; ss >> f;) fields.push_back(f);
    if (static_cast<long>(fields.size()) < dim + 1) {
      throw LoadError("line " + std::to_string(lineno) + ": expected " +
                      std::to_string(dim) + " values");
    }
    size_t first_value = fields.size() - dim;
    std::string term = fields[0];
    for (size_t k = 1; k < first_value; ++k) term += " " + fields[k];
    Vector vec(dim);
    for (long k = 0; k < dim; ++k) {
      const std::string &f = fields[first_value + k];
      char *end = nullptr;
      vec[k] = std::strtod(f.c_str(), &end);
      if (end != f.c_str() + f.size() || !std::isfinite(vec[k])) {
        throw LoadError("line " + std::to_string(lineno) +
                        ": bad float '" + f + "'");
      }
    }
    store->add(table, term, std::move(vec));
    ++rows;
  }
  if (rows != vocab) {
    throw LoadError("header declares " + std::to_string(vocab) +
                    " rows but file has " + std::to_string(rows));
  }
}

EmbeddingStore load_embeddings(const std::string &input_path,
                               const std::string &output_path) {
  EmbeddingStore store;
  {
    std::ifstream in(input_path);
    if (!in) throw LoadError("cannot open " + input_path);
    ReadEmbeddingTable(in, EmbeddingTable::kInput, &store);
  }
  const std::string &out_path =
      output_path.empty() ? input_path : output_path;
  std::ifstream out(out_path);
  if (!out) throw LoadError("cannot open " + out_path);
  ReadEmbeddingTable(out, EmbeddingTable::kOutput, &store);
  return store;
}

std::optional<Vector> term_vector(std::string_view term, EmbeddingTable table,
                                  const EmbeddingStore &store) {
  if (const Vector *v = store.find(table, term)) return *v;

  std::istringstream ss{std::string(term)};
  Vector sum(store.dim(), 0.0);
  int known = 0;
  int words = 0;
  for (std::string w; ss >> w;) {
    ++words;
    if (const Vector *v = store.find(table, w)) {
      for (int k = 0; k < store.dim(); ++k) sum[k] += (*v)[k];
      ++known;
    }
  }
  if (words < 2 || known == 0) return std::nullopt;
  for (double &x : sum) x /= known;
  return sum;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionError("cosine of vectors with lengths " +
                         std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  }
  double dot = 0, na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  double c = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(c, -1.0, 1.0);
}

}  // namespace texkit

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

// Unsupervised sentence similarity. Words of the two sentences are linked
// one to one, each link weighted by synonymy or embedding cosine, and the
// score is the normalized total link weight.

#ifndef TEXKIT_TEXT_MATCHING_H_
#define TEXKIT_TEXT_MATCHING_H_

#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "texkit/embedding_store.h"
#include "texkit/segmentation.h"
#include "texkit/text.h"

namespace texkit {

// Groups of mutually synonymous terms. A term may sit in several groups.
class SynonymTable {
 public:
  SynonymTable() = default;
  explicit SynonymTable(std::vector<std::vector<std::string>> groups);

  // Adds one group; terms are lowercased.
  void add_group(const std::vector<std::string> &terms);
  bool are_synonyms(std::string_view a, std::string_view b) const;
  const std::vector<std::vector<std::string>> &groups() const {
    return groups_;
  }

 private:
  std::vector<std::vector<std::string>> groups_;
  std::unordered_map<std::string, std::set<size_t>> index_;
};

// One group per line, terms separated by tabs. '#' lines are comments.
SynonymTable LoadSynonymTable(std::istream &in);
SynonymTable LoadSynonymTable(const std::string &path);

// Inverse document frequencies, rescaled so the largest is 1.
class IdfTable {
 public:
  IdfTable() = default;
  // From unigram counts: idf(w) = log((N + 1) / (c(w) + 1)) + 1.
  explicit IdfTable(const CollocationStats &stats);

  // Unseen terms get the maximum (1).
  double weight(std::string_view term) const;
  bool empty() const { return idf_.empty(); }

 private:
  std::unordered_map<std::string, double> idf_;
};

struct MatchOptions {
  double link_floor = 0.3;
  // Multiplies each link by the mean IDF weight of its two words.
  bool use_idf = false;
  const IdfTable *idf = nullptr;
};

struct AlignmentLink {
  int a = 0;  // word index in the first sentence
  int b = 0;  // word index in the second sentence
  double weight = 0;
};

struct MatchResult {
  double score = 0;
  std::vector<AlignmentLink> alignment;  // ordered by `a`
};

// Link weights as used by match_score, before the floor is applied.
double link_weight(std::string_view x, std::string_view y,
                   const EmbeddingStore &store, const SynonymTable &syn);

// Words the sentence is matched on: normalized, segmented, lowercased, with
// punctuation dropped.
std::vector<std::string> MatchWords(std::string_view text, Language lang);

// The alignment is a maximum-weight one-to-one matching over links of at
// least `link_floor`; score = 2 * total / (|A| + |B|), and 1 when both
// sentences are empty. `kAuto` picks the language from the pair's text.
MatchResult match_score(std::string_view a, std::string_view b,
                        const EmbeddingStore &store, const SynonymTable &syn,
                        Language lang, const MatchOptions &options = {});

// Maximum-weight assignment on a non-negative matrix (rows x cols). Returns
// the column chosen for each row, or -1.
std::vector<int> MaxWeightAssignment(
    const std::vector<std::vector<double>> &weights);

}  // namespace texkit

#endif  // TEXKIT_TEXT_MATCHING_H_

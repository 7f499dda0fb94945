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

// Offline knowledge construction: an is-a map extracted from raw text with
// lexical patterns, and hyponym clusters labeled by their hypernyms.

#ifndef TEXKIT_KNOWLEDGE_H_
#define TEXKIT_KNOWLEDGE_H_

#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "texkit/embedding_store.h"
#include "texkit/segmentation.h"
#include "texkit/text.h"

namespace texkit {

struct IsaEntry {
  std::string hyponym;
  std::string hypernym;
  int64_t count = 0;
};

// Hyponym -> hypernym counts. All terms are stored lowercased.
class IsaMap {
 public:
  void add(std::string_view hyponym, std::string_view hypernym,
           int64_t count = 1);
  void merge(const IsaMap &other);
  // Drops pairs seen fewer than `min_count` times.
  void prune(int64_t min_count);

  int64_t count(std::string_view hyponym, std::string_view hypernym) const;
  std::set<std::string> hypernyms_of(std::string_view hyponym) const;
  bool contains_hyponym(std::string_view hyponym) const;
  size_t size() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }

  // Entries ordered by (hyponym, hypernym).
  std::vector<IsaEntry> entries() const;

 private:
  std::map<std::pair<std::string, std::string>, int64_t> counts_;
  std::map<std::string, std::set<std::string>, std::less<>> by_hyponym_;
};

// TSV: hyponym<TAB>hypernym<TAB>count.
void SaveIsaMap(const IsaMap &isa, std::ostream &out);
IsaMap LoadIsaMap(std::istream &in);
IsaMap LoadIsaMap(const std::string &path);

struct ExtractOptions {
  int64_t min_count = 2;
  // Used for Chinese segmentation.
  Lexicon lexicon;
  int threads = 1;
};

// Applies the built-in lexical patterns to every line:
//   en:  X such as Y / X including Y / Y and other X / Y is a X
//   chs: Y等X / X(如Y) / Y是一种X
// Y may be a list ("A, B and C"). Hypernyms are singularized head nouns.
IsaMap extract_isa_pairs(const std::vector<std::string> &corpus, Language lang,
                         const ExtractOptions &options = {});

// English plural -> singular by suffix rules (s / es / ies).
std::string SingularizeNoun(std::string_view word);

struct SimilarityWeights {
  double embedding = 0.5;
  double distributional = 0.25;
  double pattern = 0.25;
};

// Combined term similarity in [0, 1]: rescaled embedding cosine, cosine of
// co-occurrence context vectors, and Jaccard overlap of hypernym sets.
// Components that cannot be computed for a pair are dropped and the
// remaining weights renormalized.
class TermSimilarity {
 public:
  TermSimilarity(const EmbeddingStore *store, const IsaMap *isa,
                 const CollocationStats *cooc,
                 SimilarityWeights weights = {});

  double operator()(std::string_view a, std::string_view b) const;

 private:
  using ContextVector = std::unordered_map<std::string, double>;
  const ContextVector *context(std::string_view term) const;

  const EmbeddingStore *store_;
  const IsaMap *isa_;
  SimilarityWeights weights_;
  std::unordered_map<std::string, ContextVector> contexts_;
};

double term_similarity(std::string_view a, std::string_view b,
                       const EmbeddingStore &store, const IsaMap &isa,
                       const CollocationStats &cooc,
                       const SimilarityWeights &weights = {});

struct TermCluster {
  int cluster_id = 0;
  std::vector<std::string> hypernyms;  // primary label first
  std::vector<std::string> members;
};

class ClusterIndex {
 public:
  ClusterIndex() = default;
  // Validates the cluster invariants and builds the member index.
  explicit ClusterIndex(std::vector<TermCluster> clusters);

  const std::map<int, TermCluster> &clusters() const { return clusters_; }
  const TermCluster &cluster(int id) const;
  // Ids of clusters containing the term (case-insensitive), ascending.
  const std::set<int> &clusters_of(std::string_view term) const;
  const std::unordered_map<std::string, std::set<int>> &member_index() const {
    return member_index_;
  }
  size_t size() const { return clusters_.size(); }
  bool empty() const { return clusters_.empty(); }
  // Longest member, in words, for mention lookup limits.
  int max_member_words() const { return max_member_words_; }

 private:
  std::map<int, TermCluster> clusters_;
  std::unordered_map<std::string, std::set<int>> member_index_;
  int max_member_words_ = 0;
};

// JSONL: {"id":int,"hypernyms":[...],"members":[...]} per line.
void SaveClusterIndex(const ClusterIndex &index, std::ostream &out);
ClusterIndex LoadClusterIndex(std::istream &in);
ClusterIndex LoadClusterIndex(const std::string &path);

struct ClusterOptions {
  double threshold = 0.6;
  int64_t seed = 0;
  int min_cluster_size = 2;
  // Extra hypernyms must cover this fraction of a cluster's members.
  double label_coverage = 0.8;
  int threads = 1;
};

using SimilarityFn = std::function<double(std::string_view, std::string_view)>;

// Average-link agglomerative clustering within each hypernym's hyponym set.
// A hyponym listed under several hypernyms can land in several clusters.
ClusterIndex build_clusters(const IsaMap &isa, const SimilarityFn &sim,
                            const ClusterOptions &options = {});

}  // namespace texkit

#endif  // TEXKIT_KNOWLEDGE_H_

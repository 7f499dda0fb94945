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

// Named entity recognition at two granularities.
//
// Coarse NER is a BIO sequence tagger (averaged structured perceptron with
// Viterbi decoding) over a handful of generic types. Fine NER needs no
// labeled data: a mention found in the cluster index is expanded, and the
// winning cluster's hypernyms pick an ontology type. The hybrid combiner
// keeps the fine type when it is compatible with the coarse one.

#ifndef TEXKIT_NER_H_
#define TEXKIT_NER_H_

#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "texkit/embedding_store.h"
#include "texkit/knowledge.h"
#include "texkit/ontology.h"
#include "texkit/pos_tagger.h"
#include "texkit/text.h"

namespace texkit {

std::vector<std::string> DefaultCoarseTypes();

class CoarseModel {
 public:
  CoarseModel() = default;

  // "O", then B-/I- pairs per type.
  const std::vector<std::string> &labels() const { return labels_; }

  // Best BIO label sequence. `pos_tags` may be empty.
  std::vector<std::string> Decode(
      const std::vector<std::string> &words,
      const std::vector<std::string> &pos_tags = {}) const;

  std::string Serialize() const;
  static CoarseModel Deserialize(std::string_view data);
  static CoarseModel Load(const std::string &path);

 private:
  friend class CoarseTrainer;

  static void Features(const std::vector<std::string> &words,
                       const std::vector<std::string> &pos_tags, size_t i,
                       std::vector<std::string> *out);
  void Emissions(const std::vector<std::string> &words,
                 const std::vector<std::string> &pos_tags,
                 std::vector<std::vector<double>> *scores) const;
  bool Allowed(int prev, int label) const;

  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> features_;
  std::vector<double> weights_;      // features x labels
  std::vector<double> transitions_;  // (labels + 1 start row) x labels
};

// Labels must be well-formed BIO over `types`; an I- label has to follow a
// B- or I- label of the same type.
CoarseModel train_coarse(const std::vector<LabeledSentence> &corpus,
                         const TrainConfig &config,
                         const std::vector<std::string> &types =
                             DefaultCoarseTypes());

// Converts a BIO label sequence to mentions over `tokens`.
std::vector<EntityMention> LabelsToMentions(
    std::u32string_view text, const std::vector<Token> &tokens,
    const std::vector<std::string> &labels, MentionSource source);

std::vector<EntityMention> tag_coarse(std::u32string_view text,
                                      const std::vector<Token> &tokens,
                                      const CoarseModel &model);

struct FineNerOptions {
  int window_radius = 5;
  int top_k = 9;
  int max_mention_tokens = 8;
  TypeScoringWeights type_weights;
};

// Mentions are word n-grams present in the cluster index, taken longest
// first and left to right.
std::vector<EntityMention> tag_fine_unsupervised(
    std::u32string_view text, const std::vector<Token> &words,
    const ClusterIndex &index, const EmbeddingStore &store,
    const Ontology &ont, const FineNerOptions &options = {});

std::vector<EntityMention> combine_hybrid(
    const std::vector<EntityMention> &fine,
    const std::vector<EntityMention> &coarse, const Ontology &ont);

struct MatchCounts {
  double matches = 0;
  size_t gold = 0;
  size_t predicted = 0;
  void add(const MatchCounts &o) {
    matches += o.matches;
    gold += o.gold;
    predicted += o.predicted;
  }
};

struct PrecisionRecall {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// Exact-span matching. An exact type match counts 1; a coarse prediction
// compatible with the gold fine type counts 0.5.
MatchCounts f1_variant_counts(const std::vector<EntityMention> &gold,
                              const std::vector<EntityMention> &pred,
                              const Ontology &ont);
PrecisionRecall PrecisionRecallFromCounts(const MatchCounts &counts);
PrecisionRecall f1_variant(const std::vector<EntityMention> &gold,
                           const std::vector<EntityMention> &pred,
                           const Ontology &ont);

}  // namespace texkit

#endif  // TEXKIT_NER_H_

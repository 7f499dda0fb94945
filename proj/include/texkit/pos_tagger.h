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

// Log-linear (maximum entropy) part-of-speech tagger with greedy left to
// right decoding.

#ifndef TEXKIT_POS_TAGGER_H_
#define TEXKIT_POS_TAGGER_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "texkit/text.h"

namespace texkit {

enum class TagSetName { kPtb, kCtb };

const std::vector<std::string> &TagSetTags(TagSetName name);
TagSetName ParseTagSetName(std::string_view name);  // "ptb" | "ctb"
const char *TagSetNameString(TagSetName name);

struct TrainConfig {
  int epochs = 10;
  double learning_rate = 0.1;
  double l2 = 1e-5;
  uint64_t seed = 0;
};

// One sentence of a column file.
struct LabeledSentence {
  std::vector<std::string> words;
  std::vector<std::string> labels;
  std::vector<int> lines;  // source line of each row
};

// "word<TAB>label" rows, blank line between sentences.
std::vector<LabeledSentence> ReadColumnCorpus(std::istream &in);
std::vector<LabeledSentence> ReadColumnCorpus(const std::string &path);

class PosModel {
 public:
  PosModel() = default;

  TagSetName tag_set_name() const { return tag_set_name_; }
  // Tags seen in training, in declared tag set order.
  const std::vector<std::string> &tags() const { return tags_; }
  size_t num_features() const { return features_.size(); }

  std::vector<std::string> Tag(const std::vector<std::string> &words) const;

  // Deterministic JSON dump ("texkit.pos.v1").
  std::string Serialize() const;
  static PosModel Deserialize(std::string_view data);
  static PosModel Load(const std::string &path);

 private:
  friend class PosTrainer;

  // Feature strings for position i given the two previous tags.
  static void Features(const std::vector<std::string> &words, size_t i,
                       std::string_view prev, std::string_view prev2,
                       std::vector<std::string> *out);
  void Scores(const std::vector<std::string> &feats,
              std::vector<double> *scores) const;

  TagSetName tag_set_name_ = TagSetName::kPtb;
  std::vector<std::string> tags_;
  std::unordered_map<std::string, int> features_;
  std::vector<double> weights_;  // features x tags, row major
};

// Trains by stochastic gradient descent on per-token conditional likelihood
// with L2 regularization. Tokens are visited in a seeded shuffled order.
// `epoch_losses`, when given, receives the regularized mean negative log
// likelihood after each epoch.
PosModel train_log_linear(const std::vector<LabeledSentence> &corpus,
                          TagSetName tag_set, const TrainConfig &config,
                          std::vector<double> *epoch_losses = nullptr);

// Returns copies of `tokens` with pos_tag filled in.
std::vector<Token> tag_pos(const std::vector<Token> &tokens,
                           const PosModel &model);

}  // namespace texkit

#endif  // TEXKIT_POS_TAGGER_H_

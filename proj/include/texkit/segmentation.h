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

// Word- and phrase-level segmentation.
//
// English words follow Unicode word boundaries with punctuation as separate
// tokens. Chinese uses forward maximum matching over a lexicon, with digit
// and Latin runs kept together and other unknown characters split one by one.
// Phrases are runs of adjacent words joined either because the run appears
// in the lexicon or because the word pair is a strong collocation (PMI).

#ifndef TEXKIT_SEGMENTATION_H_
#define TEXKIT_SEGMENTATION_H_

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "texkit/text.h"

namespace texkit {

// Case-insensitive term set. Length is tracked in code points for maximum
// matching.
class Lexicon {
 public:
  Lexicon() = default;
  Lexicon(std::initializer_list<std::string_view> terms) {
    for (auto t : terms) insert(t);
  }

  void insert(std::string_view term);
  bool contains(std::string_view term) const;
  size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  int max_length() const { return max_length_; }
  const std::unordered_set<std::string> &terms() const { return terms_; }

 private:
  std::unordered_set<std::string> terms_;
  int max_length_ = 0;
};

// One term per line; blank lines and '#' comments are skipped.
Lexicon load_lexicon(const std::string &path);

struct CollocationStats {
  std::map<std::string, int64_t> unigram_counts;
  std::map<std::pair<std::string, std::string>, int64_t> bigram_counts;
  int64_t total_unigrams = 0;

  int64_t unigram(const std::string &w) const;
  int64_t bigram(const std::string &a, const std::string &b) const;
  // Adds the counts of `other` (associative and commutative).
  void merge(const CollocationStats &other);
  bool empty() const { return total_unigrams == 0; }
};

// Counts lowercased word tokens of every line. Bigrams never cross lines.
CollocationStats build_collocation_stats(const std::vector<std::string> &lines,
                                         Language lang,
                                         const Lexicon &lexicon = {});

// TSV with a "#unigrams<TAB>total" section of "term<TAB>count" rows followed
// by a "#bigrams" section of "a<TAB>b<TAB>count" rows.
void SaveCollocationStats(const CollocationStats &stats, std::ostream &out);
CollocationStats LoadCollocationStats(std::istream &in);
CollocationStats LoadCollocationStats(const std::string &path);

// Pointwise mutual information in bits; -infinity when the pair is unseen.
double Pmi(const CollocationStats &stats, const std::string &a,
           const std::string &b);

std::vector<Token> segment_words(std::string_view text, Language lang,
                                 const Lexicon &lexicon = {});

struct PhraseOptions {
  double pmi_threshold = 3.0;
  int64_t min_bigram_count = 3;
  int max_phrase_words = 8;
};

// `text` is the string `words` were segmented from.
std::vector<Token> segment_phrases(std::string_view text,
                                   const std::vector<Token> &words,
                                   const CollocationStats &stats,
                                   const Lexicon &lexicon,
                                   const PhraseOptions &options = {});

// True for tokens made only of punctuation or symbols.
bool IsPunctuationToken(std::string_view surface);

}  // namespace texkit

#endif  // TEXKIT_SEGMENTATION_H_

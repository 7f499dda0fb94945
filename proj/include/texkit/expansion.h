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

// Online semantic expansion. Clusters containing a mention are retrieved and
// scored against the mention's context window; the winner's members are the
// related terms.
//
// For mention e with context C (e in C, |C| = m) and cluster L (e in L,
// |L| = n) the cluster score is
//
//   sim(C, L; e) = 1 / ((m-1)(n-1)) * sum_{x in C\{e}, y in L\{e}} cos(v_x, w_y)
//
// where v comes from the input vector table and w from the output table.

#ifndef TEXKIT_EXPANSION_H_
#define TEXKIT_EXPANSION_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "texkit/embedding_store.h"
#include "texkit/knowledge.h"
#include "texkit/text.h"

namespace texkit {

struct MentionContext {
  std::string mention;
  // Context window; contains the mention itself.
  std::vector<std::string> context_terms;
  int window_radius = 5;
};

// Builds the context for words[first..last] from up to `radius` non
// punctuation words on each side.
MentionContext MakeMentionContext(std::u32string_view text,
                                  const std::vector<Token> &words, int first,
                                  int last, int radius = 5);

struct ClusterScore {
  double value = 0;
  // True when m < 2 or n < 2; value is then 0.
  bool degenerate = false;
};

struct ExpansionResult {
  int best_cluster_id = -1;
  std::vector<std::string> related_terms;
  double score = 0;
};

std::vector<const TermCluster *> retrieve_clusters(std::string_view mention,
                                                   const ClusterIndex &index);

ClusterScore cluster_score(const MentionContext &ctx,
                           const TermCluster &cluster,
                           const EmbeddingStore &store);

// Best cluster by score (ties: larger cluster, then smaller id). Related
// terms exclude the mention and are ranked by cos(w_member, v_mention).
std::optional<ExpansionResult> expand(const MentionContext &ctx,
                                      const ClusterIndex &index,
                                      const EmbeddingStore &store,
                                      int top_k = 9);

}  // namespace texkit

#endif  // TEXKIT_EXPANSION_H_

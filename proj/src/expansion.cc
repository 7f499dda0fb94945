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

#include "texkit/expansion.h"

#include <algorithm>
#include <set>

#include "texkit/segmentation.h"

namespace texkit {

MentionContext MakeMentionContext(std::u32string_view text,
                                  const std::vector<Token> &words, int first,
                                  int last, int radius) {
  MentionContext ctx;
  ctx.window_radius = radius;
  Span span{words[first].span.offset,
            words[last].span.end() - words[first].span.offset};
  ctx.mention = SliceCodePoints(text, span);

  std::vector<std::string> left;
  for (int i = first - 1; i >= 0 && static_cast<int>(left.size()) < radius;
       --i) {
    if (!IsPunctuationToken(words[i].surface)) left.push_back(words[i].surface);
  }
  std::reverse(left.begin(), left.end());
  ctx.context_terms = left;
  ctx.context_terms.push_back(ctx.mention);
  int right = 0;
  for (int i = last + 1; i < static_cast<int>(words.size()) && right < radius;
       ++i) {
    if (!IsPunctuationToken(words[i].surface)) {
      ctx.context_terms.push_back(words[i].surface);
      ++right;
    }
  }
  return ctx;
}

std::vector<const TermCluster *> retrieve_clusters(std::string_view mention,
                                                   const ClusterIndex &index) {
  std::vector<const TermCluster *> out;
  for (int id : index.clusters_of(mention)) out.push_back(&index.cluster(id));
  return out;
}

ClusterScore cluster_score(const MentionContext &ctx,
                           const TermCluster &cluster,
                           const EmbeddingStore &store) {
  const std::string e = AsciiLower(ctx.mention);

  // C and L are sets: duplicates and the mention itself are dropped.
  std::vector<std::string> context;
  std::set<std::string> seen{e};
  for (const std::string &c : ctx.context_terms) {
    std::string k = AsciiLower(c);
    if (seen.insert(k).second) context.push_back(k);
  }
  std::vector<std::string> members;
  seen = {e};
  for (const std::string &y : cluster.members) {
    std::string k = AsciiLower(y);
    if (seen.insert(k).second) members.push_back(k);
  }

  ClusterScore result;
  if (context.empty() || members.empty()) {
    result.degenerate = true;
    return result;
  }

  std::vector<std::optional<Vector>> w;
  w.reserve(members.size());
  for (const std::string &y : members) {
    w.push_back(term_vector(y, EmbeddingTable::kOutput, store));
  }
  double sum = 0;
  for (const std::string &x : context) {
    auto v = term_vector(x, EmbeddingTable::kInput, store);
    if (!v) continue;
    for (const auto &wy : w) {
      if (wy) sum += cosine(*v, *wy);
    }
  }
  result.value =
      sum / (static_cast<double>(context.size()) * members.size());
  return result;
}

std::optional<ExpansionResult> expand(const MentionContext &ctx,
                                      const ClusterIndex &index,
                                      const EmbeddingStore &store, int top_k) {
  std::vector<const TermCluster *> candidates =
      retrieve_clusters(ctx.mention, index);
  if (candidates.empty()) return std::nullopt;

  const TermCluster *best = nullptr;
  double best_score = 0;
  for (const TermCluster *c : candidates) {
    double s = cluster_score(ctx, *c, store).value;
    bool better = best == nullptr || s > best_score ||
                  (s == best_score &&
                   (c->members.size() > best->members.size() ||
                    (c->members.size() == best->members.size() &&
                     c->cluster_id < best->cluster_id)));
    if (better) {
      best = c;
      best_score = s;
    }
  }

  ExpansionResult result;
  result.best_cluster_id = best->cluster_id;
  result.score = best_score;

  const std::string e = AsciiLower(ctx.mention);
  auto v_mention = term_vector(ctx.mention, EmbeddingTable::kInput, store);
  struct Ranked {
    size_t order;
    bool has_vec;
    double sim;
    const std::string *term;
  };
  std::vector<Ranked> ranked;
  for (size_t i = 0; i < best->members.size(); ++i) {
    const std::string &m = best->members[i];
    if (AsciiLower(m) == e) continue;
    Ranked r{i, false, 0.0, &m};
    if (v_mention) {
      if (auto w = term_vector(m, EmbeddingTable::kOutput, store)) {
        r.has_vec = true;
        r.sim = cosine(*w, *v_mention);
      }
    }
    ranked.push_back(r);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const Ranked &a, const Ranked &b) {
                     if (a.has_vec != b.has_vec) return a.has_vec;
                     if (a.has_vec && a.sim != b.sim) return a.sim > b.sim;
                     return a.order < b.order;
                   });
  for (const Ranked &r : ranked) {
    if (static_cast<int>(result.related_terms.size()) >= top_k) break;
    result.related_terms.push_back(*r.term);
  }
  return result;
}

}  // namespace texkit

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

#include "texkit/ner.h"

#include <algorithm>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "json.hpp"
#include "texkit/errors.h"
#include "texkit/expansion.h"
#include "texkit/segmentation.h"

namespace texkit {

using nlohmann::json;

std::vector<std::string> DefaultCoarseTypes() {
  return {"person.generic", "loc.generic", "org.generic"};
}

namespace {

std::string WordShape(std::string_view w) {
  std::string shape;
  for (char32_t c : DecodeUtf8(w)) {
    char s;
    if (c >= 'A' && c <= 'Z') {
      s = 'X';
    } else if (c >= 'a' && c <= 'z') {
      s = 'x';
    } else if (c >= '0' && c <= '9') {
      s = 'd';
    } else if (IsHan(c)) {
      s = 'h';
    } else if (c < 0x80) {
      s = static_cast<char>(c);
    } else {
      s = 'u';
    }
    if (shape.empty() || shape.back() != s) shape.push_back(s);
  }
  return shape;
}

std::string Suffix(std::string_view w, size_t k) {
  std::u32string chars = DecodeUtf8(w);
  if (chars.size() < k) return "";
  return EncodeUtf8(std::u32string_view(chars).substr(chars.size() - k));
}

bool IsBegin(const std::string &label) { return label.rfind("B-", 0) == 0; }
bool IsInside(const std::string &label) { return label.rfind("I-", 0) == 0; }
std::string LabelType(const std::string &label) { return label.substr(2); }

}  // namespace

void CoarseModel::Features(const std::vector<std::string> &words,
                           const std::vector<std::string> &pos_tags, size_t i,
                           std::vector<std::string> *out) {
  out->clear();
  const std::string &w = words[i];
  std::string lw = AsciiLower(w);
  auto word_at = [&](long k) -> std::string {
    if (k < 0) return "<s>";
    if (k >= static_cast<long>(words.size())) return "</s>";
    return AsciiLower(words[k]);
  };
  out->push_back("b");
  out->push_back("w=" + w);
  out->push_back("lw=" + lw);
  out->push_back("shape=" + WordShape(w));
  out->push_back("s2=" + Suffix(lw, 2));
  out->push_back("s3=" + Suffix(lw, 3));
  out->push_back("pw=" + word_at(static_cast<long>(i) - 1));
  out->push_back("nw=" + word_at(static_cast<long>(i) + 1));
  out->push_back("pw2=" + word_at(static_cast<long>(i) - 2));
  out->push_back("nw2=" + word_at(static_cast<long>(i) + 2));
  out->push_back("pw|w=" + word_at(static_cast<long>(i) - 1) + "|" + lw);
  out->push_back("w|nw=" + lw + "|" + word_at(static_cast<long>(i) + 1));
  if (i < pos_tags.size() && !pos_tags[i].empty()) {
    out->push_back("pos=" + pos_tags[i]);
  }
}

bool CoarseModel::Allowed(int prev, int label) const {
  const std::string &l = labels_[label];
  if (!IsInside(l)) return true;
  if (prev < 0) return false;
  const std::string &p = labels_[prev];
  return (IsBegin(p) || IsInside(p)) && LabelType(p) == LabelType(l);
}

void CoarseModel::Emissions(const std::vector<std::string> &words,
                            const std::vector<std::string> &pos_tags,
                            std::vector<std::vector<double>> *scores) const {
  const size_t nl = labels_.size();
  scores->assign(words.size(), std::vector<double>(nl, 0.0));
  std::vector<std::string> feats;
  for (size_t i = 0; i < words.size(); ++i) {
    Features(words, pos_tags, i, &feats);
    for (const std::string &f : feats) {
      auto it = features_.find(f);
      if (it == features_.end()) continue;
      const double *row = &weights_[static_cast<size_t>(it->second) * nl];
      for (size_t l = 0; l < nl; ++l) (*scores)[i][l] += row[l];
    }
  }
}

std::vector<std::string> CoarseModel::Decode(
    const std::vector<std::string> &words,
    const std::vector<std::string> &pos_tags) const {
  const size_t n = words.size();
  const int nl = static_cast<int>(labels_.size());
  if (n == 0 || nl == 0) return std::vector<std::string>(n, "O");
  std::vector<std::vector<double>> emit;
  Emissions(words, pos_tags, &emit);

  constexpr double kNeg = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> best(n, std::vector<double>(nl, kNeg));
  std::vector<std::vector<int>> back(n, std::vector<int>(nl, -1));
  const double *start = &transitions_[static_cast<size_t>(nl) * nl];
  for (int l = 0; l < nl; ++l) {
    if (Allowed(-1, l)) best[0][l] = emit[0][l] + start[l];
  }
  for (size_t i = 1; i < n; ++i) {
    for (int l = 0; l < nl; ++l) {
      for (int p = 0; p < nl; ++p) {
        if (best[i - 1][p] == kNeg || !Allowed(p, l)) continue;
        double s = best[i - 1][p] + transitions_[p * nl + l] + emit[i][l];
        if (s > best[i][l]) {
          best[i][l] = s;
          back[i][l] = p;
        }
      }
    }
  }
  int l = static_cast<int>(std::max_element(best[n - 1].begin(),
                                            best[n - 1].end()) -
                           best[n - 1].begin());
  std::vector<std::string> out(n);
  for (size_t i = n; i-- > 0;) {
    out[i] = labels_[l];
    l = back[i][l];
  }
  return out;
}

std::string CoarseModel::Serialize() const {
  const size_t nl = labels_.size();
  json weights = json::object();
  for (const auto &[f, id] : features_) {
    std::vector<double> row(weights_.begin() + id * nl,
                            weights_.begin() + (id + 1) * nl);
    if (std::all_of(row.begin(), row.end(), [](double x) { return x == 0; })) {
      continue;
    }
    weights[f] = row;
  }
  json j = {{"format", "texkit.ner.v1"},
            {"labels", labels_},
            {"transitions", transitions_},
            {"weights", weights}};
  return j.dump() + "\n";
}

CoarseModel CoarseModel::Deserialize(std::string_view data) {
  CoarseModel m;
  try {
    json j = json::parse(data);
    if (j.at("format") != "texkit.ner.v1") {
      throw LoadError("unsupported NER model format");
    }
    m.labels_ = j.at("labels").get<std::vector<std::string>>();
    const size_t nl = m.labels_.size();
    m.transitions_ = j.at("transitions").get<std::vector<double>>();
    if (m.transitions_.size() != (nl + 1) * nl) {
      throw LoadError("bad transition table size");
    }
    for (const auto &[f, row] : j.at("weights").items()) {
      auto values = row.get<std::vector<double>>();
      if (values.size() != nl) throw LoadError("bad weight row for " + f);
      m.features_.emplace(f, static_cast<int>(m.features_.size()));
      m.weights_.insert(m.weights_.end(), values.begin(), values.end());
    }
  } catch (const json::exception &e) {
    throw LoadError(std::string("bad NER model: ") + e.what());
  }
  return m;
}

CoarseModel CoarseModel::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open NER model " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return Deserialize(ss.str());
}

class CoarseTrainer {
 public:
  static CoarseModel Train(const std::vector<LabeledSentence> &corpus,
                           const TrainConfig &config,
                           const std::vector<std::string> &types) {
    if (config.epochs < 1) throw ValidationError("epochs must be >= 1");
    CoarseModel model;
    model.labels_.push_back("O");
    for (const std::string &t : types) {
      model.labels_.push_back("B-" + t);
      model.labels_.push_back("I-" + t);
    }
    std::unordered_map<std::string, int> label_index;
    for (size_t l = 0; l < model.labels_.size(); ++l) {
      label_index[model.labels_[l]] = static_cast<int>(l);
    }

    size_t tokens = 0;
    std::vector<std::vector<int>> gold(corpus.size());
    for (size_t s = 0; s < corpus.size(); ++s) {
      const LabeledSentence &sent = corpus[s];
      for (size_t i = 0; i < sent.labels.size(); ++i) {
        int line = i < sent.lines.size() ? sent.lines[i] : 0;
        auto it = label_index.find(sent.labels[i]);
        if (it == label_index.end()) {
          throw DataError("unknown label '" + sent.labels[i] + "'", line);
        }
        int prev = i == 0 ? -1 : gold[s][i - 1];
        if (!model.Allowed(prev, it->second)) {
          throw DataError("'" + sent.labels[i] +
                              "' does not continue an entity of its type",
                          line);
        }
        gold[s].push_back(it->second);
      }
      tokens += sent.words.size();
    }
    if (tokens == 0) throw DataError("empty training corpus");

    const size_t nl = model.labels_.size();
    std::vector<std::vector<std::vector<int>>> feats(corpus.size());
    std::vector<std::string> strs;
    for (size_t s = 0; s < corpus.size(); ++s) {
      for (size_t i = 0; i < corpus[s].words.size(); ++i) {
        CoarseModel::Features(corpus[s].words, {}, i, &strs);
        std::vector<int> ids;
        for (const std::string &f : strs) {
          auto [it, added] = model.features_.emplace(
              f, static_cast<int>(model.features_.size()));
          ids.push_back(it->second);
        }
        feats[s].push_back(std::move(ids));
      }
    }
    model.weights_.assign(model.features_.size() * nl, 0.0);
    model.transitions_.assign((nl + 1) * nl, 0.0);
    // Running sums for the averaged weights.
    std::vector<double> weight_acc(model.weights_.size(), 0.0);
    std::vector<double> trans_acc(model.transitions_.size(), 0.0);
    double step = 1;

    std::mt19937_64 rng(config.seed);
    std::vector<size_t> order(corpus.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
      for (size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[rng() % i]);
      }
      for (size_t s : order) {
        const auto &words = corpus[s].words;
        if (words.empty()) continue;
        std::vector<std::string> pred_labels = model.Decode(words);
        std::vector<int> pred;
        for (const auto &l : pred_labels) pred.push_back(label_index[l]);
        if (pred != gold[s]) {
          auto update = [&](const std::vector<int> &seq, double delta) {
            for (size_t i = 0; i < seq.size(); ++i) {
              for (int f : feats[s][i]) {
                size_t k = static_cast<size_t>(f) * nl + seq[i];
                model.weights_[k] += delta;
                weight_acc[k] += step * delta;
              }
              size_t prev = i == 0 ? nl : static_cast<size_t>(seq[i - 1]);
              size_t k = prev * nl + seq[i];
              model.transitions_[k] += delta;
              trans_acc[k] += step * delta;
            }
          };
          update(gold[s], 1.0);
          update(pred, -1.0);
        }
        step += 1;
      }
    }

    for (size_t k = 0; k < model.weights_.size(); ++k) {
      model.weights_[k] -= weight_acc[k] / step;
    }
    for (size_t k = 0; k < model.transitions_.size(); ++k) {
      model.transitions_[k] -= trans_acc[k] / step;
    }
    return model;
  }
};

CoarseModel train_coarse(const std::vector<LabeledSentence> &corpus,
                         const TrainConfig &config,
                         const std::vector<std::string> &types) {
  return CoarseTrainer::Train(corpus, config, types);
}

std::vector<EntityMention> LabelsToMentions(
    std::u32string_view text, const std::vector<Token> &tokens,
    const std::vector<std::string> &labels, MentionSource source) {
  std::vector<EntityMention> out;
  size_t i = 0;
  while (i < tokens.size()) {
    if (!IsBegin(labels[i])) {
      ++i;
      continue;
    }
    std::string type = LabelType(labels[i]);
    size_t j = i + 1;
    while (j < tokens.size() && labels[j] == "I-" + type) ++j;
    EntityMention m;
    m.span = {tokens[i].span.offset,
              tokens[j - 1].span.end() - tokens[i].span.offset};
    m.surface = SliceCodePoints(text, m.span);
    m.type_id = type;
    m.source = source;
    out.push_back(std::move(m));
    i = j;
  }
  return out;
}

std::vector<EntityMention> tag_coarse(std::u32string_view text,
                                      const std::vector<Token> &tokens,
                                      const CoarseModel &model) {
  std::vector<std::string> words, tags;
  for (const Token &t : tokens) {
    words.push_back(t.surface);
    tags.push_back(t.pos_tag);
  }
  return LabelsToMentions(text, tokens, model.Decode(words, tags),
                          MentionSource::kCoarse);
}

std::vector<EntityMention> tag_fine_unsupervised(
    std::u32string_view text, const std::vector<Token> &words,
    const ClusterIndex &index, const EmbeddingStore &store,
    const Ontology &ont, const FineNerOptions &options) {
  std::vector<EntityMention> out;
  if (index.empty()) return out;
  const int n = static_cast<int>(words.size());
  int i = 0;
  while (i < n) {
    bool found = false;
    if (!IsPunctuationToken(words[i].surface)) {
      for (int len = std::min(options.max_mention_tokens, n - i); len >= 1;
           --len) {
        int last = i + len - 1;
        if (IsPunctuationToken(words[last].surface)) continue;
        Span span{words[i].span.offset,
                  words[last].span.end() - words[i].span.offset};
        std::string surface = SliceCodePoints(text, span);
        if (index.clusters_of(surface).empty()) continue;

        MentionContext ctx =
            MakeMentionContext(text, words, i, last, options.window_radius);
        auto expansion = expand(ctx, index, store, options.top_k);
        if (!expansion) continue;
        const TermCluster &cluster = index.cluster(expansion->best_cluster_id);
        auto types = score_candidate_types(cluster.hypernyms, cluster.members,
                                           ont, options.type_weights);
        if (types.empty()) continue;

        EntityMention m;
        m.span = span;
        m.surface = surface;
        m.type_id = types.front().type_id;
        m.source = MentionSource::kFine;
        m.related = std::move(expansion->related_terms);
        out.push_back(std::move(m));
        i = last + 1;
        found = true;
        break;
      }
    }
    if (!found) ++i;
  }
  return out;
}

std::vector<EntityMention> combine_hybrid(
    const std::vector<EntityMention> &fine,
    const std::vector<EntityMention> &coarse, const Ontology &ont) {
  auto compatible = [&](const std::string &a, const std::string &b) {
    if (!ont.contains(a) || !ont.contains(b)) return false;
    return is_compatible(a, b, ont);
  };

  std::vector<EntityMention> out;
  std::vector<bool> coarse_used(coarse.size(), false);
  for (const EntityMention &f : fine) {
    bool exact = false, partial = false;
    for (size_t c = 0; c < coarse.size(); ++c) {
      if (coarse[c].span == f.span) {
        exact = true;
        coarse_used[c] = true;
        if (compatible(f.type_id, coarse[c].type_id)) {
          EntityMention m = f;
          m.source = MentionSource::kHybrid;
          out.push_back(std::move(m));
        } else {
          out.push_back(coarse[c]);
        }
        break;
      }
      if (coarse[c].span.overlaps(f.span)) partial = true;
    }
    if (!exact && !partial) out.push_back(f);
  }
  for (size_t c = 0; c < coarse.size(); ++c) {
    if (!coarse_used[c]) out.push_back(coarse[c]);
  }
  std::sort(out.begin(), out.end(),
            [](const EntityMention &a, const EntityMention &b) {
              if (a.span.offset != b.span.offset) {
                return a.span.offset < b.span.offset;
              }
              return a.span.length > b.span.length;
            });
  // Coarse mentions never overlap each other, and fine mentions overlapping
  // a coarse one were dropped above; this pass guards malformed inputs.
  std::vector<EntityMention> result;
  for (EntityMention &m : out) {
    if (!result.empty() && result.back().span.overlaps(m.span)) continue;
    result.push_back(std::move(m));
  }
  return result;
}

MatchCounts f1_variant_counts(const std::vector<EntityMention> &gold,
                              const std::vector<EntityMention> &pred,
                              const Ontology &ont) {
  MatchCounts counts;
  counts.gold = gold.size();
  counts.predicted = pred.size();
  std::vector<bool> used(gold.size(), false);
  for (const EntityMention &p : pred) {
    for (size_t g = 0; g < gold.size(); ++g) {
      if (used[g] || gold[g].span != p.span) continue;
      used[g] = true;
      if (p.type_id == gold[g].type_id) {
        counts.matches += 1.0;
      } else if (IsCoarseType(p.type_id) && ont.contains(p.type_id) &&
                 ont.contains(gold[g].type_id) &&
                 is_compatible(p.type_id, gold[g].type_id, ont)) {
        counts.matches += 0.5;
      }
      break;
    }
  }
  return counts;
}

PrecisionRecall PrecisionRecallFromCounts(const MatchCounts &c) {
  PrecisionRecall r;
  r.precision = c.predicted == 0 ? 0.0 : c.matches / c.predicted;
  r.recall = c.gold == 0 ? 0.0 : c.matches / c.gold;
  r.f1 = (r.precision + r.recall) == 0
             ? 0.0
             : 2 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

PrecisionRecall f1_variant(const std::vector<EntityMention> &gold,
                           const std::vector<EntityMention> &pred,
                           const Ontology &ont) {
  return PrecisionRecallFromCounts(f1_variant_counts(gold, pred, ont));
}

}  // namespace texkit

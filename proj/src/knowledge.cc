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

#include "texkit/knowledge.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <future>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "texkit/errors.h"

namespace texkit {

using nlohmann::json;

// ---------------------------------------------------------------------------
// IsaMap

void IsaMap::add(std::string_view hyponym, std::string_view hypernym,
                 int64_t count) {
  std::string hypo = AsciiLower(hyponym), hyper = AsciiLower(hypernym);
  counts_[{hypo, hyper}] += count;
  by_hyponym_[hypo].insert(hyper);
}

void IsaMap::merge(const IsaMap &other) {
  for (const auto &[key, c] : other.counts_) add(key.first, key.second, c);
}

void IsaMap::prune(int64_t min_count) {
  for (auto it = counts_.begin(); it != counts_.end();) {
    if (it->second < min_count) {
      auto hit = by_hyponym_.find(it->first.first);
      hit->second.erase(it->first.second);
      if (hit->second.empty()) by_hyponym_.erase(hit);
      it = counts_.erase(it);
    } else {
      ++it;
    }
  }
}

int64_t IsaMap::count(std::string_view hyponym,
                      std::string_view hypernym) const {
  auto it = counts_.find({AsciiLower(hyponym), AsciiLower(hypernym)});
  return it == counts_.end() ? 0 : it->second;
}

std::set<std::string> IsaMap::hypernyms_of(std::string_view hyponym) const {
  auto it = by_hyponym_.find(AsciiLower(hyponym));
  return it == by_hyponym_.end() ? std::set<std::string>{} : it->second;
}

bool IsaMap::contains_hyponym(std::string_view hyponym) const {
  return by_hyponym_.find(AsciiLower(hyponym)) != by_hyponym_.end();
}

std::vector<IsaEntry> IsaMap::entries() const {
  std::vector<IsaEntry> out;
  out.reserve(counts_.size());
  for (const auto &[key, c] : counts_) out.push_back({key.first, key.second, c});
  return out;
}

void SaveIsaMap(const IsaMap &isa, std::ostream &out) {
  for (const IsaEntry &e : isa.entries()) {
    out << e.hyponym << "\t" << e.hypernym << "\t" << e.count << "\n";
  }
}

IsaMap LoadIsaMap(std::istream &in) {
  IsaMap isa;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string field; std::getline(ss, field, '\t');) f.push_back(field);
    if (f.size() != 3 || f[0].empty() || f[1].empty()) {
      throw ParseError("expected hyponym<TAB>hypernym<TAB>count", lineno);
    }
    int64_t c;
    try {
      c = std::stoll(f[2]);
    } catch (const std::logic_error &) {
      throw ParseError("bad count '" + f[2] + "'", lineno);
    }
    if (c < 1) throw ParseError("count must be positive", lineno);
    if (isa.count(f[0], f[1]) > 0) {
      throw ParseError("duplicate pair " + f[0] + " / " + f[1], lineno);
    }
    isa.add(f[0], f[1], c);
  }
  return isa;
}

IsaMap LoadIsaMap(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open is-a map " + path);
  return LoadIsaMap(in);
}

// ---------------------------------------------------------------------------
// Pattern extraction

std::string SingularizeNoun(std::string_view word) {
  static const std::unordered_set<std::string> kIeNouns = {
      "movies",   "cookies", "zombies", "pies",     "ties",     "lies",
      "calories", "rookies", "hippies", "genies",   "prairies", "smoothies",
      "selfies",  "brownies", "goalies", "collies", "boogies",  "species",
      "series"};
  std::string w(word);
  auto ends = [&](std::string_view suffix) {
    return w.size() > suffix.size() &&
           w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (w == "species" || w == "series") return w;
  if (kIeNouns.count(w)) return w.substr(0, w.size() - 1);
  if (ends("ies") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  if (ends("sses") || ends("ches") || ends("shes") || ends("xes") ||
      ends("zes")) {
    return w.substr(0, w.size() - 2);
  }
  if (ends("s") && !ends("ss") && !ends("us") && !ends("is") && w.size() > 3) {
    return w.substr(0, w.size() - 1);
  }
  return w;
}

namespace {

const std::unordered_set<std::string> &EnglishStopwords() {
  static const std::unordered_set<std::string> kStop = {
      "a",     "an",    "the",   "this",   "that",   "these",  "those",
      "is",    "are",   "was",   "were",   "be",     "been",   "being",
      "am",    "has",   "have",  "had",    "do",     "does",   "did",
      "will",  "would", "can",   "could",  "should", "may",    "might",
      "must",  "shall", "of",    "in",     "on",     "at",     "by",
      "for",   "with",  "from",  "to",     "into",   "onto",   "over",
      "under", "about", "as",    "than",   "then",   "so",     "but",
      "if",    "or",    "and",   "nor",    "not",    "no",     "very",
      "also",  "such",  "other", "others", "which",  "who",    "whom",
      "whose", "what",  "when",  "where",  "why",    "how",    "it",
      "its",   "they",  "them",  "their",  "he",     "she",    "his",
      "her",   "we",    "our",   "you",    "your",   "i",      "me",
      "my",    "there", "here",  "all",    "some",   "any",    "each",
      "many",  "much",  "more",  "most",   "few",    "several", "both",
      "either", "neither", "including", "like", "include", "includes"};
  return kStop;
}

struct PatternToken {
  std::string lower;
  Span span;
  bool punct = false;
  bool stop = false;
  bool content() const { return !punct && !stop; }
};

class EnglishExtractor {
 public:
  EnglishExtractor(std::u32string_view text, const std::vector<Token> &words)
      : text_(text) {
    for (const Token &w : words) {
      PatternToken t;
      t.lower = AsciiLower(w.surface);
      t.span = w.span;
      t.punct = IsPunctuationToken(w.surface);
      t.stop = EnglishStopwords().count(t.lower) > 0;
      toks_.push_back(std::move(t));
    }
  }

  void Run(IsaMap *out) {
    const int n = static_cast<int>(toks_.size());
    for (int i = 0; i < n; ++i) {
      const std::string &w = toks_[i].lower;
      if (w == "such" && At(i + 1) == "as") {
        Emit(ListForward(i + 2), HeadBefore(i), out);
      } else if (w == "including") {
        Emit(ListForward(i + 1), HeadBefore(i), out);
      } else if ((w == "and" || w == "or") && At(i + 1) == "other") {
        Emit(ListBackward(i - 1), HeadAfter(i + 2), out);
      } else if ((w == "is" || w == "was") &&
                 (At(i + 1) == "a" || At(i + 1) == "an")) {
        std::vector<std::string> y;
        int start = ContentBackward(i - 1);
        if (start <= i - 1) y.push_back(Surface(start, i - 1));
        Emit(y, HeadAfter(i + 2), out);
      }
    }
  }

 private:
  std::string At(int i) const {
    return i >= 0 && i < static_cast<int>(toks_.size()) ? toks_[i].lower : "";
  }

  bool Adjacent(int i, int j) const {
    return toks_[i].span.end() == toks_[j].span.offset;
  }

  // Joiners such as '-' bind content tokens written without spaces.
  bool IsJoiner(int i) const {
    const std::string &w = toks_[i].lower;
    return toks_[i].punct &&
           (w == "-" || w == "'" || w == "." || w == "&" || w == ":");
  }

  std::string Surface(int first, int last) const {
    Span s{toks_[first].span.offset,
           toks_[last].span.end() - toks_[first].span.offset};
    return AsciiLower(SliceCodePoints(text_, s));
  }

  // Index one past the content run starting at p.
  int ContentForward(int p) const {
    const int n = static_cast<int>(toks_.size());
    int q = p;
    while (q < n) {
      if (toks_[q].content()) {
        ++q;
      } else if (q > p && IsJoiner(q) && q + 1 < n &&
                 toks_[q + 1].content() && Adjacent(q - 1, q) &&
                 Adjacent(q, q + 1)) {
        q += 2;
      } else {
        break;
      }
    }
    return q;
  }

  // First index of the content run ending at p (p + 1 when empty).
  int ContentBackward(int p) const {
    int q = p;
    while (q >= 0) {
      if (toks_[q].content()) {
        --q;
      } else if (q < p && IsJoiner(q) && q - 1 >= 0 &&
                 toks_[q - 1].content() && Adjacent(q - 1, q) &&
                 Adjacent(q, q + 1)) {
        q -= 2;
      } else {
        break;
      }
    }
    return q + 1;
  }

  std::vector<std::string> ListForward(int p) const {
    const int n = static_cast<int>(toks_.size());
    std::vector<std::string> items;
    while (p < n) {
      while (p < n && (toks_[p].lower == "the" || toks_[p].lower == "a" ||
                       toks_[p].lower == "an")) {
        ++p;
      }
      int end = ContentForward(p);
      if (end == p) break;
      items.push_back(Surface(p, end - 1));
      p = end;
      if (p < n && toks_[p].lower == ",") {
        ++p;
        if (p < n && (toks_[p].lower == "and" || toks_[p].lower == "or")) ++p;
      } else if (p < n && (toks_[p].lower == "and" || toks_[p].lower == "or")) {
        ++p;
      } else {
        break;
      }
    }
    return items;
  }

  std::vector<std::string> ListBackward(int p) const {
    std::vector<std::string> items;
    while (p >= 0) {
      int start = ContentBackward(p);
      if (start > p) break;
      items.push_back(Surface(start, p));
      p = start - 1;
      if (p >= 0 && toks_[p].lower == ",") {
        --p;
      } else {
        break;
      }
    }
    std::reverse(items.begin(), items.end());
    return items;
  }

  // Head noun immediately before a pattern keyword ("movies such as").
  std::string HeadBefore(int i) const {
    int j = i - 1;
    if (j >= 0 && toks_[j].lower == ",") --j;
    if (j < 0 || !toks_[j].content()) return "";
    return SingularizeNoun(toks_[j].lower);
  }

  // Last noun of the content run starting at p ("other famous movies").
  std::string HeadAfter(int p) const {
    const int n = static_cast<int>(toks_.size());
    int last = -1;
    for (int q = p; q < n && toks_[q].content(); ++q) {
      const std::string &w = toks_[q].lower;
      bool verb_like = w.size() > 4 && (w.ends_with("ed") || w.ends_with("ing"));
      if (verb_like && last >= 0) break;
      last = q;
    }
    return last < 0 ? "" : SingularizeNoun(toks_[last].lower);
  }

  static void Emit(const std::vector<std::string> &hyponyms,
                   const std::string &hypernym, IsaMap *out) {
    if (hypernym.empty()) return;
    for (const std::string &y : hyponyms) {
      if (!y.empty() && y != hypernym) out->add(y, hypernym);
    }
  }

  std::u32string_view text_;
  std::vector<PatternToken> toks_;
};

class ChineseExtractor {
 public:
  explicit ChineseExtractor(const std::vector<Token> &words) {
    for (const Token &w : words) {
      toks_.push_back(w.surface);
      single_.push_back(CodePointLength(w.surface) == 1);
    }
  }

  void Run(IsaMap *out) {
    const int n = static_cast<int>(toks_.size());
    for (int i = 0; i < n; ++i) {
      const std::string &w = toks_[i];
      if (w == "等" && i > 0) {
        Emit(ItemsBackward(i - 1), NounForward(i + 1), out);
      } else if (w == "(" && At(i + 1) == "如") {
        int close = i + 2;
        while (close < n && toks_[close] != ")") ++close;
        if (close == n) continue;
        Emit(ItemsForward(i + 2, close), NounBackward(i - 1), out);
      } else if (w == "是") {
        int p = -1;
        if (At(i + 1) == "一种") {
          p = i + 2;
        } else if (At(i + 1) == "一" && At(i + 2) == "种") {
          p = i + 3;
        }
        if (p < 0) continue;
        std::vector<std::string> y;
        std::string item = ItemBackward(i - 1, nullptr);
        if (!item.empty()) y.push_back(item);
        Emit(y, NounForward(p), out);
      }
    }
  }

 private:
  static bool IsSeparator(const std::string &w) {
    return w == "、" || w == "和" || w == "与" || w == "及" || w == "以及";
  }
  static bool IsFunction(const std::string &w) {
    static const std::unordered_set<std::string> kFunction = {
        "我", "你", "他", "她", "它", "的", "是", "在", "了", "有", "很",
        "也", "都", "就", "还", "又", "被", "把", "让", "给", "对", "向",
        "从", "吗", "呢", "吧", "啊", "喜欢", "这", "那", "等", "如", "种"};
    return kFunction.count(w) > 0;
  }
  bool Boundary(int i) const {
    return IsPunctuationToken(toks_[i]) || IsSeparator(toks_[i]) ||
           IsFunction(toks_[i]);
  }
  std::string At(int i) const {
    return i >= 0 && i < static_cast<int>(toks_.size()) ? toks_[i] : "";
  }

  // One item ending at p: a single lexicon word, or a run of unknown single
  // characters. Sets *start to the item's first index.
  std::string ItemBackward(int p, int *start) const {
    if (p < 0 || Boundary(p)) return "";
    int q = p;
    if (single_[p]) {
      while (q - 1 >= 0 && single_[q - 1] && !Boundary(q - 1)) --q;
    }
    if (start) *start = q;
    std::string s;
    for (int k = q; k <= p; ++k) s += toks_[k];
    return s;
  }

  std::vector<std::string> ItemsBackward(int p) const {
    std::vector<std::string> items;
    while (p >= 0) {
      int start = p + 1;
      std::string item = ItemBackward(p, &start);
      if (item.empty()) break;
      items.push_back(item);
      p = start - 1;
      if (p >= 0 && IsSeparator(toks_[p])) {
        --p;
      } else {
        break;
      }
    }
    std::reverse(items.begin(), items.end());
    return items;
  }

  std::vector<std::string> ItemsForward(int p, int end) const {
    std::vector<std::string> items;
    std::string cur;
    for (int k = p; k < end; ++k) {
      if (IsSeparator(toks_[k]) || IsPunctuationToken(toks_[k])) {
        if (!cur.empty()) items.push_back(cur);
        cur.clear();
      } else {
        cur += toks_[k];
      }
    }
    if (!cur.empty()) items.push_back(cur);
    return items;
  }

  // The noun right after a pattern keyword: a lexicon word, or a run of
  // unknown characters up to a function word.
  std::string NounForward(int p) const {
    const int n = static_cast<int>(toks_.size());
    if (p >= n || Boundary(p)) return "";
    if (!single_[p]) {
      // Trailing word of a compound run ("热带 水果" -> 水果).
      int q = p;
      while (q + 1 < n && !single_[q + 1] && !Boundary(q + 1)) ++q;
      return toks_[q];
    }
    std::string s;
    for (int q = p; q < n && single_[q] && !Boundary(q); ++q) s += toks_[q];
    return s;
  }

  std::string NounBackward(int p) const {
    if (p < 0 || Boundary(p)) return "";
    if (!single_[p]) return toks_[p];
    return ItemBackward(p, nullptr);
  }

  static void Emit(const std::vector<std::string> &hyponyms,
                   const std::string &hypernym, IsaMap *out) {
    if (hypernym.empty()) return;
    for (const std::string &y : hyponyms) {
      if (!y.empty() && y != hypernym) out->add(y, hypernym);
    }
  }

  std::vector<std::string> toks_;
  std::vector<bool> single_;
};

IsaMap ExtractRange(const std::vector<std::string> &corpus, size_t begin,
                    size_t end, Language lang, const Lexicon &lexicon) {
  IsaMap isa;
  for (size_t i = begin; i < end; ++i) {
    std::string text = normalize_text(corpus[i]);
    std::vector<Token> words = segment_words(text, lang, lexicon);
    if (lang == Language::kChinese) {
      ChineseExtractor(words).Run(&isa);
    } else {
      std::u32string chars = DecodeUtf8(text);
      EnglishExtractor(chars, words).Run(&isa);
    }
  }
  return isa;
}

}  // namespace

IsaMap extract_isa_pairs(const std::vector<std::string> &corpus, Language lang,
                         const ExtractOptions &options) {
  if (lang == Language::kAuto) {
    throw ValidationError("extract_isa_pairs needs a resolved language");
  }
  IsaMap isa;
  int threads = std::max(1, options.threads);
  if (threads == 1 || corpus.size() < 64) {
    isa = ExtractRange(corpus, 0, corpus.size(), lang, options.lexicon);
  } else {
    std::vector<std::future<IsaMap>> parts;
    size_t chunk = (corpus.size() + threads - 1) / threads;
    for (size_t b = 0; b < corpus.size(); b += chunk) {
      size_t e = std::min(corpus.size(), b + chunk);
      parts.push_back(std::async(std::launch::async, ExtractRange,
                                 std::cref(corpus), b, e, lang,
                                 std::cref(options.lexicon)));
    }
    for (auto &f : parts) isa.merge(f.get());
  }
  isa.prune(options.min_count);
  return isa;
}

// ---------------------------------------------------------------------------
// Term similarity

TermSimilarity::TermSimilarity(const EmbeddingStore *store, const IsaMap *isa,
                               const CollocationStats *cooc,
                               SimilarityWeights weights)
    : store_(store), isa_(isa), weights_(weights) {
  if (cooc) {
    for (const auto &[pair, c] : cooc->bigram_counts) {
      contexts_[pair.first]["R:" + pair.second] += static_cast<double>(c);
      contexts_[pair.second]["L:" + pair.first] += static_cast<double>(c);
    }
  }
}

const TermSimilarity::ContextVector *TermSimilarity::context(
    std::string_view term) const {
  auto it = contexts_.find(AsciiLower(term));
  return it == contexts_.end() ? nullptr : &it->second;
}

double TermSimilarity::operator()(std::string_view a,
                                  std::string_view b) const {
  double total = 0;
  double weight = 0;

  if (store_ && store_->dim() > 0 && weights_.embedding > 0) {
    auto va = term_vector(a, EmbeddingTable::kInput, *store_);
    auto vb = term_vector(b, EmbeddingTable::kInput, *store_);
    if (va && vb) {
      total += weights_.embedding * (cosine(*va, *vb) + 1.0) / 2.0;
      weight += weights_.embedding;
    }
  }

  if (weights_.distributional > 0) {
    const ContextVector *ca = context(a);
    const ContextVector *cb = context(b);
    if (ca && cb) {
      // Iterate the smaller map so that the sum is the same in both orders.
      const ContextVector &small = ca->size() <= cb->size() ? *ca : *cb;
      const ContextVector &large = ca->size() <= cb->size() ? *cb : *ca;
      std::vector<std::pair<std::string, double>> shared;
      for (const auto &[k, v] : small) {
        auto it = large.find(k);
        if (it != large.end()) shared.emplace_back(k, v * it->second);
      }
      std::sort(shared.begin(), shared.end());
      double dot = 0;
      for (const auto &s : shared) dot += s.second;
      auto norm = [](const ContextVector &cv) {
        std::vector<double> vals;
        for (const auto &kv : cv) vals.push_back(kv.second * kv.second);
        std::sort(vals.begin(), vals.end());
        double s = 0;
        for (double x : vals) s += x;
        return std::sqrt(s);
      };
      double na = norm(*ca), nb = norm(*cb);
      double c = (na > 0 && nb > 0) ? dot / (na * nb) : 0.0;
      total += weights_.distributional * std::clamp(c, 0.0, 1.0);
      weight += weights_.distributional;
    }
  }

  if (isa_ && weights_.pattern > 0) {
    std::set<std::string> ha = isa_->hypernyms_of(a);
    std::set<std::string> hb = isa_->hypernyms_of(b);
    if (!ha.empty() && !hb.empty()) {
      size_t inter = 0;
      for (const auto &h : ha) inter += hb.count(h);
      size_t uni = ha.size() + hb.size() - inter;
      total += weights_.pattern * static_cast<double>(inter) / uni;
      weight += weights_.pattern;
    }
  }

  if (weight == 0) return 0.0;
  return std::clamp(total / weight, 0.0, 1.0);
}

double term_similarity(std::string_view a, std::string_view b,
                       const EmbeddingStore &store, const IsaMap &isa,
                       const CollocationStats &cooc,
                       const SimilarityWeights &weights) {
  return TermSimilarity(&store, &isa, &cooc, weights)(a, b);
}

// ---------------------------------------------------------------------------
// Clusters

ClusterIndex::ClusterIndex(std::vector<TermCluster> clusters) {
  for (TermCluster &c : clusters) {
    if (c.members.empty()) {
      throw ValidationError("cluster " + std::to_string(c.cluster_id) +
                            " has no members");
    }
    if (c.hypernyms.empty()) {
      throw ValidationError("cluster " + std::to_string(c.cluster_id) +
                            " has no hypernyms");
    }
    std::set<std::string> seen;
    for (const std::string &m : c.members) {
      if (!seen.insert(AsciiLower(m)).second) {
        throw ValidationError("cluster " + std::to_string(c.cluster_id) +
                              " repeats member " + m);
      }
      member_index_[AsciiLower(m)].insert(c.cluster_id);
      int words = 1;
      for (char ch : m) words += ch == ' ';
      max_member_words_ = std::max(max_member_words_, words);
    }
    int id = c.cluster_id;
    if (!clusters_.emplace(id, std::move(c)).second) {
      throw ValidationError("duplicate cluster id " + std::to_string(id));
    }
  }
}

const TermCluster &ClusterIndex::cluster(int id) const {
  auto it = clusters_.find(id);
  if (it == clusters_.end()) {
    throw LookupError("unknown cluster id " + std::to_string(id));
  }
  return it->second;
}

const std::set<int> &ClusterIndex::clusters_of(std::string_view term) const {
  static const std::set<int> kEmpty;
  auto it = member_index_.find(AsciiLower(term));
  return it == member_index_.end() ? kEmpty : it->second;
}

void SaveClusterIndex(const ClusterIndex &index, std::ostream &out) {
  for (const auto &[id, c] : index.clusters()) {
    json j = {{"id", id}, {"hypernyms", c.hypernyms}, {"members", c.members}};
    out << j.dump() << "\n";
  }
}

ClusterIndex LoadClusterIndex(std::istream &in) {
  std::vector<TermCluster> clusters;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      json j = json::parse(line);
      TermCluster c;
      c.cluster_id = j.at("id").get<int>();
      c.hypernyms = j.at("hypernyms").get<std::vector<std::string>>();
      c.members = j.at("members").get<std::vector<std::string>>();
      clusters.push_back(std::move(c));
    } catch (const json::exception &e) {
      throw ParseError(std::string("bad cluster record: ") + e.what(), lineno);
    }
  }
  return ClusterIndex(std::move(clusters));
}

ClusterIndex LoadClusterIndex(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open cluster file " + path);
  return LoadClusterIndex(in);
}

namespace {

struct HypernymGroup {
  std::string hypernym;
  std::vector<std::string> hyponyms;  // (count desc, lexicographic)
};

// Greedy average-link merging. Returns member lists in group order.
std::vector<std::vector<std::string>> ClusterGroup(const HypernymGroup &group,
                                                   const SimilarityFn &sim,
                                                   double threshold) {
  const size_t n = group.hyponyms.size();
  std::vector<std::vector<double>> link(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      link[i][j] = link[j][i] = sim(group.hyponyms[i], group.hyponyms[j]);
    }
  }

  // Cluster k lives at slot k; merged slots are emptied. link[a][b] holds
  // the summed similarity between the members of slots a and b.
  std::vector<std::vector<size_t>> members(n);
  for (size_t i = 0; i < n; ++i) members[i] = {i};
  while (true) {
    double best = -1;
    size_t ba = 0, bb = 0;
    for (size_t a = 0; a < n; ++a) {
      if (members[a].empty()) continue;
      for (size_t b = a + 1; b < n; ++b) {
        if (members[b].empty()) continue;
        double avg = link[a][b] /
                     static_cast<double>(members[a].size() * members[b].size());
        if (avg > best) {
          best = avg;
          ba = a;
          bb = b;
        }
      }
    }
    if (best < threshold) break;
    for (size_t c = 0; c < n; ++c) {
      if (c == ba || c == bb || members[c].empty()) continue;
      link[ba][c] += link[bb][c];
      link[c][ba] = link[ba][c];
    }
    members[ba].insert(members[ba].end(), members[bb].begin(),
                       members[bb].end());
    std::sort(members[ba].begin(), members[ba].end());
    members[bb].clear();
  }

  std::vector<std::vector<std::string>> out;
  for (const auto &m : members) {
    if (m.empty()) continue;
    std::vector<std::string> terms;
    for (size_t i : m) terms.push_back(group.hyponyms[i]);
    out.push_back(std::move(terms));
  }
  return out;
}

}  // namespace

ClusterIndex build_clusters(const IsaMap &isa, const SimilarityFn &sim,
                            const ClusterOptions &options) {
  // Seed is part of the interface contract; the merge order is fully fixed
  // by the (count desc, lexicographic) ordering, so nothing is drawn from it.
  (void)options.seed;

  std::map<std::string, int64_t> hyper_total;
  std::map<std::string, std::vector<std::pair<int64_t, std::string>>> by_hyper;
  for (const IsaEntry &e : isa.entries()) {
    hyper_total[e.hypernym] += e.count;
    by_hyper[e.hypernym].emplace_back(e.count, e.hyponym);
  }
  std::vector<HypernymGroup> groups;
  for (auto &[h, list] : by_hyper) {
    std::sort(list.begin(), list.end(), [](const auto &a, const auto &b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    HypernymGroup g;
    g.hypernym = h;
    for (auto &p : list) g.hyponyms.push_back(p.second);
    groups.push_back(std::move(g));
  }
  std::sort(groups.begin(), groups.end(),
            [&](const HypernymGroup &a, const HypernymGroup &b) {
              int64_t ca = hyper_total[a.hypernym], cb = hyper_total[b.hypernym];
              if (ca != cb) return ca > cb;
              return a.hypernym < b.hypernym;
            });

  std::vector<std::vector<std::vector<std::string>>> results(groups.size());
  int threads = std::max(1, options.threads);
  if (threads == 1) {
    for (size_t g = 0; g < groups.size(); ++g) {
      results[g] = ClusterGroup(groups[g], sim, options.threshold);
    }
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::future<void>> workers;
    for (int t = 0; t < threads; ++t) {
      workers.push_back(std::async(std::launch::async, [&] {
        for (size_t g = next++; g < groups.size(); g = next++) {
          results[g] = ClusterGroup(groups[g], sim, options.threshold);
        }
      }));
    }
    for (auto &w : workers) w.get();
  }

  std::vector<TermCluster> clusters;
  std::map<std::vector<std::string>, size_t> by_members;
  for (size_t g = 0; g < groups.size(); ++g) {
    const std::string &primary = groups[g].hypernym;
    for (const auto &members : results[g]) {
      if (static_cast<int>(members.size()) < options.min_cluster_size) continue;

      std::map<std::string, int> coverage;
      for (const std::string &m : members) {
        for (const std::string &h : isa.hypernyms_of(m)) ++coverage[h];
      }
      std::vector<std::pair<int, std::string>> extra;
      for (const auto &[h, c] : coverage) {
        if (h == primary) continue;
        if (c >= options.label_coverage * members.size()) {
          extra.emplace_back(c, h);
        }
      }
      std::sort(extra.begin(), extra.end(), [](const auto &a, const auto &b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
      });

      std::vector<std::string> key = members;
      std::sort(key.begin(), key.end());
      auto dup = by_members.find(key);
      if (dup != by_members.end()) {
        // Same member set under another hypernym: fold the label in.
        auto &labels = clusters[dup->second].hypernyms;
        if (std::find(labels.begin(), labels.end(), primary) == labels.end()) {
          labels.push_back(primary);
        }
        continue;
      }
      TermCluster c;
      c.cluster_id = static_cast<int>(clusters.size());
      c.hypernyms.push_back(primary);
      for (auto &e : extra) c.hypernyms.push_back(e.second);
      c.members = members;
      by_members.emplace(std::move(key), clusters.size());
      clusters.push_back(std::move(c));
    }
  }
  return ClusterIndex(std::move(clusters));
}

}  // namespace texkit

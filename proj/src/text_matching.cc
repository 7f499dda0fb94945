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

#include "texkit/text_matching.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "texkit/errors.h"

namespace texkit {

SynonymTable::SynonymTable(std::vector<std::vector<std::string>> groups) {
  for (const auto &g : groups) add_group(g);
}

void SynonymTable::add_group(const std::vector<std::string> &terms) {
  std::vector<std::string> group;
  for (const std::string &t : terms) {
    std::string k = AsciiLower(t);
    if (!k.empty() && std::find(group.begin(), group.end(), k) == group.end()) {
      group.push_back(std::move(k));
    }
  }
  if (group.size() < 2) return;
  const size_t id = groups_.size();
  for (const std::string &t : group) index_[t].insert(id);
  groups_.push_back(std::move(group));
}

bool SynonymTable::are_synonyms(std::string_view a, std::string_view b) const {
  auto ia = index_.find(AsciiLower(a));
  auto ib = index_.find(AsciiLower(b));
  if (ia == index_.end() || ib == index_.end()) return false;
  for (size_t g : ia->second) {
    if (ib->second.count(g)) return true;
  }
  return false;
}

SynonymTable LoadSynonymTable(std::istream &in) {
  SynonymTable table;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> terms;
    size_t start = 0;
    while (start <= line.size()) {
      size_t tab = line.find('\t', start);
      if (tab == std::string::npos) tab = line.size();
      if (tab > start) terms.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    table.add_group(terms);
  }
  return table;
}

SynonymTable LoadSynonymTable(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open synonyms " + path);
  return LoadSynonymTable(in);
}

IdfTable::IdfTable(const CollocationStats &stats) {
  const double n = static_cast<double>(stats.total_unigrams);
  double top = 0;
  for (const auto &[w, c] : stats.unigram_counts) {
    double v = std::log((n + 1) / (static_cast<double>(c) + 1)) + 1;
    idf_[w] = v;
    top = std::max(top, v);
  }
  if (top > 0) {
    for (auto &[w, v] : idf_) v /= top;
  }
}

double IdfTable::weight(std::string_view term) const {
  auto it = idf_.find(AsciiLower(term));
  return it == idf_.end() ? 1.0 : it->second;
}

double link_weight(std::string_view x, std::string_view y,
                   const EmbeddingStore &store, const SynonymTable &syn) {
  if (AsciiLower(x) == AsciiLower(y) || syn.are_synonyms(x, y)) return 1.0;
  const Vector *vx = store.find(EmbeddingTable::kInput, x);
  const Vector *vy = store.find(EmbeddingTable::kInput, y);
  if (!vx || !vy) return 0.0;
  return std::max(0.0, cosine(*vx, *vy));
}

std::vector<std::string> MatchWords(std::string_view text, Language lang) {
  std::vector<std::string> out;
  for (const Token &t : segment_words(normalize_text(text), lang)) {
    if (!IsPunctuationToken(t.surface)) out.push_back(AsciiLower(t.surface));
  }
  return out;
}

std::vector<int> MaxWeightAssignment(
    const std::vector<std::vector<double>> &weights) {
  const int rows = static_cast<int>(weights.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(weights[0].size());
  std::vector<int> result(rows, -1);
  if (rows == 0 || cols == 0) return result;

  // Hungarian method on the padded square cost matrix (max - w), 1-based.
  const int k = std::max(rows, cols);
  double top = 0;
  for (const auto &row : weights) {
    for (double w : row) top = std::max(top, w);
  }
  auto cost = [&](int i, int j) {
    double w = (i < rows && j < cols) ? weights[i][j] : 0.0;
    return top - w;
  };
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(k + 1, 0), v(k + 1, 0);
  std::vector<int> p(k + 1, 0), way(k + 1, 0);
  for (int i = 1; i <= k; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(k + 1, kInf);
    std::vector<bool> used(k + 1, false);
    do {
      used[j0] = true;
      int i0 = p[j0], j1 = 0;
      double delta = kInf;
      for (int j = 1; j <= k; ++j) {
        if (used[j]) continue;
        double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= k; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  for (int j = 1; j <= k; ++j) {
    int i = p[j] - 1;
    if (i < rows && j - 1 < cols) result[i] = j - 1;
  }
  return result;
}

MatchResult match_score(std::string_view a, std::string_view b,
                        const EmbeddingStore &store, const SynonymTable &syn,
                        Language lang, const MatchOptions &options) {
  if (lang == Language::kAuto) {
    std::string both = std::string(a) + " " + std::string(b);
    lang = HanRatio(both) > 0.2 ? Language::kChinese : Language::kEnglish;
  }
  const std::vector<std::string> wa = MatchWords(a, lang);
  const std::vector<std::string> wb = MatchWords(b, lang);
  MatchResult result;
  if (wa.empty() && wb.empty()) {
    result.score = 1.0;
    return result;
  }
  if (wa.empty() || wb.empty()) return result;

  const bool idf = options.use_idf && options.idf && !options.idf->empty();
  std::vector<std::vector<double>> w(wa.size(),
                                     std::vector<double>(wb.size(), 0.0));
  for (size_t i = 0; i < wa.size(); ++i) {
    for (size_t j = 0; j < wb.size(); ++j) {
      double x = link_weight(wa[i], wb[j], store, syn);
      if (idf) {
        x *= 0.5 * (options.idf->weight(wa[i]) + options.idf->weight(wb[j]));
      }
      // Links under the floor are not candidates at all.
      w[i][j] = x >= options.link_floor ? x : 0.0;
    }
  }
  std::vector<int> assign = MaxWeightAssignment(w);
  std::vector<double> chosen;
  for (size_t i = 0; i < wa.size(); ++i) {
    int j = assign[i];
    if (j < 0 || w[i][j] <= 0) continue;
    result.alignment.push_back({static_cast<int>(i), j, w[i][j]});
    chosen.push_back(w[i][j]);
  }
  // Summing in sorted order keeps the score independent of argument order.
  std::sort(chosen.begin(), chosen.end());
  double total = 0;
  for (double x : chosen) total += x;
  result.score = std::clamp(
      2.0 * total / static_cast<double>(wa.size() + wb.size()), 0.0, 1.0);
  return result;
}

}  // namespace texkit

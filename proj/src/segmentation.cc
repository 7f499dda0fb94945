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

#include "texkit/segmentation.h"

#include <unicode/brkiter.h>
#include <unicode/locid.h>
#include <unicode/unistr.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

#include "texkit/errors.h"

namespace texkit {

void Lexicon::insert(std::string_view term) {
  if (term.empty()) return;
  terms_.insert(AsciiLower(term));
  max_length_ = std::max(max_length_, CodePointLength(term));
}

bool Lexicon::contains(std::string_view term) const {
  return terms_.count(AsciiLower(term)) > 0;
}

Lexicon load_lexicon(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open lexicon " + path);
  Lexicon lex;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    lex.insert(line);
  }
  return lex;
}

int64_t CollocationStats::unigram(const std::string &w) const {
  auto it = unigram_counts.find(w);
  return it == unigram_counts.end() ? 0 : it->second;
}

int64_t CollocationStats::bigram(const std::string &a,
                                 const std::string &b) const {
  auto it = bigram_counts.find({a, b});
  return it == bigram_counts.end() ? 0 : it->second;
}

void CollocationStats::merge(const CollocationStats &other) {
  for (const auto &[w, c] : other.unigram_counts) unigram_counts[w] += c;
  for (const auto &[p, c] : other.bigram_counts) bigram_counts[p] += c;
  total_unigrams += other.total_unigrams;
}

CollocationStats build_collocation_stats(const std::vector<std::string> &lines,
                                         Language lang,
                                         const Lexicon &lexicon) {
  CollocationStats stats;
  for (const std::string &raw : lines) {
    std::string text = normalize_text(raw);
    std::vector<Token> words = segment_words(text, lang, lexicon);
    for (size_t i = 0; i < words.size(); ++i) {
      std::string w = AsciiLower(words[i].surface);
      ++stats.unigram_counts[w];
      ++stats.total_unigrams;
      if (i > 0) {
        ++stats.bigram_counts[{AsciiLower(words[i - 1].surface), w}];
      }
    }
  }
  return stats;
}

void SaveCollocationStats(const CollocationStats &stats, std::ostream &out) {
  out << "#unigrams\t" << stats.total_unigrams << "\n";
  for (const auto &[w, c] : stats.unigram_counts) out << w << "\t" << c << "\n";
  out << "#bigrams\n";
  for (const auto &[p, c] : stats.bigram_counts) {
    out << p.first << "\t" << p.second << "\t" << c << "\n";
  }
}

CollocationStats LoadCollocationStats(std::istream &in) {
  CollocationStats stats;
  std::string line;
  int lineno = 0;
  enum { kNone, kUnigrams, kBigrams } section = kNone;
  int64_t declared_total = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string field; std::getline(ss, field, '\t');) f.push_back(field);
    try {
      if (f[0] == "#unigrams") {
        section = kUnigrams;
        if (f.size() > 1) declared_total = std::stoll(f[1]);
      } else if (f[0] == "#bigrams") {
        section = kBigrams;
      } else if (section == kUnigrams && f.size() == 2) {
        int64_t c = std::stoll(f[1]);
        if (c < 1) throw ParseError("count must be positive", lineno);
        stats.unigram_counts[f[0]] = c;
        stats.total_unigrams += c;
      } else if (section == kBigrams && f.size() == 3) {
        int64_t c = std::stoll(f[2]);
        if (c < 1) throw ParseError("count must be positive", lineno);
        if (!stats.unigram_counts.count(f[0]) ||
            !stats.unigram_counts.count(f[1])) {
          throw ParseError("bigram over unknown unigram", lineno);
        }
        stats.bigram_counts[{f[0], f[1]}] = c;
      } else {
        throw ParseError("unexpected stats row", lineno);
      }
    } catch (const std::logic_error &) {
      throw ParseError("bad count", lineno);
    }
  }
  if (declared_total >= 0) stats.total_unigrams = declared_total;
  return stats;
}

CollocationStats LoadCollocationStats(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open stats file " + path);
  return LoadCollocationStats(in);
}

double Pmi(const CollocationStats &stats, const std::string &a,
           const std::string &b) {
  int64_t ab = stats.bigram(a, b);
  int64_t ca = stats.unigram(a), cb = stats.unigram(b);
  if (ab == 0 || ca == 0 || cb == 0 || stats.total_unigrams == 0) {
    return -std::numeric_limits<double>::infinity();
  }
  // p(a,b) / (p(a) p(b)) with all probabilities over the unigram total.
  double ratio = (static_cast<double>(ab) * stats.total_unigrams) /
                 (static_cast<double>(ca) * cb);
  return std::log2(ratio);
}

bool IsPunctuationToken(std::string_view surface) {
  if (surface.empty()) return false;
  for (char32_t c : DecodeUtf8(surface)) {
    if (!IsPunctuation(c)) return false;
  }
  return true;
}

namespace {

Token MakeToken(std::u32string_view text, int begin, int end) {
  Token t;
  t.span = {begin, end - begin};
  t.surface = EncodeUtf8(text.substr(begin, end - begin));
  return t;
}

std::vector<Token> SegmentEnglish(std::u32string_view text) {
  thread_local std::unique_ptr<icu::BreakIterator> iter = [] {
    UErrorCode status = U_ZERO_ERROR;
    std::unique_ptr<icu::BreakIterator> it(
        icu::BreakIterator::createWordInstance(icu::Locale::getEnglish(),
                                               status));
    if (U_FAILURE(status)) throw Error("cannot create ICU word iterator");
    return it;
  }();

  // ICU works in UTF-16 units; keep a map back to code points.
  icu::UnicodeString ustr;
  std::vector<int> cp_at;  // UTF-16 index -> code point index
  cp_at.reserve(text.size() * 2 + 1);
  for (size_t i = 0; i < text.size(); ++i) {
    ustr.append(static_cast<UChar32>(text[i]));
    cp_at.push_back(static_cast<int>(i));
    if (text[i] > 0xFFFF) cp_at.push_back(static_cast<int>(i));
  }
  cp_at.push_back(static_cast<int>(text.size()));

  std::vector<Token> tokens;
  iter->setText(ustr);
  int32_t start = iter->first();
  for (int32_t end = iter->next(); end != icu::BreakIterator::DONE;
       start = end, end = iter->next()) {
    int b = cp_at[start], e = cp_at[end];
    bool blank = true;
    for (int k = b; k < e; ++k) {
      if (!IsUnicodeWhitespace(text[k])) blank = false;
    }
    if (blank) continue;
    // Whitespace can sit inside an ICU segment only at its edges.
    while (b < e && IsUnicodeWhitespace(text[b])) ++b;
    while (e > b && IsUnicodeWhitespace(text[e - 1])) --e;
    tokens.push_back(MakeToken(text, b, e));
  }
  return tokens;
}

bool IsAsciiDigit(char32_t c) { return c >= '0' && c <= '9'; }
bool IsLatinLetter(char32_t c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

std::vector<Token> SegmentChinese(std::u32string_view text,
                                  const Lexicon &lexicon) {
  std::vector<Token> tokens;
  const int n = static_cast<int>(text.size());
  int i = 0;
  while (i < n) {
    char32_t c = text[i];
    if (IsUnicodeWhitespace(c)) {
      ++i;
      continue;
    }
    int best = 0;
    for (int len = std::min(lexicon.max_length(), n - i); len >= 2; --len) {
      if (lexicon.contains(EncodeUtf8(text.substr(i, len)))) {
        best = len;
        break;
      }
    }
    if (best == 0) {
      int j = i + 1;
      if (IsAsciiDigit(c)) {
        while (j < n && (IsAsciiDigit(text[j]) ||
                         (text[j] == '.' && j + 1 < n &&
                          IsAsciiDigit(text[j + 1])))) {
          ++j;
        }
      } else if (IsLatinLetter(c)) {
        while (j < n && IsLatinLetter(text[j])) ++j;
      }
      best = j - i;
    }
    tokens.push_back(MakeToken(text, i, i + best));
    i += best;
  }
  return tokens;
}

}  // namespace

std::vector<Token> segment_words(std::string_view text, Language lang,
                                 const Lexicon &lexicon) {
  std::u32string chars = DecodeUtf8(text);
  if (lang == Language::kChinese) return SegmentChinese(chars, lexicon);
  return SegmentEnglish(chars);
}

std::vector<Token> segment_phrases(std::string_view text,
                                   const std::vector<Token> &words,
                                   const CollocationStats &stats,
                                   const Lexicon &lexicon,
                                   const PhraseOptions &options) {
  const size_t n = words.size();
  if (n == 0) return {};
  std::u32string chars = DecodeUtf8(text);

  // joined[i] says whether words i and i+1 belong to the same phrase. Each
  // boundary is decided independently, so more lexicon entries can only
  // join more boundaries.
  std::vector<bool> joined(n - 1, false);
  for (size_t i = 0; i + 1 < n; ++i) {
    const Token &a = words[i];
    const Token &b = words[i + 1];
    if (IsPunctuationToken(a.surface) || IsPunctuationToken(b.surface)) {
      continue;
    }
    std::string la = AsciiLower(a.surface), lb = AsciiLower(b.surface);
    if (stats.bigram(la, lb) >= options.min_bigram_count &&
        Pmi(stats, la, lb) >= options.pmi_threshold) {
      joined[i] = true;
    }
  }
  if (!lexicon.empty()) {
    for (size_t i = 0; i + 1 < n; ++i) {
      size_t limit = std::min(n, i + options.max_phrase_words);
      for (size_t j = i + 1; j < limit; ++j) {
        int len = words[j].span.end() - words[i].span.offset;
        if (len > lexicon.max_length()) break;
        std::string s = EncodeUtf8(
            std::u32string_view(chars).substr(words[i].span.offset, len));
        if (lexicon.contains(s)) {
          for (size_t k = i; k < j; ++k) joined[k] = true;
        }
      }
    }
  }

  std::vector<Token> phrases;
  size_t start = 0;
  for (size_t i = 0; i < n; ++i) {
    if (i + 1 < n && joined[i]) continue;
    phrases.push_back(
        MakeToken(chars, words[start].span.offset, words[i].span.end()));
    start = i + 1;
  }
  return phrases;
}

}  // namespace texkit

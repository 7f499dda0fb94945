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

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "test_util.h"
#include "texkit/segmentation.h"

namespace texkit {
namespace {

std::vector<std::string> Surfaces(const std::vector<Token> &toks) {
  std::vector<std::string> out;
  for (const auto &t : toks) out.push_back(t.surface);
  return out;
}

// Counts giving PMI = log2(c12 * N / (c1 * c2)) = log2(3 * 24 / 9) = 3.
CollocationStats PmiThreeStats(int64_t bigram) {
  CollocationStats s;
  s.unigram_counts = {{"a", 3}, {"b", 3}, {"z", 18}};
  s.total_unigrams = 24;
  s.bigram_counts[{"a", "b"}] = bigram;
  return s;
}

TEST_SUITE("segmentation") {

TEST_CASE("english words follow word boundaries") {
  auto toks = segment_words("Hello, world! It costs 3.5 dollars.",
                            Language::kEnglish);
  CHECK(Surfaces(toks) == std::vector<std::string>{
                              "Hello", ",", "world", "!", "It", "costs",
                              "3.5", "dollars", "."});
  CHECK(TokensAlign(DecodeUtf8("Hello, world! It costs 3.5 dollars."), toks));
}

TEST_CASE("chinese forward maximum matching") {
  Lexicon lex = {"上个", "上个月", "号"};
  auto toks = segment_words("上个月30号", Language::kChinese, lex);
  CHECK(Surfaces(toks) == std::vector<std::string>{"上个月", "30", "号"});
  CHECK(toks[1].span == Span{3, 2});
  // Unknown characters are split one by one; Latin runs stay together.
  auto unk = segment_words("我爱NLP", Language::kChinese, {});
  CHECK(Surfaces(unk) == std::vector<std::string>{"我", "爱", "NLP"});
}

TEST_CASE("collocation counts for 'a b a b'") {
  auto s = build_collocation_stats({"a b a b"}, Language::kEnglish);
  CHECK(s.total_unigrams == 4);
  CHECK(s.unigram("a") == 2);
  CHECK(s.unigram("b") == 2);
  CHECK(s.bigram("a", "b") == 2);
  CHECK(s.bigram("b", "a") == 1);
  CHECK(s.bigram("b", "b") == 0);
  // log2(2 * 4 / (2 * 2)) = 1
  CHECK(Pmi(s, "a", "b") == doctest::Approx(1.0));
  CHECK(std::isinf(Pmi(s, "b", "b")));
}

TEST_CASE("bigrams do not cross lines and merge is additive") {
  auto s1 = build_collocation_stats({"a b", "c"}, Language::kEnglish);
  CHECK(s1.bigram("b", "c") == 0);
  auto s2 = build_collocation_stats({"a b"}, Language::kEnglish);
  auto s3 = build_collocation_stats({"c"}, Language::kEnglish);
  s2.merge(s3);
  CHECK(s2.unigram_counts == s1.unigram_counts);
  CHECK(s2.bigram_counts == s1.bigram_counts);
  CHECK(s2.total_unigrams == s1.total_unigrams);
}

TEST_CASE("stats round trip") {
  auto s = build_collocation_stats({"a b a b", "c a"}, Language::kEnglish);
  std::stringstream ss;
  SaveCollocationStats(s, ss);
  auto t = LoadCollocationStats(ss);
  CHECK(t.unigram_counts == s.unigram_counts);
  CHECK(t.bigram_counts == s.bigram_counts);
  CHECK(t.total_unigrams == s.total_unigrams);
}

TEST_CASE("PMI exactly at the threshold merges") {
  CollocationStats s = PmiThreeStats(3);
  CHECK(Pmi(s, "a", "b") == 3.0);
  auto words = segment_words("a b", Language::kEnglish);
  auto phrases = segment_phrases("a b", words, s, {});
  CHECK(Surfaces(phrases) == std::vector<std::string>{"a b"});
  CHECK(phrases[0].span == Span{0, 3});

  // Below the bigram count floor nothing merges, whatever the PMI.
  CollocationStats rare = PmiThreeStats(2);
  CHECK(Surfaces(segment_phrases("a b", words, rare, {})) ==
        std::vector<std::string>{"a", "b"});
}

TEST_CASE("lexicon phrases and invariants") {
  std::string text = "He stayed in San Francisco for two weeks.";
  Lexicon lex = {"San Francisco"};
  auto words = segment_words(text, Language::kEnglish, lex);
  auto phrases = segment_phrases(text, words, {}, lex);
  CHECK(Surfaces(phrases) ==
        std::vector<std::string>{"He", "stayed", "in", "San Francisco", "for",
                                 "two", "weeks", "."});
  // Each phrase span is the union of a run of word spans.
  size_t w = 0;
  for (const auto &p : phrases) {
    REQUIRE(w < words.size());
    CHECK(words[w].span.offset == p.span.offset);
    while (w < words.size() && words[w].span.end() <= p.span.end()) ++w;
    CHECK(words[w - 1].span.end() == p.span.end());
  }
  CHECK(w == words.size());
}

TEST_CASE("adding lexicon entries never splits a merge") {
  std::string text = "new york city is big";
  auto words = segment_words(text, Language::kEnglish);
  Lexicon small = {"new york"};
  Lexicon large = {"new york", "york city", "is big"};
  auto a = segment_phrases(text, words, {}, small);
  auto b = segment_phrases(text, words, {}, large);
  for (const auto &p : a) {
    bool covered = false;
    for (const auto &q : b) {
      covered |= q.span.offset <= p.span.offset && p.span.end() <= q.span.end();
    }
    CHECK(covered);
  }
}

TEST_CASE("punctuation tokens") {
  CHECK(IsPunctuationToken(","));
  CHECK(IsPunctuationToken("..."));
  CHECK(IsPunctuationToken("。"));
  CHECK_FALSE(IsPunctuationToken("a."));
  CHECK_FALSE(IsPunctuationToken(""));
}

}  // TEST_SUITE

}  // namespace
}  // namespace texkit

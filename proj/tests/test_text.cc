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

#include "doctest.h"
#include "texkit/errors.h"
#include "texkit/text.h"

namespace texkit {
namespace {

TEST_SUITE("text") {

TEST_CASE("utf8 round trip and code point lengths") {
  std::string s = "a\xC3\xA9\xE4\xB8\xAD\xF0\x9F\x98\x80";  // a é 中 😀
  std::u32string u = DecodeUtf8(s);
  REQUIRE(u.size() == 4);
  CHECK(u[1] == U'é');
  CHECK(u[2] == U'中');
  CHECK(u[3] == U'\U0001F600');
  CHECK(EncodeUtf8(u) == s);
  CHECK(CodePointLength(s) == 4);
  CHECK(SliceCodePoints(u, {1, 2}) == "\xC3\xA9\xE4\xB8\xAD");
}

TEST_CASE("malformed utf8 is rejected") {
  CHECK_THROWS_AS(DecodeUtf8("\xC3"), EncodingError);
  CHECK_THROWS_AS(DecodeUtf8("\xFF"), EncodingError);
  CHECK_THROWS_AS(DecodeUtf8("\xC0\xAF"), EncodingError);  // overlong
  CHECK_THROWS_AS(DecodeUtf8("\xED\xA0\x80"), EncodingError);  // surrogate
}

TEST_CASE("normalization maps full width and collapses whitespace") {
  // Full-width letters, digits and the ideographic space.
  CHECK(normalize_text("\xEF\xBC\xA1\xEF\xBC\xA2\xE3\x80\x80\xEF\xBC\x91\xEF\xBC\x92") ==
        "AB 12");
  CHECK(normalize_text("a \t\n  b") == "a b");
  // Decomposed e + combining acute becomes the precomposed form.
  CHECK(normalize_text("e\xCC\x81") == "\xC3\xA9");
}

TEST_CASE("normalization is idempotent") {
  for (const char *s : {"  Hello,   World! ", "\xEF\xBC\xA8\xEF\xBD\x89",
                        "上个月　30号", "e\xCC\x81 x", ""}) {
    std::string once = normalize_text(s);
    CHECK(normalize_text(once) == once);
  }
}

TEST_CASE("language codes") {
  CHECK(ParseLanguage("en") == Language::kEnglish);
  CHECK(ParseLanguage("chs") == Language::kChinese);
  CHECK(ParseLanguage("auto") == Language::kAuto);
  CHECK_THROWS_AS(ParseLanguage("fr"), ValidationError);
  CHECK(std::string(LanguageCode(Language::kChinese)) == "chs");
}

TEST_CASE("character classes and han ratio") {
  CHECK(IsHan(U'中'));
  CHECK_FALSE(IsHan(U'a'));
  CHECK(IsPunctuation(U','));
  CHECK(IsPunctuation(U'。'));
  CHECK(IsUnicodeWhitespace(U'　'));
  CHECK(HanRatio("中文ab") == doctest::Approx(0.5));
  CHECK(HanRatio("   ") == 0.0);
  CHECK(AsciiLower("ABC中") == "abc中");
}

TEST_CASE("token alignment check") {
  std::u32string text = U"ab cd";
  std::vector<Token> ok = {{{0, 2}, "ab", ""}, {{3, 2}, "cd", ""}};
  CHECK(TokensAlign(text, ok));
  std::vector<Token> bad_surface = {{{0, 2}, "ax", ""}};
  CHECK_FALSE(TokensAlign(text, bad_surface));
  std::vector<Token> overlap = {{{0, 2}, "ab", ""}, {{1, 1}, "b", ""}};
  CHECK_FALSE(TokensAlign(text, overlap));
}

}  // TEST_SUITE

}  // namespace
}  // namespace texkit

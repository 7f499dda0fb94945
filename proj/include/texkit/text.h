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

// Shared document model: languages, spans, tokens, mentions and the
// assembled analysis result. All offsets count Unicode scalar values.

#ifndef TEXKIT_TEXT_H_
#define TEXKIT_TEXT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace texkit {

enum class Language { kAuto, kChinese, kEnglish };

// "auto", "chs" or "en". Anything else throws ValidationError.
Language ParseLanguage(std::string_view code);
const char *LanguageCode(Language lang);

struct Span {
  int offset = 0;
  int length = 0;

  int end() const { return offset + length; }
  bool overlaps(const Span &other) const {
    return offset < other.end() && other.offset < end();
  }
  bool operator==(const Span &) const = default;
};

struct Token {
  Span span;
  std::string surface;
  std::string pos_tag;
};

enum class MentionSource { kCoarse, kFine, kHybrid, kGrammar };
const char *MentionSourceName(MentionSource source);

struct EntityMention {
  Span span;
  std::string surface;
  std::string type_id;
  MentionSource source = MentionSource::kCoarse;
  std::vector<std::string> related;
  std::optional<nlohmann::json> meaning;
};

struct ResultHeader {
  double time_cost_ms = 0;
  double core_time_cost_ms = 0;
  std::string ret_code = "succ";
  std::string ret_msg;
};

struct AnalysisResult {
  std::string norm_text;
  std::vector<Token> word_list;
  std::vector<Token> phrase_list;
  std::vector<EntityMention> entity_list;
  ResultHeader header;
};

// ---------------------------------------------------------------------------
// Unicode helpers.

// Decodes UTF-8, throwing EncodingError on malformed input.
std::u32string DecodeUtf8(std::string_view s);
std::string EncodeUtf8(std::u32string_view s);
void AppendUtf8(char32_t c, std::string *out);

// Number of code points in a valid UTF-8 string.
int CodePointLength(std::string_view s);

// Substring by code point offsets.
std::string SliceCodePoints(std::u32string_view text, Span span);

bool IsHan(char32_t c);
bool IsUnicodeWhitespace(char32_t c);
// Letters, digits and marks.
bool IsWordChar(char32_t c);
bool IsPunctuation(char32_t c);

// ASCII-only lowercasing. Non-ASCII text (e.g. Chinese) is left untouched.
std::string AsciiLower(std::string_view s);

// Fraction of non-whitespace code points that are Han characters.
double HanRatio(std::string_view text);

// Maps full-width ASCII-range forms to half-width, applies NFC and collapses
// every run of Unicode whitespace to one space. Idempotent.
std::string normalize_text(std::string_view raw);

// True when every token surface equals the text slice at its span and spans
// are strictly increasing and non-overlapping.
bool TokensAlign(std::u32string_view text, const std::vector<Token> &tokens);

}  // namespace texkit

#endif  // TEXKIT_TEXT_H_

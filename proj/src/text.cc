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

#include "texkit/text.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/uscript.h>
#include <unicode/unistr.h>

#include "texkit/errors.h"

namespace texkit {

Language ParseLanguage(std::string_view code) {
  if (code == "auto") return Language::kAuto;
  if (code == "chs") return Language::kChinese;
  if (code == "en") return Language::kEnglish;
  throw ValidationError("unknown language code: " + std::string(code));
}

const char *LanguageCode(Language lang) {
  switch (lang) {
    case Language::kAuto: return "auto";
    case Language::kChinese: return "chs";
    case Language::kEnglish: return "en";
  }
  return "auto";
}

const char *MentionSourceName(MentionSource source) {
  switch (source) {
    case MentionSource::kCoarse: return "coarse";
    case MentionSource::kFine: return "fine";
    case MentionSource::kHybrid: return "hybrid";
    case MentionSource::kGrammar: return "grammar";
  }
  return "coarse";
}

std::u32string DecodeUtf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  size_t i = 0;
  const size_t n = s.size();
  while (i < n) {
    unsigned char c = s[i];
    char32_t cp;
    int extra;
    if (c < 0x80) {
      out.push_back(c);
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      cp = c & 0x1F;
      extra = 1;
    } else if ((c & 0xF0) == 0xE0) {
      cp = c & 0x0F;
      extra = 2;
    } else if ((c & 0xF8) == 0xF0) {
      cp = c & 0x07;
      extra = 3;
    } else {
      throw EncodingError("invalid UTF-8 lead byte at offset " +
                          std::to_string(i));
    }
    if (i + extra >= n) {
      throw EncodingError("truncated UTF-8 sequence at offset " +
                          std::to_string(i));
    }
    for (int k = 1; k <= extra; ++k) {
      unsigned char cc = s[i + k];
      if ((cc & 0xC0) != 0x80) {
        throw EncodingError("invalid UTF-8 continuation at offset " +
                            std::to_string(i + k));
      }
      cp = (cp << 6) | (cc & 0x3F);
    }
    static constexpr char32_t kMin[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      throw EncodingError("invalid UTF-8 code point at offset " +
                          std::to_string(i));
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

void AppendUtf8(char32_t c, std::string *out) {
  if (c < 0x80) {
    out->push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (c >> 6)));
    out->push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (c >> 12)));
    out->push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (c >> 18)));
    out->push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

std::string EncodeUtf8(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : s) AppendUtf8(c, &out);
  return out;
}

int CodePointLength(std::string_view s) {
  int n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::string SliceCodePoints(std::u32string_view text, Span span) {
  return EncodeUtf8(text.substr(span.offset, span.length));
}

bool IsHan(char32_t c) {
  UErrorCode status = U_ZERO_ERROR;
  return uscript_getScript(static_cast<UChar32>(c), &status) == USCRIPT_HAN &&
         U_SUCCESS(status);
}

bool IsUnicodeWhitespace(char32_t c) {
  return u_isUWhiteSpace(static_cast<UChar32>(c));
}

bool IsWordChar(char32_t c) {
  auto cp = static_cast<UChar32>(c);
  return u_isalnum(cp) || (U_GET_GC_MASK(cp) & U_GC_M_MASK) != 0;
}

bool IsPunctuation(char32_t c) {
  auto cp = static_cast<UChar32>(c);
  return u_ispunct(cp) || (U_GET_GC_MASK(cp) & U_GC_S_MASK) != 0;
}

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

double HanRatio(std::string_view text) {
  int han = 0;
  int total = 0;
  for (char32_t c : DecodeUtf8(text)) {
    if (IsUnicodeWhitespace(c)) continue;
    ++total;
    if (IsHan(c)) ++han;
  }
  return total == 0 ? 0.0 : static_cast<double>(han) / total;
}

std::string normalize_text(std::string_view raw) {
  std::u32string chars = DecodeUtf8(raw);

  // Full-width forms first so that NFC sees the final base characters.
  for (char32_t &c : chars) {
    if (c >= 0xFF01 && c <= 0xFF5E) c -= 0xFEE0;
  }

  std::string mapped = EncodeUtf8(chars);
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2 *nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  icu::UnicodeString ustr = icu::UnicodeString::fromUTF8(mapped);
  icu::UnicodeString composed = nfc->normalize(ustr, status);
  if (U_FAILURE(status)) throw EncodingError("NFC normalization failed");
  std::string nfc_text;
  composed.toUTF8String(nfc_text);

  std::string out;
  out.reserve(nfc_text.size());
  bool in_space = false;
  for (char32_t c : DecodeUtf8(nfc_text)) {
    if (IsUnicodeWhitespace(c)) {
      if (!in_space) out.push_back(' ');
      in_space = true;
    } else {
      AppendUtf8(c, &out);
      in_space = false;
    }
  }
  return out;
}

bool TokensAlign(std::u32string_view text, const std::vector<Token> &tokens) {
  int prev_end = 0;
  for (const Token &t : tokens) {
    if (t.span.offset < prev_end || t.span.length < 1) return false;
    if (t.span.end() > static_cast<int>(text.size())) return false;
    if (SliceCodePoints(text, t.span) != t.surface) return false;
    prev_end = t.span.end();
  }
  return true;
}

}  // namespace texkit

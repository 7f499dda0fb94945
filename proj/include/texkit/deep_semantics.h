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

// Deep semantic representation of time and quantity expressions.
//
// Hand-written context-free grammars are compiled from a small rule DSL and
// run with an Earley chart parser. Every rule carries a label, and the parse
// tree is evaluated bottom up by composition functions keyed on those labels
// to produce a JSON value such as {"value":[2019,2]}.
//
// Grammar DSL, one rule per line:
//
//   %start TIME
//   TIME  -> DELTA "ago"          @rel_past
//   DELTA -> NUMBER TUNIT         @delta
//   TUNIT -> WORD:(month|months)  @tunit_month
//   EMPTY ->                      @nothing
//
// Quoted strings are literals matched case-insensitively against one token.
// Bare uppercase identifiers are nonterminals, except NUMBER (any numeric
// token, see NumberValue) and WORD:(a|b|...) (any of the listed words). A
// rule without an @label gets "<lhs>_<n>". '#' starts a comment.

#ifndef TEXKIT_DEEP_SEMANTICS_H_
#define TEXKIT_DEEP_SEMANTICS_H_

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "texkit/segmentation.h"
#include "texkit/text.h"

namespace texkit {

// ---------------------------------------------------------------------------
// Numbers.

// Value of a numeric token: digits with optional decimal part and thousands
// separators ("1,250.5"), English number words up to 999,999 ("twenty-two",
// "one hundred and five") or Chinese numerals ("二十二", "两", "二零一九").
std::optional<double> NumberValue(std::string_view surface);

// Merges runs of number-word tokens ("twenty" "-" "two", "三" "十") into one
// token whose surface is the covered text slice.
std::vector<Token> GroupNumberTokens(std::u32string_view text,
                                     const std::vector<Token> &tokens);

// ---------------------------------------------------------------------------
// Grammar.

struct GrammarSymbol {
  enum Kind { kNonterminal, kLiteral, kNumber, kWordSet };
  Kind kind = kLiteral;
  int nonterminal = -1;            // kNonterminal
  std::string text;                // kLiteral, lowercased
  std::vector<std::string> words;  // kWordSet, lowercased and sorted

  bool terminal() const { return kind != kNonterminal; }
};

struct GrammarRule {
  int lhs = 0;
  std::vector<GrammarSymbol> rhs;
  std::string label;
  int line = 0;
};

class Grammar {
 public:
  const std::vector<std::string> &nonterminals() const { return names_; }
  const std::vector<GrammarRule> &rules() const { return rules_; }
  const std::vector<std::string> &start_symbols() const { return starts_; }

  // -1 when unknown.
  int nonterminal_id(std::string_view name) const;
  bool nullable(int nonterminal) const { return nullable_[nonterminal]; }
  // Rule indices with the given lhs, in declaration order.
  const std::vector<int> &rules_of(int nonterminal) const {
    return by_lhs_[nonterminal];
  }
  // Number of dotted rules (sum over rules of |rhs| + 1).
  size_t dotted_rule_count() const;

  // Whether a terminal symbol accepts a token surface.
  static bool Matches(const GrammarSymbol &symbol, std::string_view surface);

  // Multi-character literals, used to segment Chinese input so that each
  // literal lands on a single token.
  Lexicon LiteralLexicon() const;

 private:
  friend Grammar compile_grammar(std::string_view source);

  std::vector<std::string> names_;
  std::unordered_map<std::string, int> ids_;
  std::vector<GrammarRule> rules_;
  std::vector<std::vector<int>> by_lhs_;
  std::vector<bool> nullable_;
  std::vector<std::string> starts_;
};

// Throws CompileError with the offending line for syntax errors, undefined
// nonterminals, duplicate labels, literals spelled like a nonterminal,
// derivation cycles through unit or empty rules, and empty grammars.
Grammar compile_grammar(std::string_view source);
Grammar LoadGrammar(const std::string &path);

// ---------------------------------------------------------------------------
// Earley parsing.

struct ParseTree {
  std::string rule_label;  // empty for a leaf
  int rule = -1;           // rule index, -1 for a leaf
  Span span;
  int first_token = 0;  // covered tokens [first_token, last_token)
  int last_token = 0;
  std::vector<ParseTree> children;
  std::optional<Token> token;  // set on leaves

  bool leaf() const { return token.has_value(); }
  int LeafCount() const;
  // Compact bracketed form, e.g. "(rel_past (delta 22 (tunit_month months))
  // ago)".
  std::string ToString() const;
};

struct ParseOptions {
  // Parse only the whole input instead of scanning for matches.
  bool full_input = false;
  // Cap on the trees returned for one window.
  size_t max_trees = 4096;
};

struct ParseStats {
  size_t items = 0;
  size_t dotted_rules = 0;
  size_t tokens = 0;
};

// Scans the input left to right. At each candidate start the longest
// window derivable from `start` is taken and all of its trees are returned
// (in rule declaration order); scanning resumes after the window. With
// `full_input`, only parses of the entire token list are returned.
std::vector<ParseTree> earley_parse(const std::vector<Token> &tokens,
                                    const Grammar &grammar,
                                    std::string_view start,
                                    const ParseOptions &options = {},
                                    ParseStats *stats = nullptr);

// True when `start` derives the entire token list.
bool earley_recognize(const std::vector<Token> &tokens, const Grammar &grammar,
                      std::string_view start);

// ---------------------------------------------------------------------------
// Normalization.

struct ReferenceTime {
  int year = 2000;
  int month = 1;
  int day = 1;
  int hour = 0;

  bool Valid() const;
  // Local wall clock time.
  static ReferenceTime Now();
};

// "YYYY-MM-DD", optionally followed by "THH", "THH:MM" or "THH:MM:SS".
// Throws ValidationError.
ReferenceTime ParseReferenceTime(std::string_view iso);

enum class SemanticKind { kTimePoint, kTimeDelta, kQuantity };

struct SemanticValue {
  SemanticKind kind = SemanticKind::kTimePoint;
  nlohmann::json payload;
};

// Calendar helpers. AddMonths clamps the day to the target month's length.
int DaysInMonth(int year, int month);
ReferenceTime AddMonths(const ReferenceTime &t, int months);
ReferenceTime AddDays(const ReferenceTime &t, int days);

// True when `label` has a composition function.
bool HasComposition(std::string_view label);

// Evaluates the tree bottom up. Throws NormalizationError for labels without
// a composition function or values outside the calendar.
SemanticValue normalize(const ParseTree &tree, const ReferenceTime &ref);

// ---------------------------------------------------------------------------
// Entity extraction.

// Time and quantity grammars for one language, read from
// "<dir>/<lang>_time.cfg" and "<dir>/<lang>_quantity.cfg".
class DeepSemantics {
 public:
  DeepSemantics() = default;
  static DeepSemantics Load(const std::string &grammar_dir, Language lang);

  bool empty() const { return categories_.empty(); }

  // Tokens the grammars are run on.
  std::vector<Token> Tokenize(std::u32string_view text) const;

  // Non-overlapping time.generic / quantity.generic mentions with `meaning`
  // set, leftmost-longest, time winning ties.
  std::vector<EntityMention> Extract(std::u32string_view text,
                                     const ReferenceTime &ref) const;

 private:
  struct Category {
    std::string type_id;
    std::string start;
    Grammar grammar;
  };
  Language lang_ = Language::kEnglish;
  std::vector<Category> categories_;
  Lexicon lexicon_;
};

}  // namespace texkit

#endif  // TEXKIT_DEEP_SEMANTICS_H_

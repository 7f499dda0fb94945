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

// Numbers, the rule DSL compiler and the Earley parser.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <unordered_set>

#include "texkit/deep_semantics.h"
#include "texkit/errors.h"

namespace texkit {

// ---------------------------------------------------------------------------
// Numbers.

namespace {

const std::unordered_map<std::string, int> &SmallNumbers() {
  static const auto *m = new std::unordered_map<std::string, int>{
      {"zero", 0},     {"one", 1},        {"two", 2},       {"three", 3},
      {"four", 4},     {"five", 5},       {"six", 6},       {"seven", 7},
      {"eight", 8},    {"nine", 9},       {"ten", 10},      {"eleven", 11},
      {"twelve", 12},  {"thirteen", 13},  {"fourteen", 14}, {"fifteen", 15},
      {"sixteen", 16}, {"seventeen", 17}, {"eighteen", 18}, {"nineteen", 19}};
  return *m;
}

const std::unordered_map<std::string, int> &Tens() {
  static const auto *m = new std::unordered_map<std::string, int>{
      {"twenty", 20}, {"thirty", 30},  {"forty", 40},  {"fifty", 50},
      {"sixty", 60},  {"seventy", 70}, {"eighty", 80}, {"ninety", 90}};
  return *m;
}

// Recursive descent over lowercased words, with "-" kept as its own word.
//   number    := below1000 ["thousand" ["and"] below1000]
//   below1000 := below100 | digit "hundred" ["and"] below100
//   below100  := small | tens ["-"] digit | tens
class WordNumberParser {
 public:
  explicit WordNumberParser(const std::vector<std::string> &words)
      : w_(words) {}

  std::optional<int64_t> Parse() {
    auto v = Number();
    if (!v || pos_ != w_.size()) return std::nullopt;
    return v;
  }

 private:
  bool Peek(std::string_view s) const {
    return pos_ < w_.size() && w_[pos_] == s;
  }

  std::optional<int64_t> Below100() {
    if (pos_ >= w_.size()) return std::nullopt;
    const auto &small = SmallNumbers();
    if (auto it = small.find(w_[pos_]); it != small.end()) {
      ++pos_;
      return it->second;
    }
    const auto &tens = Tens();
    auto it = tens.find(w_[pos_]);
    if (it == tens.end()) return std::nullopt;
    ++pos_;
    size_t save = pos_;
    if (Peek("-")) ++pos_;
    if (pos_ < w_.size()) {
      auto u = small.find(w_[pos_]);
      if (u != small.end() && u->second >= 1 && u->second <= 9) {
        ++pos_;
        return it->second + u->second;
      }
    }
    pos_ = save;
    return it->second;
  }

  std::optional<int64_t> Below1000() {
    size_t save = pos_;
    auto v = Below100();
    if (!v) return std::nullopt;
    if (!Peek("hundred")) return v;
    if (*v < 1 || *v > 9) {
      pos_ = save;
      return std::nullopt;
    }
    ++pos_;
    int64_t total = *v * 100;
    size_t before = pos_;
    if (Peek("and")) ++pos_;
    if (auto rest = Below100(); rest && *rest > 0) return total + *rest;
    pos_ = before;
    return total;
  }

  std::optional<int64_t> Number() {
    auto v = Below1000();
    if (!v) return std::nullopt;
    if (!Peek("thousand")) return v;
    if (*v == 0) return std::nullopt;
    ++pos_;
    int64_t total = *v * 1000;
    size_t before = pos_;
    if (Peek("and")) ++pos_;
    if (auto rest = Below1000(); rest && *rest > 0) return total + *rest;
    pos_ = before;
    return total;
  }

  const std::vector<std::string> &w_;
  size_t pos_ = 0;
};

std::optional<double> DigitNumber(std::string_view s) {
  if (s.empty() || !std::isdigit(static_cast<unsigned char>(s[0]))) {
    return std::nullopt;
  }
  std::string digits;
  size_t i = 0;
  size_t group = 0;
  bool grouped = false;
  for (; i < s.size() && s[i] != '.'; ++i) {
    char c = s[i];
    if (c == ',') {
      // Thousands separators: 1-3 leading digits, then groups of three.
      if ((!grouped && (group == 0 || group > 3)) || (grouped && group != 3)) {
        return std::nullopt;
      }
      grouped = true;
      group = 0;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    digits.push_back(c);
    ++group;
  }
  if (grouped && group != 3) return std::nullopt;
  if (i < s.size()) {
    digits.push_back('.');
    ++i;
    if (i == s.size()) return std::nullopt;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
      digits.push_back(s[i]);
    }
  }
  return std::strtod(digits.c_str(), nullptr);
}

std::optional<double> EnglishWordNumber(std::string_view s) {
  std::vector<std::string> words;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) words.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : s) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (c == '-') {
      flush();
      words.push_back("-");
    } else if (c == ' ') {
      flush();
    } else {
      return std::nullopt;
    }
  }
  flush();
  if (words.empty()) return std::nullopt;
  auto v = WordNumberParser(words).Parse();
  if (!v) return std::nullopt;
  return static_cast<double>(*v);
}

int ChineseDigit(char32_t c) {
  switch (c) {
    case U'零': case U'〇': return 0;
    case U'一': return 1;
    case U'二': case U'两': return 2;
    case U'三': return 3;
    case U'四': return 4;
    case U'五': return 5;
    case U'六': return 6;
    case U'七': return 7;
    case U'八': return 8;
    case U'九': return 9;
    default: return -1;
  }
}

int ChineseUnit(char32_t c) {
  switch (c) {
    case U'十': return 10;
    case U'百': return 100;
    case U'千': return 1000;
    case U'万': return 10000;
    default: return 0;
  }
}

bool IsChineseNumeral(char32_t c) {
  return ChineseDigit(c) >= 0 || ChineseUnit(c) > 0;
}

std::optional<double> ChineseNumber(std::u32string_view s) {
  if (s.empty()) return std::nullopt;
  bool has_unit = false;
  for (char32_t c : s) {
    if (!IsChineseNumeral(c)) return std::nullopt;
    if (ChineseUnit(c)) has_unit = true;
  }
  if (!has_unit) {
    // Digit by digit, as in years: 二零一九.
    if (s.size() > 9) return std::nullopt;
    int64_t v = 0;
    for (char32_t c : s) v = v * 10 + ChineseDigit(c);
    return static_cast<double>(v);
  }
  int64_t total = 0, section = 0;
  int digit = -1;
  int last_unit = 10000;
  bool after_zero = false;
  for (size_t i = 0; i < s.size(); ++i) {
    char32_t c = s[i];
    int d = ChineseDigit(c);
    if (d == 0) {
      if (digit != -1) return std::nullopt;
      after_zero = true;
      continue;
    }
    if (d > 0) {
      if (digit != -1) return std::nullopt;
      digit = d;
      continue;
    }
    int unit = ChineseUnit(c);
    if (unit == 10000) {
      section += digit == -1 ? 0 : digit;
      if (section == 0 || total != 0) return std::nullopt;
      total = section * 10000;
      section = 0;
      digit = -1;
      last_unit = 10000;
      after_zero = false;
      continue;
    }
    if (unit >= last_unit) return std::nullopt;
    if (digit == -1) {
      // A bare 十 reads as 一十 ("十二" = 12), also after 百 ("一百十").
      if (unit != 10 || after_zero) return std::nullopt;
      digit = 1;
    }
    section += digit * unit;
    digit = -1;
    last_unit = unit;
    after_zero = false;
  }
  section += digit == -1 ? 0 : digit;
  return static_cast<double>(total + section);
}

bool IsNumberWordToken(std::string_view surface) {
  std::string w = AsciiLower(surface);
  return SmallNumbers().count(w) || Tens().count(w);
}

bool IsNumberJoiner(std::string_view surface) {
  std::string w = AsciiLower(surface);
  return w == "-" || w == "and" || w == "hundred" || w == "thousand";
}

bool IsChineseNumeralToken(std::string_view surface) {
  std::u32string s = DecodeUtf8(surface);
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), IsChineseNumeral);
}

}  // namespace

std::optional<double> NumberValue(std::string_view surface) {
  if (surface.empty()) return std::nullopt;
  if (auto v = DigitNumber(surface)) return v;
  if (auto v = EnglishWordNumber(surface)) return v;
  std::u32string s;
  try {
    s = DecodeUtf8(surface);
  } catch (const EncodingError &) {
    return std::nullopt;
  }
  return ChineseNumber(s);
}

std::vector<Token> GroupNumberTokens(std::u32string_view text,
                                     const std::vector<Token> &tokens) {
  constexpr size_t kMaxRun = 12;
  std::vector<Token> out;
  size_t i = 0;
  while (i < tokens.size()) {
    const bool english = IsNumberWordToken(tokens[i].surface);
    const bool chinese = !english && IsChineseNumeralToken(tokens[i].surface);
    size_t end = i + 1;
    if (english || chinese) {
      // Extent of the candidate run.
      size_t limit = i + 1;
      while (limit < tokens.size() && limit - i < kMaxRun) {
        const Token &t = tokens[limit];
        bool ok = english ? IsNumberWordToken(t.surface) ||
                                IsNumberJoiner(t.surface)
                          : IsChineseNumeralToken(t.surface);
        if (!ok) break;
        // Only whitespace may separate the pieces; Chinese must touch.
        int gap_from = tokens[limit - 1].span.end();
        bool gap_ok = true;
        for (int k = gap_from; k < t.span.offset; ++k) {
          if (chinese || !IsUnicodeWhitespace(text[k])) gap_ok = false;
        }
        if (!gap_ok) break;
        ++limit;
      }
      for (size_t j = limit; j > i + 1; --j) {
        Span span{tokens[i].span.offset,
                  tokens[j - 1].span.end() - tokens[i].span.offset};
        if (NumberValue(SliceCodePoints(text, span))) {
          end = j;
          break;
        }
      }
    }
    if (end == i + 1) {
      out.push_back(tokens[i]);
    } else {
      Token merged;
      merged.span = {tokens[i].span.offset,
                     tokens[end - 1].span.end() - tokens[i].span.offset};
      merged.surface = SliceCodePoints(text, merged.span);
      out.push_back(std::move(merged));
    }
    i = end;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Grammar.

int Grammar::nonterminal_id(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  return it == ids_.end() ? -1 : it->second;
}

size_t Grammar::dotted_rule_count() const {
  size_t n = 0;
  for (const GrammarRule &r : rules_) n += r.rhs.size() + 1;
  return n;
}

bool Grammar::Matches(const GrammarSymbol &symbol, std::string_view surface) {
  switch (symbol.kind) {
    case GrammarSymbol::kLiteral:
      return AsciiLower(surface) == symbol.text;
    case GrammarSymbol::kNumber:
      return NumberValue(surface).has_value();
    case GrammarSymbol::kWordSet:
      return std::binary_search(symbol.words.begin(), symbol.words.end(),
                                AsciiLower(surface));
    case GrammarSymbol::kNonterminal:
      return false;
  }
  return false;
}

Lexicon Grammar::LiteralLexicon() const {
  Lexicon lex;
  auto add = [&](const std::string &w) {
    if (CodePointLength(w) >= 2) lex.insert(w);
  };
  for (const GrammarRule &r : rules_) {
    for (const GrammarSymbol &s : r.rhs) {
      if (s.kind == GrammarSymbol::kLiteral) add(s.text);
      if (s.kind == GrammarSymbol::kWordSet) {
        for (const std::string &w : s.words) add(w);
      }
    }
  }
  return lex;
}

namespace {

std::string_view Trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool IsIdentifier(std::string_view s) {
  if (s.empty() || !(s[0] >= 'A' && s[0] <= 'Z')) return false;
  for (char c : s) {
    if (!((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_')) {
      return false;
    }
  }
  return true;
}

bool IsLabel(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
          c == '.')) {
      return false;
    }
  }
  return true;
}

struct RawSymbol {
  GrammarSymbol symbol;
  std::string name;  // nonterminal name, or the literal as written
};

struct RawRule {
  std::string lhs;
  std::vector<RawSymbol> rhs;
  std::string label;
  int line = 0;
};

// Drops a '#' comment that is not inside quotes.
std::string_view StripComment(std::string_view line) {
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

RawRule ParseRuleLine(std::string_view text, int line) {
  size_t arrow = std::string_view::npos;
  bool quoted = false;
  for (size_t i = 0; i + 1 < text.size(); ++i) {
    if (text[i] == '"') quoted = !quoted;
    if (!quoted && text[i] == '-' && text[i + 1] == '>') {
      arrow = i;
      break;
    }
  }
  if (arrow == std::string_view::npos) throw CompileError("expected '->'", line);

  RawRule rule;
  rule.line = line;
  rule.lhs = std::string(Trim(text.substr(0, arrow)));
  if (!IsIdentifier(rule.lhs) || rule.lhs == "NUMBER") {
    throw CompileError("bad left-hand side '" + rule.lhs + "'", line);
  }

  std::string_view rest = text.substr(arrow + 2);
  size_t i = 0;
  while (i < rest.size()) {
    if (rest[i] == ' ' || rest[i] == '\t' || rest[i] == '\r') {
      ++i;
      continue;
    }
    if (!rule.label.empty()) {
      throw CompileError("symbols after the rule label", line);
    }
    if (rest[i] == '"') {
      size_t close = rest.find('"', i + 1);
      if (close == std::string_view::npos) {
        throw CompileError("unterminated literal", line);
      }
      std::string lit(rest.substr(i + 1, close - i - 1));
      if (lit.empty()) throw CompileError("empty literal", line);
      RawSymbol s;
      s.symbol.kind = GrammarSymbol::kLiteral;
      s.symbol.text = AsciiLower(lit);
      s.name = lit;
      rule.rhs.push_back(std::move(s));
      i = close + 1;
      continue;
    }
    size_t end = i;
    while (end < rest.size() && rest[end] != ' ' && rest[end] != '\t' &&
           rest[end] != '\r') {
      ++end;
    }
    std::string_view word = rest.substr(i, end - i);
    if (word[0] == '@') {
      rule.label = std::string(word.substr(1));
      if (!IsLabel(rule.label)) {
        throw CompileError("bad label '" + std::string(word) + "'", line);
      }
    } else if (word.rfind("WORD:(", 0) == 0) {
      if (word.back() != ')' || word.size() <= 7) {
        throw CompileError("bad word set '" + std::string(word) + "'", line);
      }
      RawSymbol s;
      s.symbol.kind = GrammarSymbol::kWordSet;
      std::string_view body = word.substr(6, word.size() - 7);
      size_t start = 0;
      while (start <= body.size()) {
        size_t bar = body.find('|', start);
        if (bar == std::string_view::npos) bar = body.size();
        std::string w = AsciiLower(body.substr(start, bar - start));
        if (w.empty()) throw CompileError("empty word in word set", line);
        s.symbol.words.push_back(std::move(w));
        start = bar + 1;
      }
      std::sort(s.symbol.words.begin(), s.symbol.words.end());
      s.symbol.words.erase(
          std::unique(s.symbol.words.begin(), s.symbol.words.end()),
          s.symbol.words.end());
      s.name = std::string(word);
      rule.rhs.push_back(std::move(s));
    } else if (word == "NUMBER") {
      RawSymbol s;
      s.symbol.kind = GrammarSymbol::kNumber;
      s.name = "NUMBER";
      rule.rhs.push_back(std::move(s));
    } else if (IsIdentifier(word)) {
      RawSymbol s;
      s.symbol.kind = GrammarSymbol::kNonterminal;
      s.name = std::string(word);
      rule.rhs.push_back(std::move(s));
    } else {
      throw CompileError("unexpected '" + std::string(word) + "'", line);
    }
    i = end;
  }
  return rule;
}

}  // namespace

Grammar compile_grammar(std::string_view source) {
  std::vector<RawRule> raw;
  std::vector<std::pair<std::string, int>> start_names;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= source.size()) {
    size_t nl = source.find('\n', pos);
    if (nl == std::string_view::npos) nl = source.size();
    std::string_view line = Trim(StripComment(source.substr(pos, nl - pos)));
    ++line_no;
    pos = nl + 1;
    if (line.empty()) continue;
    if (line[0] == '%') {
      if (line.rfind("%start", 0) != 0) {
        throw CompileError("unknown directive", line_no);
      }
      std::string name(Trim(line.substr(6)));
      if (!IsIdentifier(name)) {
        throw CompileError("bad start symbol '" + name + "'", line_no);
      }
      start_names.emplace_back(name, line_no);
      continue;
    }
    raw.push_back(ParseRuleLine(line, line_no));
  }
  if (raw.empty()) throw CompileError("grammar has no rules");

  Grammar g;
  for (const RawRule &r : raw) {
    if (!g.ids_.count(r.lhs)) {
      g.ids_[r.lhs] = static_cast<int>(g.names_.size());
      g.names_.push_back(r.lhs);
    }
  }
  g.by_lhs_.resize(g.names_.size());

  std::unordered_set<std::string> labels;
  std::unordered_map<std::string, int> per_lhs;
  for (const RawRule &r : raw) {
    GrammarRule rule;
    rule.lhs = g.ids_.at(r.lhs);
    rule.line = r.line;
    for (const RawSymbol &s : r.rhs) {
      GrammarSymbol sym = s.symbol;
      if (sym.kind == GrammarSymbol::kNonterminal) {
        auto it = g.ids_.find(s.name);
        if (it == g.ids_.end()) {
          throw CompileError("undefined nonterminal " + s.name, r.line);
        }
        sym.nonterminal = it->second;
      } else if (sym.kind == GrammarSymbol::kLiteral && g.ids_.count(s.name)) {
        throw CompileError("literal \"" + s.name + "\" names a nonterminal",
                           r.line);
      }
      rule.rhs.push_back(std::move(sym));
    }
    int n = ++per_lhs[r.lhs];
    rule.label = r.label.empty() ? AsciiLower(r.lhs) + "_" + std::to_string(n)
                                 : r.label;
    if (!labels.insert(rule.label).second) {
      throw CompileError("duplicate label '" + rule.label + "'", r.line);
    }
    g.by_lhs_[rule.lhs].push_back(static_cast<int>(g.rules_.size()));
    g.rules_.push_back(std::move(rule));
  }

  if (start_names.empty()) start_names.emplace_back(raw.front().lhs, 0);
  for (const auto &[name, line] : start_names) {
    if (!g.ids_.count(name)) {
      throw CompileError("start symbol " + name + " has no rules", line);
    }
    if (std::find(g.starts_.begin(), g.starts_.end(), name) ==
        g.starts_.end()) {
      g.starts_.push_back(name);
    }
  }

  // Nullable nonterminals by fixpoint.
  g.nullable_.assign(g.names_.size(), false);
  for (bool changed = true; changed;) {
    changed = false;
    for (const GrammarRule &r : g.rules_) {
      if (g.nullable_[r.lhs]) continue;
      bool all = std::all_of(r.rhs.begin(), r.rhs.end(),
                             [&](const GrammarSymbol &s) {
                               return !s.terminal() &&
                                      g.nullable_[s.nonterminal];
                             });
      if (all) {
        g.nullable_[r.lhs] = true;
        changed = true;
      }
    }
  }

  // A => B when B can be the only non-empty part of an A rule. A cycle here
  // makes the number of parse trees infinite.
  const size_t nn = g.names_.size();
  std::vector<std::vector<std::pair<int, int>>> edges(nn);  // (target, line)
  for (const GrammarRule &r : g.rules_) {
    for (size_t k = 0; k < r.rhs.size(); ++k) {
      if (r.rhs[k].terminal()) continue;
      bool others_nullable = true;
      for (size_t m = 0; m < r.rhs.size(); ++m) {
        if (m == k) continue;
        if (r.rhs[m].terminal() || !g.nullable_[r.rhs[m].nonterminal]) {
          others_nullable = false;
          break;
        }
      }
      if (others_nullable) edges[r.lhs].emplace_back(r.rhs[k].nonterminal, r.line);
    }
  }
  std::vector<int> state(nn, 0);  // 0 new, 1 on stack, 2 done
  std::function<void(int)> visit = [&](int a) {
    state[a] = 1;
    for (const auto &[b, line] : edges[a]) {
      if (state[b] == 1) {
        throw CompileError("derivation cycle between " + g.names_[a] +
                               " and " + g.names_[b],
                           line);
      }
      if (state[b] == 0) visit(b);
    }
    state[a] = 2;
  };
  for (size_t a = 0; a < nn; ++a) {
    if (state[a] == 0) visit(static_cast<int>(a));
  }
  return g;
}

Grammar LoadGrammar(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open grammar " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return compile_grammar(ss.str());
  } catch (const CompileError &e) {
    throw CompileError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Parse trees.

int ParseTree::LeafCount() const {
  if (leaf()) return 1;
  int n = 0;
  for (const ParseTree &c : children) n += c.LeafCount();
  return n;
}

std::string ParseTree::ToString() const {
  if (leaf()) return token->surface;
  std::string s = "(" + rule_label;
  for (const ParseTree &c : children) s += " " + c.ToString();
  return s + ")";
}

// ---------------------------------------------------------------------------
// Earley parser.

namespace {

struct Item {
  int rule;
  int dot;
  int origin;
};

uint64_t ItemKey(const Item &it) {
  return (static_cast<uint64_t>(it.rule) << 32) |
         (static_cast<uint64_t>(it.dot) << 20) |
         static_cast<uint64_t>(it.origin);
}

uint64_t SpanKey(int a, int i, int j) {
  return (static_cast<uint64_t>(a) << 40) | (static_cast<uint64_t>(i) << 20) |
         static_cast<uint64_t>(j);
}

class EarleyParser {
 public:
  EarleyParser(const std::vector<Token> &tokens, const Grammar &g,
               int start, size_t max_trees)
      : tokens_(tokens), g_(g), start_(start), max_trees_(max_trees) {
    if (tokens.size() >= (1u << 20)) {
      throw ValidationError("too many tokens to parse");
    }
    for (const GrammarRule &r : g.rules()) {
      if (r.rhs.size() >= (1u << 12)) {
        throw ValidationError("rule too long to parse");
      }
    }
    ComputeSuffixMinimums();
  }

  void Run(bool everywhere) {
    const int n = static_cast<int>(tokens_.size());
    sets_.assign(n + 1, {});
    seen_.assign(n + 1, {});
    for (int k = 0; k <= n; ++k) {
      if (everywhere || k == 0) {
        for (int r : g_.rules_of(start_)) Add(k, {r, 0, k});
      }
      for (size_t idx = 0; idx < sets_[k].size(); ++idx) {
        const Item it = sets_[k][idx];
        const GrammarRule &rule = g_.rules()[it.rule];
        if (it.dot == static_cast<int>(rule.rhs.size())) {
          completed_rules_.insert(SpanKey(it.rule, it.origin, k));
          derives_.insert(SpanKey(rule.lhs, it.origin, k));
          const auto &waiting = sets_[it.origin];
          for (size_t w = 0; w < waiting.size(); ++w) {
            const Item p = waiting[w];
            const GrammarRule &pr = g_.rules()[p.rule];
            if (p.dot < static_cast<int>(pr.rhs.size()) &&
                !pr.rhs[p.dot].terminal() &&
                pr.rhs[p.dot].nonterminal == rule.lhs) {
              Add(k, {p.rule, p.dot + 1, p.origin});
            }
          }
          continue;
        }
        const GrammarSymbol &sym = rule.rhs[it.dot];
        if (!sym.terminal()) {
          for (int r : g_.rules_of(sym.nonterminal)) Add(k, {r, 0, k});
          // Nullable completion: the empty derivation may already have been
          // completed at k before this item arrived.
          if (g_.nullable(sym.nonterminal)) {
            Add(k, {it.rule, it.dot + 1, it.origin});
          }
        } else if (k < n && Grammar::Matches(sym, tokens_[k].surface)) {
          Add(k + 1, {it.rule, it.dot + 1, it.origin});
        }
      }
    }
  }

  bool Derives(int a, int i, int j) const {
    return derives_.count(SpanKey(a, i, j)) > 0;
  }

  size_t ItemCount() const {
    size_t total = 0;
    for (const auto &s : sets_) total += s.size();
    return total;
  }

  const std::vector<ParseTree> &Trees(int a, int i, int j) {
    uint64_t key = SpanKey(a, i, j);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<ParseTree> out;
    for (int r : g_.rules_of(a)) {
      if (!completed_rules_.count(SpanKey(r, i, j))) continue;
      std::vector<ParseTree> partial;
      Expand(r, 0, i, i, j, &partial, &out);
      if (out.size() >= max_trees_) break;
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  void Add(int k, const Item &it) {
    if (seen_[k].insert(ItemKey(it)).second) sets_[k].push_back(it);
  }

  void Expand(int r, size_t pos, int from, int p, int j,
              std::vector<ParseTree> *partial, std::vector<ParseTree> *out) {
    if (out->size() >= max_trees_) return;
    const GrammarRule &rule = g_.rules()[r];
    if (pos == rule.rhs.size()) {
      if (p != j) return;
      ParseTree node;
      node.rule = r;
      node.rule_label = rule.label;
      node.first_token = from;
      node.last_token = j;
      node.span = SpanOf(from, j);
      node.children = *partial;
      out->push_back(std::move(node));
      return;
    }
    const GrammarSymbol &sym = rule.rhs[pos];
    if (sym.terminal()) {
      if (p < j && Grammar::Matches(sym, tokens_[p].surface)) {
        ParseTree leaf;
        leaf.token = tokens_[p];
        leaf.span = tokens_[p].span;
        leaf.first_token = p;
        leaf.last_token = p + 1;
        partial->push_back(std::move(leaf));
        Expand(r, pos + 1, from, p + 1, j, partial, out);
        partial->pop_back();
      }
      return;
    }
    // The rest of the rule still has to fit in [q, j).
    const int last = j - suffix_min_[r][pos + 1];
    for (int q = p; q <= last; ++q) {
      if (!Derives(sym.nonterminal, p, q)) continue;
      const std::vector<ParseTree> &subs = Trees(sym.nonterminal, p, q);
      for (const ParseTree &sub : subs) {
        partial->push_back(sub);
        Expand(r, pos + 1, from, q, j, partial, out);
        partial->pop_back();
        if (out->size() >= max_trees_) return;
      }
    }
  }

  // suffix_min_[r][k]: fewest tokens rhs[k..] of rule r can yield.
  void ComputeSuffixMinimums() {
    const auto &rules = g_.rules();
    constexpr int kInf = 1 << 28;
    std::vector<int> min_yield(g_.nonterminals().size(), kInf);
    for (bool changed = true; changed;) {
      changed = false;
      for (const GrammarRule &rule : rules) {
        int total = 0;
        for (const GrammarSymbol &sym : rule.rhs) {
          total += sym.terminal() ? 1 : min_yield[sym.nonterminal];
          if (total >= kInf) break;
        }
        if (total < min_yield[rule.lhs]) {
          min_yield[rule.lhs] = total;
          changed = true;
        }
      }
    }
    suffix_min_.resize(rules.size());
    for (size_t r = 0; r < rules.size(); ++r) {
      const auto &rhs = rules[r].rhs;
      suffix_min_[r].assign(rhs.size() + 1, 0);
      for (size_t k = rhs.size(); k-- > 0;) {
        int m = rhs[k].terminal() ? 1 : min_yield[rhs[k].nonterminal];
        suffix_min_[r][k] = std::min(kInf, suffix_min_[r][k + 1] + m);
      }
    }
  }

  Span SpanOf(int i, int j) const {
    if (i < j) {
      return {tokens_[i].span.offset,
              tokens_[j - 1].span.end() - tokens_[i].span.offset};
    }
    if (i < static_cast<int>(tokens_.size())) return {tokens_[i].span.offset, 0};
    if (!tokens_.empty()) return {tokens_.back().span.end(), 0};
    return {0, 0};
  }

  const std::vector<Token> &tokens_;
  const Grammar &g_;
  int start_;
  size_t max_trees_;
  std::vector<std::vector<Item>> sets_;
  std::vector<std::unordered_set<uint64_t>> seen_;
  std::unordered_set<uint64_t> completed_rules_;
  std::unordered_set<uint64_t> derives_;
  std::unordered_map<uint64_t, std::vector<ParseTree>> memo_;
  std::vector<std::vector<int>> suffix_min_;
};

int StartId(const Grammar &g, std::string_view start) {
  int id = g.nonterminal_id(start);
  if (id < 0) {
    throw LookupError("unknown start symbol " + std::string(start));
  }
  return id;
}

}  // namespace

std::vector<ParseTree> earley_parse(const std::vector<Token> &tokens,
                                    const Grammar &grammar,
                                    std::string_view start,
                                    const ParseOptions &options,
                                    ParseStats *stats) {
  const int start_id = StartId(grammar, start);
  EarleyParser parser(tokens, grammar, start_id, options.max_trees);
  parser.Run(!options.full_input);
  const int n = static_cast<int>(tokens.size());

  std::vector<ParseTree> out;
  if (options.full_input) {
    if (parser.Derives(start_id, 0, n)) out = parser.Trees(start_id, 0, n);
  } else {
    int s = 0;
    while (s < n) {
      int best = -1;
      for (int j = n; j > s; --j) {
        if (parser.Derives(start_id, s, j)) {
          best = j;
          break;
        }
      }
      if (best < 0) {
        ++s;
        continue;
      }
      const auto &trees = parser.Trees(start_id, s, best);
      out.insert(out.end(), trees.begin(), trees.end());
      s = best;
    }
  }
  if (stats) {
    stats->items = parser.ItemCount();
    stats->dotted_rules = grammar.dotted_rule_count();
    stats->tokens = tokens.size();
  }
  return out;
}

bool earley_recognize(const std::vector<Token> &tokens, const Grammar &grammar,
                      std::string_view start) {
  const int start_id = StartId(grammar, start);
  EarleyParser parser(tokens, grammar, start_id, 0);
  parser.Run(false);
  return parser.Derives(start_id, 0, static_cast<int>(tokens.size()));
}

}  // namespace texkit

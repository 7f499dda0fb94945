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

// Composition functions, calendar arithmetic and entity extraction.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <functional>
#include <map>

#include "texkit/deep_semantics.h"
#include "texkit/errors.h"

namespace texkit {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Calendar.

namespace {

bool IsLeap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int FloorDiv(int a, int b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }

// Days since 1970-01-01 of a proleptic Gregorian date.
int64_t DaysFromCivil(int y, int m, int d) {
  y -= m <= 2;
  const int64_t era = (y >= 0 ? y : y - 399) / 400;
  const int64_t yoe = y - era * 400;
  const int64_t doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

void CivilFromDays(int64_t z, int *y, int *m, int *d) {
  z += 719468;
  const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const int64_t doe = z - era * 146097;
  const int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const int64_t mp = (5 * doy + 2) / 153;
  *d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  *m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
  *y = static_cast<int>(yoe + era * 400 + (*m <= 2));
}

}  // namespace

int DaysInMonth(int year, int month) {
  static const int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month < 1 || month > 12) throw ValidationError("month out of range");
  return month == 2 && IsLeap(year) ? 29 : kDays[month - 1];
}

bool ReferenceTime::Valid() const {
  return month >= 1 && month <= 12 && day >= 1 &&
         day <= DaysInMonth(year, month) && hour >= 0 && hour <= 23;
}

ReferenceTime ReferenceTime::Now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  localtime_r(&t, &tm);
  return {tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour};
}

ReferenceTime ParseReferenceTime(std::string_view iso) {
  auto fail = [&]() -> ValidationError {
    return ValidationError("bad reference_time '" + std::string(iso) +
                           "', expected YYYY-MM-DD[THH[:MM[:SS]]]");
  };
  auto digits = [&](size_t pos, size_t n) {
    if (pos + n > iso.size()) throw fail();
    int v = 0;
    for (size_t i = pos; i < pos + n; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(iso[i]))) throw fail();
      v = v * 10 + (iso[i] - '0');
    }
    return v;
  };
  if (iso.size() < 10 || iso[4] != '-' || iso[7] != '-') throw fail();
  ReferenceTime t;
  t.year = digits(0, 4);
  t.month = digits(5, 2);
  t.day = digits(8, 2);
  size_t pos = 10;
  if (pos < iso.size() && (iso[pos] == 'T' || iso[pos] == ' ')) {
    t.hour = digits(pos + 1, 2);
    pos += 3;
    for (int part = 0; part < 2 && pos < iso.size() && iso[pos] == ':';
         ++part) {
      int v = digits(pos + 1, 2);
      if (v > 59) throw fail();
      pos += 3;
    }
  }
  if (pos < iso.size() && iso[pos] == 'Z') ++pos;
  if (pos != iso.size()) throw fail();
  if (t.month < 1 || t.month > 12 || !t.Valid()) throw fail();
  return t;
}

ReferenceTime AddMonths(const ReferenceTime &t, int months) {
  int index = t.year * 12 + (t.month - 1) + months;
  ReferenceTime out = t;
  out.year = FloorDiv(index, 12);
  out.month = index - out.year * 12 + 1;
  out.day = std::min(t.day, DaysInMonth(out.year, out.month));
  return out;
}

ReferenceTime AddDays(const ReferenceTime &t, int days) {
  ReferenceTime out = t;
  CivilFromDays(DaysFromCivil(t.year, t.month, t.day) + days, &out.year,
                &out.month, &out.day);
  return out;
}

// ---------------------------------------------------------------------------
// Composition.

namespace {

using Compose = std::function<json(const std::vector<json> &kids,
                                   const ReferenceTime &ref,
                                   const std::string &arg)>;

// Numbers carried up from NUMBER leaves, in order.
std::vector<double> Numbers(const std::vector<json> &kids) {
  std::vector<double> out;
  for (const json &k : kids) {
    if (k.is_object() && k.contains("num")) out.push_back(k["num"].get<double>());
  }
  return out;
}

// First child value holding `key`.
const json *Find(const std::vector<json> &kids, const char *key) {
  for (const json &k : kids) {
    if (k.is_object() && k.contains(key)) return &k;
  }
  return nullptr;
}

const json &Need(const std::vector<json> &kids, const char *key) {
  const json *j = Find(kids, key);
  if (!j) throw NormalizationError(std::string("missing ") + key);
  return *j;
}

int Integer(double v, int lo, int hi, const char *what) {
  if (v != std::floor(v) || v < lo || v > hi) {
    throw NormalizationError(std::string(what) + " out of range");
  }
  return static_cast<int>(v);
}

double Number(const std::vector<json> &kids, size_t i) {
  auto nums = Numbers(kids);
  if (i >= nums.size()) throw NormalizationError("missing number");
  return nums[i];
}

json TimePoint(const ReferenceTime &t, int precision) {
  json v = json::array({t.year});
  if (precision >= 2) v.push_back(t.month);
  if (precision >= 3) v.push_back(t.day);
  if (precision >= 4) v.push_back(t.hour);
  return {{"value", v}};
}

json Date(int y, int m, int d, int precision) {
  if (m < 1 || m > 12) throw NormalizationError("month out of range");
  if (precision >= 3 && (d < 1 || d > DaysInMonth(y, m))) {
    throw NormalizationError("day out of range");
  }
  ReferenceTime t{y, m, precision >= 3 ? d : 1, 0};
  return TimePoint(t, precision);
}

// Applies a {"unit": count} delta; returns the shifted time and precision.
json Shift(const ReferenceTime &ref, const json &delta, int sign) {
  static const std::map<std::string, int> kPrecision = {
      {"year", 1}, {"month", 2}, {"week", 3}, {"day", 3}, {"hour", 4}};
  ReferenceTime t = ref;
  int precision = 0;
  // Coarse units first so that month clamping sees the reference day.
  for (const char *unit : {"year", "month", "week", "day", "hour"}) {
    if (!delta.contains(unit)) continue;
    int n = sign * delta[unit].get<int>();
    std::string u = unit;
    if (u == "year") t = AddMonths(t, 12 * n);
    if (u == "month") t = AddMonths(t, n);
    if (u == "week") t = AddDays(t, 7 * n);
    if (u == "day") t = AddDays(t, n);
    if (u == "hour") {
      int h = t.hour + n;
      t = AddDays(t, FloorDiv(h, 24));
      t.hour = h - FloorDiv(h, 24) * 24;
    }
    precision = std::max(precision, kPrecision.at(u));
  }
  for (const auto &[unit, count] : delta.items()) {
    if (!kPrecision.count(unit)) {
      throw NormalizationError("unsupported time unit " + unit);
    }
  }
  if (precision == 0) throw NormalizationError("empty delta");
  return TimePoint(t, precision);
}

json DeltaOf(const std::vector<json> &kids, double count) {
  std::string unit = Need(kids, "tunit")["tunit"];
  int n = Integer(count, 0, 1000000, "delta");
  return {{"delta", {{unit, n}}}};
}

int HourOf(const std::vector<json> &kids) {
  return Need(kids, "hour")["hour"].get<int>();
}

// 12-hour clock reading, `meridiem` "am" or "pm".
int Hour12(double h, const std::string &meridiem) {
  int v = Integer(h, 1, 12, "hour");
  return meridiem == "pm" ? v % 12 + 12 : v % 12;
}

json NumberJson(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15) {
    return static_cast<int64_t>(v);
  }
  return v;
}

const std::map<std::string, Compose> &Exact() {
  static const auto *m = new std::map<std::string, Compose>{
      {"delta",
       [](const auto &k, const auto &, const auto &) {
         return DeltaOf(k, Number(k, 0));
       }},
      {"delta_one",
       [](const auto &k, const auto &, const auto &) { return DeltaOf(k, 1); }},
      {"duration",
       [](const auto &k, const auto &, const auto &) {
         return Need(k, "delta");
       }},
      {"rel_past",
       [](const auto &k, const auto &ref, const auto &) {
         return Shift(ref, Need(k, "delta")["delta"], -1);
       }},
      {"rel_future",
       [](const auto &k, const auto &ref, const auto &) {
         return Shift(ref, Need(k, "delta")["delta"], 1);
       }},
      {"day",
       [](const auto &k, const auto &ref, const auto &) {
         int off = Need(k, "day_offset")["day_offset"];
         return TimePoint(AddDays(ref, off), 3);
       }},
      {"clock",
       [](const auto &k, const auto &ref, const auto &) {
         ReferenceTime t = ref;
         t.hour = HourOf(k);
         return TimePoint(t, 4);
       }},
      {"day_clock",
       [](const auto &k, const auto &ref, const auto &) {
         ReferenceTime t = AddDays(ref, Need(k, "day_offset")["day_offset"]);
         t.hour = HourOf(k);
         return TimePoint(t, 4);
       }},
      {"clock_12h",
       [](const auto &k, const auto &, const auto &) {
         std::string mer = Need(k, "meridiem")["meridiem"];
         return json{{"hour", Hour12(Number(k, 0), mer)}};
       }},
      {"clock_hm",
       [](const auto &k, const auto &, const auto &) {
         int h = Integer(Number(k, 0), 0, 23, "hour");
         Integer(Number(k, 1), 0, 59, "minute");
         return json{{"hour", h}};
       }},
      {"clock_dian",
       [](const auto &k, const auto &, const auto &) {
         const json *mer = Find(k, "meridiem");
         if (mer) return json{{"hour", Hour12(Number(k, 0), (*mer)["meridiem"])}};
         return json{{"hour", Integer(Number(k, 0), 0, 23, "hour")}};
       }},
      {"date",
       [](const auto &k, const auto &, const auto &) {
         return Need(k, "value");
       }},
      {"date_ymd",
       [](const auto &k, const auto &, const auto &) {
         int y = Integer(Number(k, 0), 1, 9999, "year");
         int m = Integer(Number(k, 1), 1, 12, "month");
         int d = Integer(Number(k, 2), 1, 31, "day");
         return Date(y, m, d, 3);
       }},
      {"date_ym",
       [](const auto &k, const auto &, const auto &) {
         int y = Integer(Number(k, 0), 1, 9999, "year");
         int m = Integer(Number(k, 1), 1, 12, "month");
         return Date(y, m, 1, 2);
       }},
      {"date_y",
       [](const auto &k, const auto &, const auto &) {
         return Date(Integer(Number(k, 0), 1, 9999, "year"), 1, 1, 1);
       }},
      {"date_md",
       [](const auto &k, const auto &ref, const auto &) {
         int m = Integer(Number(k, 0), 1, 12, "month");
         int d = Integer(Number(k, 1), 1, 31, "day");
         return Date(ref.year, m, d, 3);
       }},
      {"date_mdy",
       [](const auto &k, const auto &, const auto &) {
         int m = Need(k, "month")["month"];
         int d = Integer(Number(k, 0), 1, 31, "day");
         int y = Integer(Number(k, 1), 1, 9999, "year");
         return Date(y, m, d, 3);
       }},
      {"date_month_day",
       [](const auto &k, const auto &ref, const auto &) {
         // "March 5" or "March 2019".
         int m = Need(k, "month")["month"];
         double n = Number(k, 0);
         if (n > 31) return Date(Integer(n, 1000, 9999, "year"), m, 1, 2);
         return Date(ref.year, m, Integer(n, 1, 31, "day"), 3);
       }},
      {"date_rel_month_day",
       [](const auto &k, const auto &ref, const auto &) {
         int off = Need(k, "month_offset")["month_offset"];
         ReferenceTime t = AddMonths(ReferenceTime{ref.year, ref.month, 1, 0},
                                     off);
         int d = Integer(Number(k, 0), 1, 31, "day");
         return Date(t.year, t.month, d, 3);
       }},
      {"quantity",
       [](const auto &k, const auto &, const auto &) {
         const json *unit = Find(k, "unit");
         return json{{"value", NumberJson(Number(k, 0))},
                     {"unit", unit ? (*unit)["unit"] : json(nullptr)}};
       }},
      {"quantity_percent",
       [](const auto &k, const auto &, const auto &) {
         return json{{"value", NumberJson(Number(k, 0))}, {"unit", "percent"}};
       }},
      {"day_today", [](const auto &, const auto &, const auto &) {
         return json{{"day_offset", 0}};
       }},
      {"day_tomorrow", [](const auto &, const auto &, const auto &) {
         return json{{"day_offset", 1}};
       }},
      {"day_yesterday", [](const auto &, const auto &, const auto &) {
         return json{{"day_offset", -1}};
       }},
      {"day_after_tomorrow", [](const auto &, const auto &, const auto &) {
         return json{{"day_offset", 2}};
       }},
      {"day_before_yesterday", [](const auto &, const auto &, const auto &) {
         return json{{"day_offset", -2}};
       }},
  };
  return *m;
}

// Label families: the text after the prefix is the argument.
const std::vector<std::pair<std::string, Compose>> &Families() {
  static const auto *v = new std::vector<std::pair<std::string, Compose>>{
      {"tunit_",
       [](const auto &, const auto &, const std::string &arg) {
         return json{{"tunit", arg}};
       }},
      {"unit_",
       [](const auto &, const auto &, const std::string &arg) {
         return json{{"unit", arg}};
       }},
      {"month_",
       [](const auto &, const auto &, const std::string &arg) {
         int m = std::atoi(arg.c_str());
         if (m < 1 || m > 12) throw NormalizationError("bad month " + arg);
         return json{{"month", m}};
       }},
      {"mer_",
       [](const auto &, const auto &, const std::string &arg) {
         if (arg != "am" && arg != "pm") {
           throw NormalizationError("bad meridiem " + arg);
         }
         return json{{"meridiem", arg}};
       }},
      {"mrel_",
       [](const auto &, const auto &, const std::string &arg) {
         static const std::map<std::string, int> kOff = {
             {"prev", -1}, {"this", 0}, {"next", 1}};
         auto it = kOff.find(arg);
         if (it == kOff.end()) throw NormalizationError("bad mrel " + arg);
         return json{{"month_offset", it->second}};
       }},
      {"dsuf_",
       [](const auto &, const auto &, const std::string &) {
         return json(nullptr);
       }},
  };
  return *v;
}

// A trailing "_<digits>" marks a variant spelling of the same meaning:
// "unit_kilogram_2" composes like "unit_kilogram".
std::string BaseLabel(std::string_view label) {
  size_t us = label.rfind('_');
  if (us != std::string_view::npos && us + 1 < label.size() &&
      std::all_of(label.begin() + us + 1, label.end(),
                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return std::string(label.substr(0, us));
  }
  return std::string(label);
}

const Compose *Lookup(std::string_view label, std::string *arg) {
  const std::string full(label);
  const std::string base = BaseLabel(label);
  for (const std::string *l : {&full, &base}) {
    if (auto it = Exact().find(*l); it != Exact().end()) return &it->second;
  }
  // The base form first, so "unit_kilogram_2" reads as kilogram while
  // "month_1" still falls through to the full label.
  for (const std::string *l : {&base, &full}) {
    for (const auto &[prefix, fn] : Families()) {
      if (l->size() > prefix.size() && l->rfind(prefix, 0) == 0) {
        *arg = l->substr(prefix.size());
        return &fn;
      }
    }
  }
  return nullptr;
}

json Evaluate(const ParseTree &tree, const ReferenceTime &ref) {
  if (tree.leaf()) {
    if (auto v = NumberValue(tree.token->surface)) return {{"num", *v}};
    return nullptr;
  }
  std::string arg;
  const Compose *fn = Lookup(tree.rule_label, &arg);
  if (!fn) {
    throw NormalizationError("no composition for label '" + tree.rule_label +
                             "'");
  }
  std::vector<json> kids;
  kids.reserve(tree.children.size());
  for (const ParseTree &c : tree.children) kids.push_back(Evaluate(c, ref));
  try {
    return (*fn)(kids, ref, arg);
  } catch (const json::exception &e) {
    throw NormalizationError("bad value under '" + tree.rule_label +
                             "': " + e.what());
  } catch (const ValidationError &e) {
    throw NormalizationError(e.what());
  }
}

}  // namespace

bool HasComposition(std::string_view label) {
  std::string arg;
  return Lookup(label, &arg) != nullptr;
}

SemanticValue normalize(const ParseTree &tree, const ReferenceTime &ref) {
  if (!ref.Valid()) throw NormalizationError("invalid reference time");
  json v = Evaluate(tree, ref);
  SemanticValue out;
  if (v.is_object() && v.size() == 1 && v.contains("delta")) {
    out.kind = SemanticKind::kTimeDelta;
  } else if (v.is_object() && v.size() == 1 && v.contains("value") &&
             v["value"].is_array()) {
    out.kind = SemanticKind::kTimePoint;
  } else if (v.is_object() && v.size() == 2 && v.contains("value") &&
             v.contains("unit") && v["value"].is_number()) {
    if (!std::isfinite(v["value"].get<double>())) {
      throw NormalizationError("quantity is not finite");
    }
    out.kind = SemanticKind::kQuantity;
  } else {
    throw NormalizationError("'" + tree.rule_label +
                             "' does not yield a complete value");
  }
  out.payload = std::move(v);
  return out;
}

// ---------------------------------------------------------------------------
// Extraction.

DeepSemantics DeepSemantics::Load(const std::string &grammar_dir,
                                  Language lang) {
  namespace fs = std::filesystem;
  if (lang == Language::kAuto) {
    throw ValidationError("grammars are loaded for a concrete language");
  }
  DeepSemantics ds;
  ds.lang_ = lang;
  struct Spec {
    const char *name;
    const char *start;
    const char *type_id;
  };
  // Order is priority: time wins over quantity on ties.
  for (const Spec &spec : {Spec{"time", "TIME", "time.generic"},
                           Spec{"quantity", "QUANTITY", "quantity.generic"}}) {
    fs::path path = fs::path(grammar_dir) /
                    (std::string(LanguageCode(lang)) + "_" + spec.name + ".cfg");
    if (!fs::exists(path)) continue;
    Category cat;
    cat.type_id = spec.type_id;
    cat.grammar = LoadGrammar(path.string());
    cat.start = cat.grammar.nonterminal_id(spec.start) >= 0
                    ? spec.start
                    : cat.grammar.start_symbols().front();
    for (const GrammarRule &r : cat.grammar.rules()) {
      if (!HasComposition(r.label)) {
        throw LoadError(path.string() + ": line " + std::to_string(r.line) +
                        ": no composition for label '" + r.label + "'");
      }
    }
    Lexicon literals = cat.grammar.LiteralLexicon();
    for (const std::string &t : literals.terms()) ds.lexicon_.insert(t);
    ds.categories_.push_back(std::move(cat));
  }
  return ds;
}

std::vector<Token> DeepSemantics::Tokenize(std::u32string_view text) const {
  std::vector<Token> words =
      lang_ == Language::kChinese
          ? segment_words(EncodeUtf8(text), lang_, lexicon_)
          : segment_words(EncodeUtf8(text), lang_);
  return GroupNumberTokens(text, words);
}

std::vector<EntityMention> DeepSemantics::Extract(
    std::u32string_view text, const ReferenceTime &ref) const {
  struct Candidate {
    Span span;
    size_t priority;
    json meaning;
  };
  std::vector<Candidate> candidates;
  const std::vector<Token> tokens = Tokenize(text);
  for (size_t c = 0; c < categories_.size(); ++c) {
    const Category &cat = categories_[c];
    std::vector<ParseTree> trees = earley_parse(tokens, cat.grammar, cat.start);
    // Trees of one window are adjacent; the first that normalizes wins.
    for (size_t i = 0; i < trees.size();) {
      size_t j = i;
      while (j < trees.size() && trees[j].first_token == trees[i].first_token) {
        ++j;
      }
      for (size_t k = i; k < j; ++k) {
        try {
          SemanticValue v = normalize(trees[k], ref);
          candidates.push_back({trees[k].span, c, std::move(v.payload)});
          break;
        } catch (const NormalizationError &) {
        }
      }
      i = j;
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate &a, const Candidate &b) {
              if (a.span.offset != b.span.offset) {
                return a.span.offset < b.span.offset;
              }
              if (a.span.length != b.span.length) {
                return a.span.length > b.span.length;
              }
              return a.priority < b.priority;
            });
  std::vector<EntityMention> out;
  int covered = 0;
  for (Candidate &cand : candidates) {
    if (cand.span.offset < covered) continue;
    EntityMention m;
    m.span = cand.span;
    m.surface = SliceCodePoints(text, cand.span);
    m.type_id = categories_[cand.priority].type_id;
    m.source = MentionSource::kGrammar;
    m.meaning = std::move(cand.meaning);
    covered = cand.span.end();
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace texkit

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

#include <set>

#include "doctest.h"
#include "earley_oracle.h"
#include "test_util.h"
#include "texkit/deep_semantics.h"
#include "texkit/errors.h"

namespace texkit {
namespace {

using testing::SymbolTokens;

std::vector<Token> Repeat(const std::string &s, int n) {
  return SymbolTokens(std::vector<std::string>(n, s));
}

int CompileErrorLine(const std::string &src) {
  try {
    compile_grammar(src);
  } catch (const CompileError &e) {
    return e.line();
  }
  return -1;
}

TEST_SUITE("earley") {

TEST_CASE("dsl basics") {
  Grammar g = compile_grammar(R"(
# comment
%start TIME
TIME -> DELTA "ago"        @rel_past
DELTA -> NUMBER TUNIT      @delta
TUNIT -> WORD:(month|months) @tunit_month
)");
  CHECK(g.start_symbols() == std::vector<std::string>{"TIME"});
  CHECK(g.rules().size() == 3);
  CHECK(g.rules()[2].rhs[0].kind == GrammarSymbol::kWordSet);
  CHECK(g.rules()[1].rhs[0].kind == GrammarSymbol::kNumber);
  // Dotted rules: (2+1) + (2+1) + (1+1).
  CHECK(g.dotted_rule_count() == 8);
  auto trees = earley_parse(SymbolTokens({"22", "months", "ago"}), g, "TIME");
  REQUIRE(trees.size() == 1);
  CHECK(trees[0].ToString() ==
        "(rel_past (delta 22 (tunit_month months)) ago)");
  CHECK(trees[0].LeafCount() == 3);
  CHECK(trees[0].span == Span{0, 13});
}

TEST_CASE("automatic labels and literal matching") {
  Grammar g = compile_grammar("S -> \"Hello\" X\nX -> \"World\"\n");
  CHECK(g.rules()[0].label == "s_1");
  CHECK(g.rules()[1].label == "x_1");
  CHECK(earley_recognize(SymbolTokens({"hello", "WORLD"}), g, "S"));
  CHECK_FALSE(earley_recognize(SymbolTokens({"hello"}), g, "S"));
}

TEST_CASE("compile errors carry line numbers") {
  CHECK(CompileErrorLine("S -> A\n") == 1);                     // undefined
  CHECK(CompileErrorLine("S -> \"a\" @x\nS -> \"b\" @x\n") == 2);  // dup label
  CHECK(CompileErrorLine("S -> \"a\nb\"\n") == 1);  // unterminated literal
  CHECK(CompileErrorLine("s x -> \"a\"\n") == 1);   // bad lhs
  CHECK(CompileErrorLine("S -> \"\"\n") == 1);      // empty literal
  CHECK(CompileErrorLine("S -> \"a\" @x y\n") == 1);
  CHECK(CompileErrorLine("%start Q\nS -> \"a\"\n") > 0);
  CHECK_THROWS_AS(compile_grammar("# nothing\n"), CompileError);
  // A literal spelled like a nonterminal.
  CHECK_THROWS_AS(compile_grammar("S -> \"S\"\n"), CompileError);
}

TEST_CASE("derivation cycles are rejected") {
  CHECK_THROWS_AS(compile_grammar("A -> B\nB -> A\nA -> \"a\"\n"),
                  CompileError);
  // Cycle through a nullable sibling.
  CHECK_THROWS_AS(compile_grammar("A -> A E\nA -> \"a\"\nE ->\n"),
                  CompileError);
  CHECK_NOTHROW(compile_grammar("A -> A \"+\" A\nA -> \"a\"\n"));
}

TEST_CASE("empty rules") {
  Grammar g = compile_grammar("S -> OPT \"x\"\nOPT ->\nOPT -> \"y\"\n");
  CHECK(g.nullable(g.nonterminal_id("OPT")));
  CHECK_FALSE(g.nullable(g.nonterminal_id("S")));
  ParseOptions full;
  full.full_input = true;
  CHECK(earley_parse(SymbolTokens({"x"}), g, "S", full).size() == 1);
  CHECK(earley_parse(SymbolTokens({"y", "x"}), g, "S", full).size() == 1);
  CHECK(earley_parse(SymbolTokens({"y", "y", "x"}), g, "S", full).empty());
}

TEST_CASE("ambiguity counts are Catalan numbers") {
  Grammar g = compile_grammar("S -> S S\nS -> \"a\"\n");
  ParseOptions full;
  full.full_input = true;
  const uint64_t catalan[] = {1, 1, 2, 5, 14, 42, 132, 429};
  for (int n = 1; n <= 8; ++n) {
    auto trees = earley_parse(Repeat("a", n), g, "S", full);
    CHECK(trees.size() == catalan[n - 1]);
    std::set<std::string> distinct;
    for (const auto &t : trees) {
      CHECK(t.LeafCount() == n);
      distinct.insert(t.ToString());
    }
    CHECK(distinct.size() == trees.size());
  }
}

TEST_CASE("substring scan returns the longest window per start") {
  Grammar g = compile_grammar("S -> S S\nS -> \"a\"\n");
  CHECK(earley_parse(Repeat("a", 3), g, "S").size() == 2);
  auto trees = earley_parse(SymbolTokens({"b", "a", "b", "a", "a"}), g, "S");
  // Windows [1,2) and [3,5).
  REQUIRE(trees.size() == 2);
  CHECK(trees[0].first_token == 1);
  CHECK(trees[0].last_token == 2);
  CHECK(trees[1].first_token == 3);
  CHECK(trees[1].last_token == 5);
}

TEST_CASE("tree cap") {
  Grammar g = compile_grammar("S -> S S\nS -> \"a\"\n");
  ParseOptions opts;
  opts.full_input = true;
  opts.max_trees = 10;
  CHECK(earley_parse(Repeat("a", 8), g, "S", opts).size() == 10);
}

TEST_CASE("agreement with exhaustive derivation counting") {
  for (const auto &tg : testing::OracleGrammars()) {
    Grammar g = compile_grammar(tg.Dsl());
    ParseOptions full;
    full.full_input = true;
    int max_len = tg.alphabet.size() > 3 ? 5 : 7;
    testing::ForEachString(tg.alphabet, max_len, [&](const auto &words) {
      auto toks = SymbolTokens(words);
      uint64_t expected = testing::CountDerivations(tg, words);
      CHECK(earley_recognize(toks, g, tg.start) == (expected > 0));
      CHECK(earley_parse(toks, g, tg.start, full).size() == expected);
    });
  }
}

TEST_CASE("chart size stays within the quadratic ceiling") {
  Grammar g = compile_grammar("S -> S S\nS -> \"a\"\n");
  for (int n : {5, 10, 20, 40}) {
    ParseStats stats;
    ParseOptions opts;
    opts.full_input = true;
    opts.max_trees = 1;
    earley_parse(Repeat("a", n), g, "S", opts, &stats);
    CHECK(stats.tokens == static_cast<size_t>(n));
    CHECK(stats.dotted_rules == g.dotted_rule_count());
    CHECK(stats.items > 0);
    CHECK(stats.items <= stats.dotted_rules * (n + 1) * (n + 1));
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace texkit

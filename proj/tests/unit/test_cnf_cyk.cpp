#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "ratindex/cnf.hpp"
#include "ratindex/cyk.hpp"
#include "ratindex/error.hpp"
#include "ratindex/parse_tree.hpp"

using namespace ratindex;

TEST_CASE("anbn converts and CYK agrees with derivation search") {
  Grammar g = parse_grammar("S -> a S b | a b\n");
  CnfGrammar c = to_cnf(g);
  for (const BinaryRule& r : c.binary_rules()) CHECK(r.lhs < c.nonterminal_count());
  auto lang = oracle::bounded_languages(g, 6);
  for (const Word& w : oracle::words_up_to(oracle::sorted_alphabet(g), 6))
    CHECK(cyk_membership(c, w).accepted == (lang[g.start()].count(w) > 0));
  CHECK(cyk_membership(c, parse_word(g, "aabb")).accepted);
  CHECK_FALSE(cyk_membership(c, parse_word(g, "aab")).accepted);
  CHECK_FALSE(cyk_membership(c, Word{}).accepted);
}

TEST_CASE("already-CNF grammar keeps its terminal rules") {
  Grammar g = parse_grammar("S -> A B\nA -> a\nB -> b\n");
  CnfGrammar c = to_cnf(g);
  CHECK(c.binary_rules().size() == 1);
  CHECK(c.terminal_rules().size() == 2);
  CHECK(c.grammar().find_nonterminal("A").has_value());
  CHECK(cyk_membership(c, parse_word(g, "ab")).accepted);
}

TEST_CASE("S -> S has an empty language") {
  try {
    to_cnf(parse_grammar("S -> S\n"));
    FAIL("expected empty-language error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyLanguage);
  }
}

TEST_CASE("epsilon membership is preserved through a fresh start") {
  Grammar g = parse_grammar("S -> a S b S | ε\n");
  CnfGrammar c = to_cnf(g);
  CHECK(c.epsilon_at_start());
  for (const BinaryRule& r : c.binary_rules()) {
    CHECK(r.left != c.start());
    CHECK(r.right != c.start());
  }
  CHECK(cyk_membership(c, Word{}).accepted);
  CHECK(cyk_membership(c, parse_word(g, "abab")).accepted);
  CHECK(cyk_membership(c, parse_word(g, "aabb")).accepted);
  CHECK_FALSE(cyk_membership(c, parse_word(g, "abba")).accepted);
}

TEST_CASE("CYK trees are valid and yield the word") {
  Grammar g = parse_grammar("S -> a S b | a b | S S\n");
  CnfGrammar c = to_cnf(g);
  for (const char* text : {"ab", "aabb", "abab", "aabbab"}) {
    Word w = parse_word(g, text);
    Membership m = cyk_membership(c, w, true);
    REQUIRE(m.accepted);
    REQUIRE(m.tree);
    CHECK(is_valid_tree(c.grammar(), *m.tree));
    CHECK(yield(*m.tree) == w);
  }
}

TEST_CASE("from_grammar rejects non-CNF shapes") {
  CHECK_THROWS_AS(CnfGrammar::from_grammar(parse_grammar("S -> a b\n")), Error);
  CHECK_NOTHROW(CnfGrammar::from_grammar(parse_grammar("S -> A A\nA -> a\n")));
}

TEST_CASE("property: CNF conversion preserves languages up to length 6") {
  std::mt19937_64 rng(20240611);
  gen::GrammarShape shape;
  int checked = 0;
  for (int round = 0; round < 300; ++round) {
    shape.nonterminals = 1 + round % 4;
    Grammar g = gen::random_grammar(rng, shape);
    auto lang = oracle::bounded_languages(g, 6);
    if (lang[g.start()].empty() && generating_nonterminals(g)[g.start()] == false) {
      CHECK_THROWS_AS(to_cnf(g), Error);
      continue;
    }
    CnfGrammar c;
    try {
      c = to_cnf(g);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::CapExceeded);
      continue;
    }
    CHECK(c.epsilon_at_start() == (lang[g.start()].count(Word{}) > 0));
    for (const Word& w : oracle::words_up_to(oracle::sorted_alphabet(g), 6)) {
      bool expected = lang[g.start()].count(w) > 0;
      if (cyk_membership(c, w).accepted != expected) {
        FAIL_CHECK("mismatch on ", format_grammar(g), " word ", format_word(g, w));
        break;
      }
    }
    ++checked;
  }
  CHECK(checked > 150);
}

#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "ratindex/error.hpp"
#include "ratindex/nested_word.hpp"
#include "ratindex/parse_tree.hpp"

using namespace ratindex;

namespace {

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

ParseTree inner(std::vector<ParseTree> children) { return ParseTree{TreeLabel::nonterminal(0), std::move(children)}; }
ParseTree leaf() { return ParseTree{TreeLabel::terminal(0), {}}; }

}  // namespace

TEST_CASE("matching pairs of the worked run") {
  auto w = WellNestedWord::parse("āāāaaāaa");
  CHECK(matching_pairs(w).pairs == Pairs{{1, 8}, {2, 5}, {3, 4}, {6, 7}});
  CHECK(matching_pairs(WellNestedWord::parse("āa")).pairs == Pairs{{1, 2}});
}

TEST_CASE("unbalanced words are rejected") {
  CHECK_THROWS_AS(WellNestedWord::parse("āaa"), Error);
  CHECK_THROWS_AS(WellNestedWord::parse("aā"), Error);
  CHECK_THROWS_AS(WellNestedWord::from_moves({Move::Push}), Error);
  try {
    WellNestedWord::parse("āaa");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unbalanced);
  }
}

TEST_CASE("parentheses notation") {
  auto w = WellNestedWord::parse("((()) ())");
  CHECK(w.to_string() == "āāāaaāaa");
  CHECK(w.to_parens() == "((())())");
}

TEST_CASE("harmonics") {
  CHECK(harmonic(0).empty());
  CHECK(harmonic(1).to_string() == "āaāa");
  CHECK(harmonic(2).to_string() == "āāaāaaāāaāaa");
  CHECK(harmonic(2).size() == 12);
  for (unsigned k = 1; k <= 10; ++k) CHECK(harmonic(k).size() == (std::size_t{1} << (k + 2)) - 4);
  CHECK_THROWS_AS(harmonic(21), Error);
  CHECK_NOTHROW(harmonic(3, 3));
  CHECK_THROWS_AS(harmonic(4, 3), Error);
}

TEST_CASE("oscillation examples") {
  CHECK(oscillation(WellNestedWord::parse("āāāaaāaa")) == 1);
  CHECK(oscillation_bruteforce(WellNestedWord::parse("āāāaaāaa")) == 1);
  CHECK(oscillation_bruteforce(WellNestedWord::parse("āa")) == 0);
  CHECK(oscillation_bruteforce(WellNestedWord::parse("āaāa")) == 1);
  for (unsigned k = 0; k <= 2; ++k) CHECK(oscillation_bruteforce(harmonic(k)) == k);
  for (unsigned k = 0; k <= 8; ++k) CHECK(oscillation(harmonic(k)) == k);
  for (std::size_t m = 1; m <= 10; ++m) {
    std::vector<Move> spine(m, Move::Push);
    spine.insert(spine.end(), m, Move::Pop);
    auto w = WellNestedWord::from_moves(spine);
    CHECK(oscillation(w) == 0);
    CHECK(oscillation_bruteforce(w) == 0);
  }
}

TEST_CASE("brute force respects its cap") {
  CHECK_THROWS_AS(oscillation_bruteforce(harmonic(3)), Error);  // 28 moves
  CHECK(oscillation_bruteforce(harmonic(3), 28) == 3);
}

TEST_CASE("harmonic k is a removal remainder of harmonic k+1") {
  // oscillation of h_{k+1} is k+1 >= k, and removing pairs only lowers it
  for (unsigned k = 0; k < 3; ++k) CHECK(oscillation_bruteforce(harmonic(k + 1), 40) >= k);
}

TEST_CASE("property: oscillation equals brute force on every word up to 12 moves") {
  for (std::size_t moves = 0; moves <= 12; moves += 2)
    for (const auto& w : oracle::well_nested_words(moves)) CHECK(oscillation(w) == oscillation_bruteforce(w));
}

TEST_CASE("property: matching pairs are total and non-crossing") {
  for (const auto& w : oracle::well_nested_words(10)) {
    auto pairs = matching_pairs(w).pairs;
    CHECK(pairs.size() * 2 == w.size());
    for (auto [i, j] : pairs) {
      CHECK(i < j);
      CHECK(w.moves()[i - 1] == Move::Push);
      CHECK(w.moves()[j - 1] == Move::Pop);
    }
    for (auto [i, j] : pairs)
      for (auto [k, l] : pairs)
        if (i < k) CHECK((j < k || l < j));
  }
}

TEST_CASE("alpha clauses") {
  CHECK(alpha_of_tree(leaf()).to_string() == "āa");
  // root with two leaves: ā · a ā ā · a · a
  CHECK(alpha_of_tree(inner({leaf(), leaf()})).to_string() == "āaāāaa");
  CHECK(alpha_of_tree(inner({leaf(), leaf()})).size() == 6);
  CHECK(alpha_of_tree(inner({inner({leaf()})})).to_string() == "āaāaāa");
}

TEST_CASE("property: alpha is balanced with two moves per node") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    CnfGrammar g = gen::random_cnf(rng, gen::GrammarShape{});
    ParseTree t = sample_parse_tree(g, rng);
    auto w = alpha_of_tree(t);
    CHECK(w.size() == 2 * node_count(t));
    CHECK_NOTHROW(matching_pairs(w));
  }
}

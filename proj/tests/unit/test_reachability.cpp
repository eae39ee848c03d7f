#include <doctest.h>

#include <random>
#include <set>

#include "generators.hpp"
#include "oracles.hpp"
#include "ratindex/error.hpp"
#include "ratindex/intersection.hpp"
#include "ratindex/reachability.hpp"

using namespace ratindex;

namespace {

using PairSet = std::set<std::pair<NodeId, NodeId>>;

PairSet as_set(const std::vector<std::pair<NodeId, NodeId>>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("descendant relation on a child path") {
  CnfGrammar g = to_cnf(parse_grammar("D -> child | D child\n"));
  LabeledGraph d = parse_graph("1 child 2\n2 child 3\n");
  auto rel = all_pairs_reach(g, d);
  std::vector<std::pair<NodeId, NodeId>> names;
  for (auto [i, j] : rel.start_facts()) names.emplace_back(std::stoul(d.node_name(i)), std::stoul(d.node_name(j)));
  CHECK(names == std::vector<std::pair<NodeId, NodeId>>{{1, 2}, {1, 3}, {2, 3}});
  auto path = witness_path(rel, *d.find_node("1"), *d.find_node("3"));
  CHECK(path.size() == 3);
}

TEST_CASE("balanced parentheses over a cycle") {
  CnfGrammar g = to_cnf(parse_grammar("S -> o S c | o c | S S\n"));
  LabeledGraph d = parse_graph("0 o 1\n1 o 0\n0 c 2\n2 c 0\n");
  auto rel = all_pairs_reach(g, d);
  CHECK(rel.contains(0, 0, g.start()));
  CHECK(as_set(rel.start_facts()) == oracle::path_enumeration_reach(g, d, 8));
}

TEST_CASE("epsilon gives reflexive facts") {
  CnfGrammar g = to_cnf(parse_grammar("S -> a S | ε\n"));
  LabeledGraph d = parse_graph("states: x y\nalphabet: a\n");
  auto rel = all_pairs_reach(g, d);
  CHECK(rel.start_facts().size() == 2);
  CHECK(witness_path(rel, 0, 0) == std::vector<NodeId>{0});
}

TEST_CASE("unreachable pair") {
  CnfGrammar g = to_cnf(parse_grammar("S -> a\n"));
  LabeledGraph d = parse_graph("x a y\n");
  auto rel = all_pairs_reach(g, d);
  try {
    witness_path(rel, 1, 0);
    FAIL("expected not-reachable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotReachable);
  }
}

TEST_CASE("labels unknown to the grammar are ignored") {
  CnfGrammar g = to_cnf(parse_grammar("S -> a\n"));
  LabeledGraph d = parse_graph("x zzz y\nx a y\n");
  CHECK(all_pairs_reach(g, d).start_facts().size() == 1);
}

TEST_CASE("property: reach agrees with path enumeration and the product") {
  std::mt19937_64 rng(8080);
  for (int round = 0; round < 120; ++round) {
    CnfGrammar g = gen::random_cnf(rng, gen::GrammarShape{});
    LabeledGraph d = gen::random_graph(rng, 1 + round % 5, gen::label_names(g.grammar()), 0.3);
    auto rel = all_pairs_reach(g, d);
    PairSet facts = as_set(rel.start_facts());

    // every fact has a witness path spelling a word of the language
    for (auto [i, j] : facts) {
      auto path = witness_path(rel, i, j);
      REQUIRE(!path.empty());
      CHECK(path.front() == i);
      CHECK(path.back() == j);
      CHECK(oracle::path_spells_language(g, d, path));
    }
    // short paths are a lower bound
    for (auto pr : oracle::path_enumeration_reach(g, d, 5)) CHECK(facts.count(pr));

    // pairs of realizable start triples in the product with graph semantics
    TripleGrammar tg = bar_hillel(g, d);
    PairSet product;
    for (TripleId t : tg.start_triples()) product.emplace(tg.triples()[t].from, tg.triples()[t].to);
    if (g.epsilon_at_start())
      for (NodeId i = 0; i < d.node_count(); ++i) product.emplace(i, i);
    CHECK(product == facts);
  }
}

#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "ratindex/classify.hpp"
#include "ratindex/datalog.hpp"
#include "ratindex/error.hpp"

using namespace ratindex;

namespace {

const char* kDesc =
    "% descendants\n"
    "Desc(x, y) :- Child(x, y).\n"
    "Desc(x, y) :- Child(x, z), Desc(z, y).\n"
    "?- Desc.\n";

ErrorCode code_of(std::string_view text) {
  try {
    parse_chain_program(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

using PairSet = std::set<std::pair<NodeId, NodeId>>;

}  // namespace

TEST_CASE("descendant program parses") {
  ChainProgram p = parse_chain_program(kDesc);
  CHECK(p.rules.size() == 2);
  CHECK(p.query == "Desc");
  CHECK(p.idb_predicates() == std::vector<std::string>{"Desc"});
  CHECK(p.edb_predicates() == std::vector<std::string>{"Child"});
  CHECK(p.rules[1].body == std::vector<std::string>{"Child", "Desc"});
}

TEST_CASE("descendant grammar") {
  Grammar g = chain_to_cfg(parse_chain_program(kDesc));
  CHECK(g.nonterminal_name(g.start()) == "Desc");
  CHECK_FALSE(g.find_nonterminal("Child").has_value());
  CHECK(g.find_terminal("child").has_value());
  CHECK(format_grammar(g) == "Desc -> child | child Desc\n");
  CHECK(is_linear(g));
}

TEST_CASE("single edb rule") {
  Grammar g = chain_to_cfg(parse_chain_program("P(x, y) :- e(x, y).\n"));
  CHECK(format_grammar(g) == "P -> e\n");
}

TEST_CASE("rejected programs") {
  CHECK(code_of("P(x, y) :- Q(y, x).\n") == ErrorCode::NonChainRule);
  CHECK(code_of("P(x, y, z) :- Q(x, y).\n") == ErrorCode::NonBinaryPredicate);
  CHECK(code_of("P(x, y) :- Q(x, z), R(x, y).\n") == ErrorCode::NonChainRule);
  CHECK(code_of("P(x, x) :- Q(x, x).\n") == ErrorCode::NonChainRule);
  CHECK(code_of("P(x, y) :- Q(x, y)\n") == ErrorCode::Syntax);
  CHECK(code_of("P(x, y) :- e(x, y).\n?- Q.\n") == ErrorCode::UndeclaredSymbol);
  try {
    parse_chain_program("P(x, y) :- Q(y, x).\n");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("P(x, y) :- Q(y, x).") != std::string::npos);
  }
}

TEST_CASE("evaluation on a child path") {
  ChainProgram p = parse_chain_program(kDesc);
  LabeledGraph d = parse_graph("1 child 2\n2 child 3\n");
  std::vector<std::pair<std::string, std::string>> facts;
  for (auto [i, j] : evaluate(p, d)) facts.emplace_back(d.node_name(i), d.node_name(j));
  CHECK(facts == std::vector<std::pair<std::string, std::string>>{{"1", "2"}, {"1", "3"}, {"2", "3"}});
}

TEST_CASE("empty graph and unknown labels") {
  ChainProgram p = parse_chain_program(kDesc);
  CHECK(evaluate(p, parse_graph("alphabet: child\n")).empty());
  try {
    evaluate(p, parse_graph("1 parent 2\n"));
    FAIL("expected unknown edb label");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownEdbLabel);
  }
}

TEST_CASE("property: evaluation equals the naive fixpoint") {
  const char* same_gen =
      "Sg(x, y) :- up(x, y).\n"
      "Sg(x, y) :- up(x, z), Sg(z, w), down(w, y).\n"
      "Path(x, y) :- Sg(x, y).\n"
      "Path(x, y) :- Path(x, z), Path(z, y).\n"
      "?- Path.\n";
  ChainProgram p = parse_chain_program(same_gen);
  std::mt19937_64 rng(91);
  for (int round = 0; round < 20; ++round) {
    LabeledGraph d = gen::random_graph(rng, 1 + round % 5, {"up", "down"}, 0.3);
    auto got = evaluate(p, d);
    CHECK(PairSet(got.begin(), got.end()) == oracle::naive_datalog(p, d));
  }
}

TEST_CASE("property: descendants are the transitive closure on DAGs") {
  ChainProgram p = parse_chain_program(kDesc);
  std::mt19937_64 rng(12);
  for (int round = 0; round < 20; ++round) {
    LabeledGraph d = gen::random_dag(rng, 2 + round % 7, "child", 0.35);
    auto got = evaluate(p, d);
    CHECK(PairSet(got.begin(), got.end()) == oracle::transitive_closure(d, "child"));
  }
}

#include "ratindex/selftest.hpp"

#include <functional>
#include <sstream>

#include "ratindex/bounds.hpp"
#include "ratindex/classify.hpp"
#include "ratindex/cnf.hpp"
#include "ratindex/cyk.hpp"
#include "ratindex/datalog.hpp"
#include "ratindex/error.hpp"
#include "ratindex/intersection.hpp"
#include "ratindex/nested_word.hpp"
#include "ratindex/parse_tree.hpp"
#include "ratindex/reachability.hpp"
#include "ratindex/rho.hpp"

namespace ratindex {

namespace {

ParseTree node(std::vector<ParseTree> children) {
  return ParseTree{TreeLabel::nonterminal(0), std::move(children)};
}
ParseTree leaf() { return ParseTree{TreeLabel::terminal(0), {}}; }

constexpr const char* kAnBn = "S -> a S b | a b\n";

}  // namespace

std::vector<SelftestCheck> run_selftest() {
  std::vector<SelftestCheck> out;
  auto check = [&](std::string name, const std::function<std::string()>& body, const std::string& expected) {
    SelftestCheck c{std::move(name), false, {}};
    try {
      std::string got = body();
      c.passed = got == expected;
      c.detail = c.passed ? got : "expected " + expected + ", got " + got;
    } catch (const std::exception& e) {
      c.detail = e.what();
    }
    out.push_back(std::move(c));
  };

  const WellNestedWord run = WellNestedWord::parse("āāāaaāaa");
  check("matching pairs of āāāaaāaa", [&] {
    std::ostringstream os;
    for (auto [i, j] : matching_pairs(run).pairs) os << '(' << i << ',' << j << ')';
    return os.str();
  }, "(1,8)(2,5)(3,4)(6,7)");
  check("oscillation of āāāaaāaa", [&] { return std::to_string(oscillation(run)); }, "1");
  check("brute-force oscillation of āāāaaāaa", [&] { return std::to_string(oscillation_bruteforce(run)); }, "1");
  check("harmonic h2", [] { return harmonic(2).to_string(); }, "āāaāaaāāaāaa");
  check("dimension of two-level tree", [] {
    ParseTree t = node({node({node({leaf(), leaf()}), node({leaf()})}), node({leaf(), leaf()})});
    return std::to_string(dimension(t));
  }, "2");

  check("cyk a^m b^m", [] {
    Grammar g = parse_grammar(kAnBn);
    CnfGrammar c = to_cnf(g);
    std::string s;
    for (const char* w : {"aabb", "aab", "ab", "ba"}) s += cyk_membership(c, parse_word(g, w)).accepted ? '1' : '0';
    return s;
  }, "1010");

  check("shortest word in a^m b^m ∩ two_cycle(2,3)", [] {
    CnfGrammar c = to_cnf(parse_grammar(kAnBn));
    auto w = shortest_word(c, two_cycle_family(2, 3));
    if (!w) return std::string("empty");
    return std::to_string(w->length) + " " + format_word(c.grammar(), w->witness.word);
  }, "12 aaaaaabbbbbb");

  check("descendant facts on a child path", [] {
    ChainProgram p = parse_chain_program(
        "Desc(x, y) :- Child(x, y).\n"
        "Desc(x, y) :- Child(x, z), Desc(z, y).\n");
    LabeledGraph d = parse_graph("1\tchild\t2\n2\tchild\t3\n");
    std::string s;
    for (auto [i, j] : evaluate(p, d)) s += "(" + d.node_name(i) + "," + d.node_name(j) + ")";
    return s;
  }, "(1,2)(1,3)(2,3)");

  check("classification of S -> S S | a", [] {
    Grammar g = parse_grammar("S -> S S | a\n");
    std::string s = is_linear(g) ? "linear" : "nonlinear";
    s += is_superlinear(g) ? " superlinear" : " not-superlinear";
    s += expansive_nonterminals(g).empty() ? " nonexpansive" : " expansive";
    return s;
  }, "nonlinear not-superlinear expansive");

  check("oscillation bound, |N|=2 k=1 n=3", [] {
    return bound_value(BoundFormula{BoundClass::Oscillation, 2, 1, 1, 1}, 3).str();
  }, "324");

  return out;
}

}  // namespace ratindex

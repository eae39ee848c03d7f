#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <string>

#include "ratindex/ratindex.h"

namespace {

// takes ownership of a library string
std::string take(char* s) {
  std::string out = s ? s : "";
  rx_string_free(s);
  return out;
}

struct Anbn {
  rx_grammar* g = nullptr;
  rx_cnf* c = nullptr;
  Anbn() {
    REQUIRE(rx_grammar_parse("S -> a S b | a b\n", &g) == RX_OK);
    REQUIRE(rx_grammar_to_cnf(g, &c) == RX_OK);
  }
  ~Anbn() {
    rx_cnf_free(c);
    rx_grammar_free(g);
  }
};

}  // namespace

TEST_CASE("status names and errors") {
  CHECK(std::string(rx_status_name(RX_OK)) == "ok");
  CHECK(std::strlen(rx_version()) > 0);
  rx_grammar* g = nullptr;
  CHECK(rx_grammar_parse("S -> A\n", &g) == RX_ERR_UNDECLARED_SYMBOL);
  CHECK(g == nullptr);
  CHECK(std::strlen(rx_last_error()) > 0);
  CHECK(rx_grammar_parse(nullptr, &g) == RX_ERR_INVALID_ARGUMENT);
  rx_cnf* c = nullptr;
  REQUIRE(rx_grammar_parse("S -> S\n", &g) == RX_OK);
  CHECK(rx_grammar_to_cnf(g, &c) == RX_ERR_EMPTY_LANGUAGE);
  rx_grammar_free(g);
}

TEST_CASE("membership with tree") {
  Anbn a;
  int accepted = 0;
  char* tree = nullptr;
  REQUIRE(rx_member(a.c, "aabb", &accepted, &tree) == RX_OK);
  CHECK(accepted == 1);
  CHECK(take(tree).find('(') == 0);
  REQUIRE(rx_member(a.c, "aab", &accepted, nullptr) == RX_OK);
  CHECK(accepted == 0);
  CHECK(rx_member(a.c, "abc", &accepted, nullptr) == RX_ERR_ALPHABET);
}

TEST_CASE("shortest word against two_cycle(2,3)") {
  Anbn a;
  rx_graph* k = nullptr;
  REQUIRE(rx_two_cycle(2, 3, &k) == RX_OK);
  rx_shortest_result r{};
  REQUIRE(rx_shortest(a.c, k, 0, &r) == RX_OK);
  CHECK(r.nonempty == 1);
  CHECK(r.length == 12);
  CHECK(std::string(r.word) == "aaaaaabbbbbb");
  CHECK(r.height_violated == 0);
  CHECK(r.height <= r.height_bound);
  rx_shortest_result_clear(&r);
  CHECK(r.word == nullptr);
  rx_graph_free(k);
}

TEST_CASE("reachability and witness paths") {
  rx_grammar* g = nullptr;
  rx_cnf* c = nullptr;
  rx_graph* d = nullptr;
  rx_relation* rel = nullptr;
  REQUIRE(rx_grammar_parse("D -> child | D child\n", &g) == RX_OK);
  REQUIRE(rx_grammar_to_cnf(g, &c) == RX_OK);
  REQUIRE(rx_graph_parse("1 child 2\n2 child 3\n", 0, &d) == RX_OK);
  REQUIRE(rx_reach(c, d, &rel) == RX_OK);
  CHECK(rx_relation_size(rel) == 3);
  size_t s = 0, t = 0;
  REQUIRE(rx_relation_fact(rel, 1, &s, &t) == RX_OK);
  const char* name = nullptr;
  REQUIRE(rx_graph_node_name(d, s, &name) == RX_OK);
  CHECK(std::string(name) == "1");
  REQUIRE(rx_graph_node_name(d, t, &name) == RX_OK);
  CHECK(std::string(name) == "3");
  size_t* nodes = nullptr;
  size_t len = 0;
  REQUIRE(rx_witness_path(rel, s, t, &nodes, &len) == RX_OK);
  CHECK(len == 3);
  rx_array_free(nodes);
  CHECK(rx_witness_path(rel, t, s, &nodes, &len) == RX_ERR_NOT_REACHABLE);
  char* all = nullptr;
  REQUIRE(rx_relation_format_all(rel, &all) == RX_OK);
  CHECK(take(all).find("1\t3\tD") != std::string::npos);
  rx_relation_free(rel);
  rx_graph_free(d);
  rx_cnf_free(c);
  rx_grammar_free(g);
}

TEST_CASE("tree and nested-word metrics") {
  Anbn a;
  rx_tree_metrics m{};
  REQUIRE(rx_tree_metrics_of_word(a.c, "aabb", 30, &m) == RX_OK);
  CHECK(m.dimension == 1);
  CHECK(m.nodes == 11);
  CHECK(m.oscillation_bruteforce == static_cast<int>(m.oscillation));
  rx_tree_metrics_clear(&m);
  CHECK(rx_tree_metrics_of_word(a.c, "abab", 20, &m) == RX_ERR_INVALID_ARGUMENT);

  char* pairs = nullptr;
  unsigned osc = 9;
  int brute = 9;
  REQUIRE(rx_nested_metrics("āāāaaāaa", 20, &pairs, &osc, &brute) == RX_OK);
  CHECK(take(pairs) == "(1,8)(2,5)(3,4)(6,7)");
  CHECK(osc == 1);
  CHECK(brute == 1);
  CHECK(rx_nested_metrics("āaa", 20, &pairs, &osc, &brute) == RX_ERR_UNBALANCED);
  char* h = nullptr;
  REQUIRE(rx_harmonic(2, 20, &h) == RX_OK);
  CHECK(take(h) == "āāaāaaāāaāaa");
  CHECK(rx_harmonic(5, 3, &h) == RX_ERR_CAP_EXCEEDED);
}

TEST_CASE("classification") {
  rx_grammar* g = nullptr;
  REQUIRE(rx_grammar_parse("S -> S S | a\n", &g) == RX_OK);
  int lin = 1, sup = 1;
  REQUIRE(rx_grammar_is_linear(g, &lin) == RX_OK);
  REQUIRE(rx_grammar_is_superlinear(g, &sup) == RX_OK);
  CHECK(lin == 0);
  CHECK(sup == 0);
  char* exp = nullptr;
  REQUIRE(rx_grammar_expansive(g, &exp) == RX_OK);
  CHECK(take(exp) == "S");
  char* report = nullptr;
  REQUIRE(rx_classify(g, nullptr, 10, 1, &report) == RX_OK);
  CHECK(take(report).find("expansive: S") != std::string::npos);
  CHECK(rx_classify(g, "X; S", 10, 1, &report) == RX_ERR_MALFORMED_PARTITION);
  rx_grammar_free(g);
}

TEST_CASE("rho family, exhaustive and budget") {
  Anbn a;
  rx_rho_options o;
  rx_rho_options_init(&o);
  o.strategy = RX_RHO_FAMILY;
  o.p = 2;
  o.q = 3;
  rx_rho_result r{};
  REQUIRE(rx_measure_rho(a.c, &o, &r) == RX_OK);
  CHECK(r.has_witness == 1);
  CHECK(r.value == 12);
  CHECK(std::string(r.automaton_id) == "two_cycle(2,3)");
  rx_rho_result_clear(&r);

  o.strategy = RX_RHO_EXHAUSTIVE;
  o.n = 1;
  REQUIRE(rx_measure_rho(a.c, &o, &r) == RX_OK);
  CHECK(r.value == 2);
  CHECK(r.exhaustive == 1);
  rx_rho_result_clear(&r);

  o.n = 2;
  o.budget = 5;
  CHECK(rx_measure_rho(a.c, &o, &r) == RX_ERR_BUDGET_EXCEEDED);
  CHECK(r.exhaustive == 0);
  CHECK(r.tested <= 5);
  rx_rho_result_clear(&r);

  o.n = 4;
  o.budget = 1000;
  CHECK(rx_measure_rho(a.c, &o, &r) == RX_ERR_CAP_EXCEEDED);
}

TEST_CASE("bounds") {
  char* v = nullptr;
  REQUIRE(rx_bound_value("oscillation", 2, 1, 1, 1, 3, &v) == RX_OK);
  CHECK(take(v) == "324");
  REQUIRE(rx_bound_value("linear", 1, 1, 1, 1, 10, &v) == RX_OK);
  CHECK(take(v) == "100");
  CHECK(rx_bound_value("cubic", 1, 1, 1, 1, 10, &v) == RX_ERR_INVALID_ARGUMENT);
  double n[] = {2, 3, 4, 5}, val[] = {4, 9, 16, 25};
  double slope = 0;
  REQUIRE(rx_fit_growth(n, val, 4, &slope) == RX_OK);
  CHECK(slope == doctest::Approx(2.0));
  CHECK(rx_fit_growth(n, val, 3, &slope) == RX_ERR_DEGENERATE_INPUT);
}

TEST_CASE("datalog") {
  rx_program* p = nullptr;
  REQUIRE(rx_program_parse("Desc(x, y) :- Child(x, y).\nDesc(x, y) :- Child(x, z), Desc(z, y).\n", &p) == RX_OK);
  const char* q = nullptr;
  REQUIRE(rx_program_query(p, &q) == RX_OK);
  CHECK(std::string(q) == "Desc");
  rx_grammar* g = nullptr;
  REQUIRE(rx_program_to_grammar(p, &g) == RX_OK);
  char* text = nullptr;
  REQUIRE(rx_grammar_format(g, &text) == RX_OK);
  CHECK(take(text) == "Desc -> child | child Desc\n");
  rx_grammar_free(g);
  rx_graph* d = nullptr;
  REQUIRE(rx_graph_parse("1 child 2\n2 child 3\n", 0, &d) == RX_OK);
  char* facts = nullptr;
  REQUIRE(rx_datalog_eval(p, d, &facts) == RX_OK);
  CHECK(take(facts) == "1\t2\n1\t3\n2\t3\n");
  rx_graph_free(d);
  REQUIRE(rx_graph_parse("1 parent 2\n", 0, &d) == RX_OK);
  CHECK(rx_datalog_eval(p, d, &facts) == RX_ERR_UNKNOWN_EDB_LABEL);
  rx_graph_free(d);
  rx_program_free(p);
  CHECK(rx_program_parse("P(x, y) :- Q(y, x).\n", &p) == RX_ERR_NON_CHAIN_RULE);
}

TEST_CASE("selftest passes") {
  char* report = nullptr;
  int ok = 0;
  REQUIRE(rx_selftest(&report, &ok) == RX_OK);
  std::string text = take(report);
  CHECK_MESSAGE(ok == 1, text);
  CHECK(text.find("FAIL") == std::string::npos);
}

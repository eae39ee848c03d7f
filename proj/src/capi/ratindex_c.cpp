#include "ratindex/ratindex.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>
#include <tuple>

#include "ratindex/bounds.hpp"
#include "ratindex/classify.hpp"
#include "ratindex/cnf.hpp"
#include "ratindex/cyk.hpp"
#include "ratindex/datalog.hpp"
#include "ratindex/error.hpp"
#include "ratindex/grammar.hpp"
#include "ratindex/graph.hpp"
#include "ratindex/intersection.hpp"
#include "ratindex/nested_word.hpp"
#include "ratindex/parse_tree.hpp"
#include "ratindex/reachability.hpp"
#include "ratindex/rho.hpp"
#include "ratindex/selftest.hpp"

using namespace ratindex;

struct rx_grammar {
  Grammar g;
};
struct rx_cnf {
  CnfGrammar c;
};
struct rx_graph {
  Nfa nfa;  // for plain graphs: every node initial and accepting
};
struct rx_relation {
  ReachabilityRelation rel;
  LabeledGraph graph;
  std::vector<std::pair<NodeId, NodeId>> start_facts;
  std::vector<std::string> nonterminals;
};
struct rx_program {
  ChainProgram p;
};

namespace {

thread_local std::string last_error;

rx_status fail(rx_status s, std::string message) {
  last_error = std::move(message);
  return s;
}

/// Runs `body`, translating exceptions into a status.
template <class F>
rx_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return RX_OK;
  } catch (const Error& e) {
    return fail(static_cast<rx_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(RX_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RX_ERR_INTERNAL, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

std::string node_names(const LabeledGraph& g, const std::vector<NodeId>& path) {
  std::string s;
  for (NodeId q : path) s += (s.empty() ? "" : " ") + g.node_name(q);
  return s;
}

Nfa semantics(const rx_graph* g, int graph_semantics) {
  return graph_semantics ? graph_language_nfa(g->nfa.graph) : g->nfa;
}

}  // namespace

extern "C" {

const char* rx_version(void) { return "0.1.0"; }

const char* rx_status_name(rx_status status) {
  if (status == RX_OK) return "ok";
  return error_code_name(static_cast<ErrorCode>(status));
}

const char* rx_last_error(void) { return last_error.c_str(); }
void rx_string_free(char* s) { std::free(s); }
void rx_array_free(size_t* a) { std::free(a); }

rx_status rx_grammar_parse(const char* text, rx_grammar** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new rx_grammar{parse_grammar(text)};
  });
}

void rx_grammar_free(rx_grammar* g) { delete g; }

rx_status rx_grammar_format(const rx_grammar* g, char** out) {
  return guarded([&] {
    require(g && out, "null argument");
    *out = dup(format_grammar(g->g));
  });
}

rx_status rx_grammar_is_linear(const rx_grammar* g, int* out) {
  return guarded([&] {
    require(g && out, "null argument");
    *out = is_linear(g->g);
  });
}

rx_status rx_grammar_is_superlinear(const rx_grammar* g, int* out) {
  return guarded([&] {
    require(g && out, "null argument");
    *out = is_superlinear(g->g);
  });
}

rx_status rx_grammar_expansive(const rx_grammar* g, char** out) {
  return guarded([&] {
    require(g && out, "null argument");
    std::string s;
    for (NonterminalId a : expansive_nonterminals(g->g)) s += (s.empty() ? "" : " ") + g->g.nonterminal_name(a);
    *out = dup(s);
  });
}

rx_status rx_grammar_to_cnf(const rx_grammar* g, rx_cnf** out) {
  return guarded([&] {
    require(g && out, "null argument");
    *out = new rx_cnf{to_cnf(g->g)};
  });
}

void rx_cnf_free(rx_cnf* c) { delete c; }

rx_status rx_cnf_format(const rx_cnf* c, char** out) {
  return guarded([&] {
    require(c && out, "null argument");
    *out = dup(format_grammar(c->c.grammar()));
  });
}

rx_status rx_cnf_counts(const rx_cnf* c, size_t* nonterminals, size_t* terminals, int* epsilon_at_start) {
  return guarded([&] {
    require(c, "null argument");
    if (nonterminals) *nonterminals = c->c.nonterminal_count();
    if (terminals) *terminals = c->c.terminal_count();
    if (epsilon_at_start) *epsilon_at_start = c->c.epsilon_at_start();
  });
}

rx_status rx_member(const rx_cnf* c, const char* word, int* accepted, char** tree) {
  return guarded([&] {
    require(c && word && accepted, "null argument");
    Word w = parse_word(c->c.grammar(), word);
    Membership m = cyk_membership(c->c, w, tree != nullptr);
    *accepted = m.accepted;
    if (tree) *tree = m.tree ? dup(format_tree(c->c.grammar(), *m.tree)) : nullptr;
  });
}

rx_status rx_graph_parse(const char* text, int automaton, rx_graph** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new rx_graph{automaton ? parse_nfa(text) : graph_language_nfa(parse_graph(text))};
  });
}

rx_status rx_two_cycle(unsigned p, unsigned q, rx_graph** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = new rx_graph{two_cycle_family(p, q)};
  });
}

void rx_graph_free(rx_graph* g) { delete g; }

rx_status rx_graph_format(const rx_graph* g, char** out) {
  return guarded([&] {
    require(g && out, "null argument");
    *out = dup(format_nfa(g->nfa));
  });
}

rx_status rx_graph_node_count(const rx_graph* g, size_t* out) {
  return guarded([&] {
    require(g && out, "null argument");
    *out = g->nfa.graph.node_count();
  });
}

rx_status rx_graph_node_name(const rx_graph* g, size_t node, const char** out) {
  return guarded([&] {
    require(g && out, "null argument");
    require(node < g->nfa.graph.node_count(), "node index out of range");
    *out = g->nfa.graph.node_name(static_cast<NodeId>(node)).c_str();
  });
}

rx_status rx_graph_find_node(const rx_graph* g, const char* name, size_t* out) {
  return guarded([&] {
    require(g && name && out, "null argument");
    auto q = g->nfa.graph.find_node(name);
    if (!q) throw Error(ErrorCode::InvalidArgument, std::string("unknown node '") + name + "'");
    *out = *q;
  });
}

rx_status rx_intersect(const rx_cnf* c, const rx_graph* g, int graph_semantics, char** out) {
  return guarded([&] {
    require(c && g && out, "null argument");
    TripleGrammar tg = bar_hillel(c->c, semantics(g, graph_semantics));
    ShortestTable table = shortest_words(tg);
    std::vector<TripleId> order(tg.triples().size());
    for (TripleId t = 0; t < order.size(); ++t) order[t] = t;
    std::sort(order.begin(), order.end(), [&](TripleId x, TripleId y) {
      const Triple &a = tg.triples()[x], &b = tg.triples()[y];
      return std::tie(a.nonterminal, a.from, a.to) < std::tie(b.nonterminal, b.from, b.to);
    });
    const Grammar& base = c->c.grammar();
    const LabeledGraph& d = tg.automaton().graph;
    std::ostringstream os;
    for (TripleId t : order) {
      const Triple& tr = tg.triples()[t];
      Witness w = extract_witness(tg, table, t);
      os << base.nonterminal_name(tr.nonterminal) << '\t' << d.node_name(tr.from) << '\t' << d.node_name(tr.to)
         << '\t' << table[t].length << '\t' << format_word(base, w.word) << '\n';
    }
    *out = dup(os.str());
  });
}

rx_status rx_shortest(const rx_cnf* c, const rx_graph* g, int graph_semantics, rx_shortest_result* out) {
  return guarded([&] {
    require(c && g && out, "null argument");
    *out = rx_shortest_result{};
    TripleGrammar tg = bar_hillel(c->c, semantics(g, graph_semantics));
    auto best = shortest_in_intersection(tg, shortest_words(tg));
    if (!best) return;
    const Grammar& base = c->c.grammar();
    HeightReport h = height_bound_check(c->c, tg.node_count(), best->witness.tree);
    out->nonempty = 1;
    out->length = best->length;
    out->height = h.height;
    out->height_bound = h.bound;
    out->height_violated = h.violated;
    out->word = dup(format_word(base, best->witness.word));
    out->tree = dup(format_tree(base, best->witness.tree));
    out->path = dup(node_names(tg.automaton().graph, best->witness.path));
  });
}

void rx_shortest_result_clear(rx_shortest_result* r) {
  if (!r) return;
  std::free(r->word);
  std::free(r->tree);
  std::free(r->path);
  *r = rx_shortest_result{};
}

rx_status rx_reach(const rx_cnf* c, const rx_graph* g, rx_relation** out) {
  return guarded([&] {
    require(c && g && out, "null argument");
    auto* r = new rx_relation{all_pairs_reach(c->c, g->nfa.graph), g->nfa.graph, {}, {}};
    r->start_facts = r->rel.start_facts();
    auto names = c->c.grammar().nonterminals();
    r->nonterminals.assign(names.begin(), names.end());
    *out = r;
  });
}

void rx_relation_free(rx_relation* r) { delete r; }

size_t rx_relation_size(const rx_relation* r) { return r ? r->start_facts.size() : 0; }

rx_status rx_relation_fact(const rx_relation* r, size_t index, size_t* source, size_t* target) {
  return guarded([&] {
    require(r && source && target, "null argument");
    require(index < r->start_facts.size(), "fact index out of range");
    *source = r->start_facts[index].first;
    *target = r->start_facts[index].second;
  });
}

rx_status rx_relation_format_all(const rx_relation* r, char** out) {
  return guarded([&] {
    require(r && out, "null argument");
    std::ostringstream os;
    for (const Fact& f : r->rel.facts())
      os << r->graph.node_name(f.source) << '\t' << r->graph.node_name(f.target) << '\t'
         << r->nonterminals[f.nonterminal] << '\n';
    *out = dup(os.str());
  });
}

rx_status rx_witness_path(const rx_relation* r, size_t source, size_t target, size_t** nodes, size_t* length) {
  return guarded([&] {
    require(r && nodes && length, "null argument");
    require(source < r->graph.node_count() && target < r->graph.node_count(), "node index out of range");
    auto path = witness_path(r->rel, static_cast<NodeId>(source), static_cast<NodeId>(target));
    auto* buf = static_cast<size_t*>(std::malloc(sizeof(size_t) * path.size()));
    if (!buf) throw std::bad_alloc();
    for (std::size_t i = 0; i < path.size(); ++i) buf[i] = path[i];
    *nodes = buf;
    *length = path.size();
  });
}

rx_status rx_tree_metrics_of_word(const rx_cnf* c, const char* word, size_t brute_cap, rx_tree_metrics* out) {
  return guarded([&] {
    require(c && word && out, "null argument");
    *out = rx_tree_metrics{};
    Word w = parse_word(c->c.grammar(), word);
    Membership m = cyk_membership(c->c, w, true);
    if (!m.accepted) throw Error(ErrorCode::InvalidArgument, std::string("word '") + word + "' is not in the language");
    const ParseTree& t = *m.tree;
    WellNestedWord alpha = alpha_of_tree(t);
    out->nodes = node_count(t);
    out->leaves = leaf_count(t);
    out->height = height(t);
    out->dimension = dimension(t);
    out->oscillation = oscillation(alpha);
    out->oscillation_bruteforce = -1;
    if (alpha.size() <= brute_cap) out->oscillation_bruteforce = static_cast<int>(oscillation_bruteforce(alpha, brute_cap));
    out->alpha = dup(alpha.to_string());
    out->tree = dup(format_tree(c->c.grammar(), t));
  });
}

void rx_tree_metrics_clear(rx_tree_metrics* m) {
  if (!m) return;
  std::free(m->alpha);
  std::free(m->tree);
  *m = rx_tree_metrics{};
}

rx_status rx_nested_metrics(const char* word, size_t brute_cap, char** pairs, unsigned* osc, int* osc_brute) {
  return guarded([&] {
    require(word, "null argument");
    WellNestedWord w = WellNestedWord::parse(word);
    if (pairs) {
      std::ostringstream os;
      for (auto [i, j] : matching_pairs(w).pairs) os << '(' << i << ',' << j << ')';
      *pairs = dup(os.str());
    }
    if (osc) *osc = oscillation(w);
    if (osc_brute) *osc_brute = w.size() <= brute_cap ? static_cast<int>(oscillation_bruteforce(w, brute_cap)) : -1;
  });
}

rx_status rx_harmonic(unsigned k, unsigned cap, char** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = dup(harmonic(k, cap).to_string());
  });
}

rx_status rx_classify(const rx_grammar* g, const char* partition, size_t samples, uint64_t seed, char** report) {
  return guarded([&] {
    require(g && report, "null argument");
    std::optional<std::vector<std::vector<std::string>>> blocks;
    if (partition) blocks = parse_partition(partition);
    *report = dup(format_report(classify(g->g, blocks, samples, seed)));
  });
}

void rx_rho_options_init(rx_rho_options* o) {
  if (!o) return;
  RhoOptions defaults;
  RandomStrategy random;
  *o = rx_rho_options{};
  o->strategy = RX_RHO_EXHAUSTIVE;
  o->n = 1;
  o->count = random.count;
  o->seed = random.seed;
  o->density = random.density;
  o->p = 1;
  o->q = 1;
  o->workers = defaults.workers;
  o->budget = defaults.budget;
  o->max_exhaustive_states = defaults.exhaustive_max_states;
}

namespace {

void fill_rho(const CnfGrammar& g, const RhoEstimate& e, rx_rho_result* out) {
  out->n = e.n;
  out->has_witness = e.witness_word.has_value();
  out->value = e.value;
  out->exhaustive = e.exhaustive;
  out->tested = e.tested_count;
  out->nonempty = e.nonempty_count;
  out->witness_word = dup(e.witness_word ? format_word(g.grammar(), *e.witness_word) : "");
  out->automaton_id = dup(e.automaton_id);
  out->automaton = dup(e.witness_automaton ? format_nfa(*e.witness_automaton) : "");
}

}  // namespace

rx_status rx_measure_rho(const rx_cnf* c, const rx_rho_options* o, rx_rho_result* out) {
  if (!c || !o || !out) return fail(RX_ERR_INVALID_ARGUMENT, "null argument");
  *out = rx_rho_result{};
  RhoOptions opts;
  opts.workers = o->workers;
  opts.budget = o->budget;
  opts.exhaustive_max_states = o->max_exhaustive_states;
  RhoStrategy strategy;
  switch (o->strategy) {
    case RX_RHO_EXHAUSTIVE: strategy = ExhaustiveStrategy{}; break;
    case RX_RHO_RANDOM: strategy = RandomStrategy{o->count, o->seed, o->density}; break;
    case RX_RHO_FAMILY: strategy = FamilyStrategy{o->p, o->q}; break;
    default: return fail(RX_ERR_INVALID_ARGUMENT, "unknown strategy");
  }
  std::optional<RhoEstimate> partial;
  rx_status s = guarded([&] {
    try {
      fill_rho(c->c, measure_rho(c->c, o->n, strategy, opts), out);
    } catch (const BudgetExceeded& e) {
      partial = e.partial();
      throw;
    }
  });
  if (s == RX_ERR_BUDGET_EXCEEDED && partial) {
    std::string message = last_error;
    guarded([&] { fill_rho(c->c, *partial, out); });
    last_error = message;
  }
  return s;
}

void rx_rho_result_clear(rx_rho_result* r) {
  if (!r) return;
  std::free(r->witness_word);
  std::free(r->automaton_id);
  std::free(r->automaton);
  *r = rx_rho_result{};
}

rx_status rx_bound_value(const char* kind, uint64_t nonterminals, unsigned k, unsigned d, uint64_t constant,
                         uint64_t n, char** out) {
  return guarded([&] {
    require(kind && out, "null argument");
    BoundFormula f{parse_bound_class(kind), nonterminals, k, d, constant};
    *out = dup(bound_value(f, n).str());
  });
}

rx_status rx_fit_growth(const double* n, const double* values, size_t count, double* slope) {
  return guarded([&] {
    require((n && values) || count == 0, "null argument");
    require(slope, "null argument");
    std::vector<std::pair<double, double>> pts;
    for (size_t i = 0; i < count; ++i) pts.emplace_back(n[i], values[i]);
    *slope = fit_growth(pts);
  });
}

rx_status rx_program_parse(const char* text, rx_program** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new rx_program{parse_chain_program(text)};
  });
}

void rx_program_free(rx_program* p) { delete p; }

rx_status rx_program_query(const rx_program* p, const char** out) {
  return guarded([&] {
    require(p && out, "null argument");
    *out = p->p.query.c_str();
  });
}

rx_status rx_program_to_grammar(const rx_program* p, rx_grammar** out) {
  return guarded([&] {
    require(p && out, "null argument");
    *out = new rx_grammar{chain_to_cfg(p->p)};
  });
}

rx_status rx_datalog_eval(const rx_program* p, const rx_graph* g, char** out) {
  return guarded([&] {
    require(p && g && out, "null argument");
    const LabeledGraph& d = g->nfa.graph;
    std::ostringstream os;
    for (auto [i, j] : evaluate(p->p, d)) os << d.node_name(i) << '\t' << d.node_name(j) << '\n';
    *out = dup(os.str());
  });
}

rx_status rx_selftest(char** report, int* all_passed) {
  return guarded([&] {
    require(report, "null argument");
    bool ok = true;
    std::ostringstream os;
    for (const SelftestCheck& c : run_selftest()) {
      ok = ok && c.passed;
      os << (c.passed ? "PASS" : "FAIL") << '\t' << c.name << '\t' << c.detail << '\n';
    }
    *report = dup(os.str());
    if (all_passed) *all_passed = ok;
  });
}

}  // extern "C"

#include "generators.hpp"

#include "ratindex/error.hpp"

namespace gen {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
bool coin(std::mt19937_64& rng, double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }

std::string terminal_name(std::size_t i) { return std::string(1, static_cast<char>('a' + i)); }

std::vector<TerminalId> add_terminals(Grammar& g, std::size_t count) {
  std::vector<TerminalId> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(g.add_terminal(terminal_name(i)));
  return out;
}

}  // namespace

std::string nonterminal_name(std::size_t i) {
  static const char* names[] = {"S", "A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "K"};
  return i < 12 ? names[i] : "N" + std::to_string(i);
}

Grammar random_grammar(std::mt19937_64& rng, const GrammarShape& shape) {
  Grammar g;
  for (std::size_t i = 0; i < shape.nonterminals; ++i) g.add_nonterminal(nonterminal_name(i));
  g.set_start(0);
  auto ts = add_terminals(g, shape.terminals);
  for (NonterminalId a = 0; a < shape.nonterminals; ++a) {
    std::size_t alts = 1 + pick(rng, shape.max_alternatives);
    for (std::size_t k = 0; k < alts; ++k) {
      std::vector<Symbol> body;
      if (!coin(rng, shape.epsilon_probability)) {
        std::size_t len = 1 + pick(rng, shape.max_body);
        for (std::size_t i = 0; i < len; ++i)
          body.push_back(coin(rng, 0.5) ? Symbol::terminal(ts[pick(rng, ts.size())])
                                        : Symbol::nonterminal(static_cast<NonterminalId>(pick(rng, shape.nonterminals))));
      }
      g.add_production(a, std::move(body));
    }
  }
  return g;
}

CnfGrammar random_cnf(std::mt19937_64& rng, const GrammarShape& shape) {
  while (true) {
    try {
      return to_cnf(random_grammar(rng, shape));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptyLanguage && e.code() != ErrorCode::CapExceeded) throw;
    }
  }
}

Grammar random_cnf_shaped(std::mt19937_64& rng, std::size_t nonterminals, std::size_t terminals) {
  Grammar g;
  for (std::size_t i = 0; i < nonterminals; ++i) g.add_nonterminal(nonterminal_name(i));
  g.set_start(0);
  auto ts = add_terminals(g, terminals);
  auto nt = [&] { return Symbol::nonterminal(static_cast<NonterminalId>(pick(rng, nonterminals))); };
  for (NonterminalId a = 0; a < nonterminals; ++a) {
    bool last = a + 1 == nonterminals;
    if (last || coin(rng, 0.5)) g.add_production(a, {Symbol::terminal(ts[pick(rng, ts.size())])});
    if (!last) {
      // a rule into higher-numbered nonterminals keeps everything generating
      auto higher = [&] {
        return Symbol::nonterminal(static_cast<NonterminalId>(a + 1 + pick(rng, nonterminals - a - 1)));
      };
      g.add_production(a, {higher(), higher()});
    }
    std::size_t extra = pick(rng, 3);
    for (std::size_t k = 0; k < extra; ++k) g.add_production(a, {nt(), nt()});
  }
  return g;
}

Nfa random_nfa(std::mt19937_64& rng, std::size_t states, const std::vector<std::string>& labels, double density) {
  Nfa a;
  for (std::size_t q = 0; q < states; ++q) a.graph.add_node("q" + std::to_string(q));
  for (const auto& l : labels) a.graph.add_label(l);
  for (NodeId s = 0; s < states; ++s)
    for (LabelId l = 0; l < labels.size(); ++l)
      for (NodeId t = 0; t < states; ++t)
        if (coin(rng, density)) a.graph.add_edge(s, l, t);
  for (NodeId q = 0; q < states; ++q) {
    if (coin(rng, 0.4)) a.initial.push_back(q);
    if (coin(rng, 0.4)) a.accepting.push_back(q);
  }
  if (a.initial.empty()) a.initial.push_back(static_cast<NodeId>(pick(rng, states)));
  if (a.accepting.empty()) a.accepting.push_back(static_cast<NodeId>(pick(rng, states)));
  return a;
}

LabeledGraph random_graph(std::mt19937_64& rng, std::size_t nodes, const std::vector<std::string>& labels,
                          double density) {
  LabeledGraph g;
  for (std::size_t q = 0; q < nodes; ++q) g.add_node(std::to_string(q));
  for (const auto& l : labels) g.add_label(l);
  for (NodeId s = 0; s < nodes; ++s)
    for (LabelId l = 0; l < labels.size(); ++l)
      for (NodeId t = 0; t < nodes; ++t)
        if (coin(rng, density)) g.add_edge(s, l, t);
  return g;
}

LabeledGraph random_dag(std::mt19937_64& rng, std::size_t nodes, const std::string& label, double density) {
  LabeledGraph g;
  for (std::size_t q = 0; q < nodes; ++q) g.add_node(std::to_string(q));
  LabelId l = g.add_label(label);
  for (NodeId s = 0; s < nodes; ++s)
    for (NodeId t = s + 1; t < nodes; ++t)
      if (coin(rng, density)) g.add_edge(s, l, t);
  return g;
}

Grammar random_superlinear(std::mt19937_64& rng, std::size_t core, std::size_t outer) {
  Grammar g;
  std::vector<NonterminalId> outs, cores;
  outs.push_back(g.add_nonterminal("S"));
  g.set_start(outs[0]);
  for (std::size_t i = 1; i < outer; ++i) outs.push_back(g.add_nonterminal("O" + std::to_string(i)));
  for (std::size_t i = 0; i < core; ++i) cores.push_back(g.add_nonterminal("L" + std::to_string(i)));
  auto ts = add_terminals(g, 2);
  auto t = [&] { return Symbol::terminal(ts[pick(rng, ts.size())]); };
  auto c = [&] { return Symbol::nonterminal(cores[pick(rng, cores.size())]); };
  auto any = [&] {
    return coin(rng, 0.5) ? c() : Symbol::nonterminal(outs[pick(rng, outs.size())]);
  };
  for (NonterminalId a : cores) {
    g.add_production(a, {t()});
    std::size_t extra = 1 + pick(rng, 2);
    for (std::size_t k = 0; k < extra; ++k) {
      if (coin(rng, 0.5)) g.add_production(a, {t(), c()});
      else g.add_production(a, {c(), t()});
    }
  }
  for (NonterminalId a : outs) {
    std::vector<Symbol> alpha{t()};
    if (coin(rng, 0.5)) alpha.push_back(t());
    g.add_production(a, alpha);
    std::size_t extra = 1 + pick(rng, 3);
    for (std::size_t k = 0; k < extra; ++k) {
      switch (pick(rng, 3)) {
        case 0: g.add_production(a, {c(), any()}); break;
        case 1: g.add_production(a, {t(), c()}); break;
        default: g.add_production(a, {c(), t()}); break;
      }
    }
  }
  return g;
}

Stratified random_reduced_form(std::mt19937_64& rng, std::size_t levels, std::size_t per_level) {
  Stratified out;
  Grammar& g = out.grammar;
  NonterminalId s = g.add_nonterminal("S");
  g.set_start(s);
  std::vector<std::vector<NonterminalId>> block(levels);
  out.partition.resize(levels);
  for (std::size_t i = 0; i + 1 < levels; ++i)
    for (std::size_t j = 0; j < per_level; ++j) {
      std::string name = "P" + std::to_string(i) + "x" + std::to_string(j);
      block[i].push_back(g.add_nonterminal(name));
      out.partition[i].push_back(name);
    }
  block[levels - 1] = {s};
  out.partition[levels - 1] = {"S"};
  auto ts = add_terminals(g, 2);
  auto t = [&] { return Symbol::terminal(ts[pick(rng, ts.size())]); };
  auto from = [&](std::size_t level) { return Symbol::nonterminal(block[level][pick(rng, block[level].size())]); };
  for (std::size_t i = 0; i < levels; ++i) {
    for (NonterminalId a : block[i]) {
      g.add_production(a, {t()});
      if (i > 0) {
        // one pair from the level right below, so the tree can actually grow
        g.add_production(a, {from(i - 1), from(pick(rng, i))});
        if (coin(rng, 0.5)) g.add_production(a, {from(pick(rng, i)), from(i - 1)});
      }
      if (a == s) continue;
      std::size_t extra = pick(rng, 3);
      for (std::size_t k = 0; k < extra; ++k) {
        if (coin(rng, 0.5)) g.add_production(a, {t(), from(i)});
        else g.add_production(a, {from(i), t()});
      }
    }
  }
  return out;
}

std::vector<std::string> label_names(const Grammar& g) {
  return {g.terminals().begin(), g.terminals().end()};
}

}  // namespace gen

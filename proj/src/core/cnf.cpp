#include "ratindex/cnf.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <string>
#include <unordered_set>

#include "ratindex/error.hpp"

namespace ratindex {

std::vector<bool> generating_nonterminals(const Grammar& g) {
  std::vector<bool> gen(g.nonterminal_count(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Production& p : g.productions()) {
      if (gen[p.lhs]) continue;
      bool ok = std::all_of(p.rhs.begin(), p.rhs.end(),
                            [&](const Symbol& s) { return s.is_terminal() || gen[s.id]; });
      if (ok) {
        gen[p.lhs] = true;
        changed = true;
      }
    }
  }
  return gen;
}

std::vector<bool> useful_nonterminals(const Grammar& g) {
  auto gen = generating_nonterminals(g);
  std::vector<bool> reach(g.nonterminal_count(), false);
  if (g.nonterminal_count() == 0 || !gen[g.start()]) return reach;
  std::vector<NonterminalId> stack{g.start()};
  reach[g.start()] = true;
  while (!stack.empty()) {
    NonterminalId a = stack.back();
    stack.pop_back();
    for (const Production& p : g.productions()) {
      if (p.lhs != a) continue;
      bool ok = std::all_of(p.rhs.begin(), p.rhs.end(),
                            [&](const Symbol& s) { return s.is_terminal() || gen[s.id]; });
      if (!ok) continue;
      for (const Symbol& s : p.rhs) {
        if (s.is_nonterminal() && !reach[s.id]) {
          reach[s.id] = true;
          stack.push_back(s.id);
        }
      }
    }
  }
  return reach;
}

Grammar trim_grammar(const Grammar& g) {
  auto useful = useful_nonterminals(g);
  Grammar out;
  for (const std::string& t : g.terminals()) out.add_terminal(t);
  std::vector<NonterminalId> remap(g.nonterminal_count(), 0);
  for (NonterminalId a = 0; a < g.nonterminal_count(); ++a)
    if (useful[a]) remap[a] = out.add_nonterminal(g.nonterminal_name(a));
  if (out.nonterminal_count() == 0) return out;
  out.set_start(remap[g.start()]);
  for (const Production& p : g.productions()) {
    if (!useful[p.lhs]) continue;
    bool ok = std::all_of(p.rhs.begin(), p.rhs.end(),
                          [&](const Symbol& s) { return s.is_terminal() || useful[s.id]; });
    if (!ok) continue;
    std::vector<Symbol> rhs;
    for (const Symbol& s : p.rhs)
      rhs.push_back(s.is_terminal() ? s : Symbol::nonterminal(remap[s.id]));
    out.add_production(remap[p.lhs], std::move(rhs));
  }
  return out;
}

namespace {

struct Rule {
  NonterminalId lhs;
  std::vector<Symbol> rhs;
  bool operator==(const Rule&) const = default;
  auto operator<=>(const Rule&) const = default;
};

/// Mutable working copy used by the conversion passes.
struct Workspace {
  std::vector<std::string> terminals;
  std::vector<std::string> nonterminals;
  std::unordered_set<std::string> names;
  std::vector<Rule> rules;
  NonterminalId start = 0;

  explicit Workspace(const Grammar& g) {
    for (const std::string& t : g.terminals()) {
      terminals.push_back(t);
      names.insert(t);
    }
    for (const std::string& n : g.nonterminals()) {
      nonterminals.push_back(n);
      names.insert(n);
    }
    for (const Production& p : g.productions()) rules.push_back(Rule{p.lhs, p.rhs});
    start = g.start();
  }

  NonterminalId fresh(const std::string& base) {
    std::string name = base;
    for (int k = 1; names.count(name); ++k) name = base + "_" + std::to_string(k);
    names.insert(name);
    nonterminals.push_back(name);
    return static_cast<NonterminalId>(nonterminals.size() - 1);
  }

  void dedupe() {
    std::set<Rule> seen;
    std::vector<Rule> out;
    for (Rule& r : rules)
      if (seen.insert(r).second) out.push_back(std::move(r));
    rules = std::move(out);
  }

  Grammar build() const {
    Grammar g;
    for (const std::string& t : terminals) g.add_terminal(t);
    for (const std::string& n : nonterminals) g.add_nonterminal(n);
    g.set_start(start);
    for (const Rule& r : rules) g.add_production(r.lhs, r.rhs);
    return g;
  }
};

std::vector<bool> nullable_set(const Workspace& w) {
  std::vector<bool> nullable(w.nonterminals.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : w.rules) {
      if (nullable[r.lhs]) continue;
      bool all = std::all_of(r.rhs.begin(), r.rhs.end(),
                             [&](const Symbol& s) { return s.is_nonterminal() && nullable[s.id]; });
      if (all) {
        nullable[r.lhs] = true;
        changed = true;
      }
    }
  }
  return nullable;
}

bool start_on_rhs(const Workspace& w) {
  for (const Rule& r : w.rules)
    for (const Symbol& s : r.rhs)
      if (s.is_nonterminal() && s.id == w.start) return true;
  return false;
}

void eliminate_epsilon(Workspace& w) {
  auto nullable = nullable_set(w);
  std::vector<Rule> out;
  for (const Rule& r : w.rules) {
    std::vector<std::size_t> optional_positions;
    for (std::size_t i = 0; i < r.rhs.size(); ++i)
      if (r.rhs[i].is_nonterminal() && nullable[r.rhs[i].id]) optional_positions.push_back(i);
    if (optional_positions.size() > 24)
      throw Error(ErrorCode::CapExceeded, "production with more than 24 nullable symbols");
    std::size_t variants = std::size_t{1} << optional_positions.size();
    for (std::size_t mask = 0; mask < variants; ++mask) {
      Rule v{r.lhs, {}};
      std::size_t next = 0;
      for (std::size_t i = 0; i < r.rhs.size(); ++i) {
        bool optional = next < optional_positions.size() && optional_positions[next] == i;
        if (optional) {
          bool drop = (mask >> next) & 1U;
          ++next;
          if (drop) continue;
        }
        v.rhs.push_back(r.rhs[i]);
      }
      if (v.rhs.empty() && v.lhs != w.start) continue;
      out.push_back(std::move(v));
    }
  }
  w.rules = std::move(out);
  w.dedupe();
}

void eliminate_units(Workspace& w) {
  std::size_t n = w.nonterminals.size();
  // closure[a][b]: a =>* b through unit rules only.
  std::vector<std::vector<bool>> closure(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) closure[a][a] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : w.rules) {
      if (r.rhs.size() != 1 || !r.rhs[0].is_nonterminal()) continue;
      NonterminalId b = r.rhs[0].id;
      for (std::size_t a = 0; a < n; ++a) {
        if (!closure[a][r.lhs]) continue;
        for (std::size_t c = 0; c < n; ++c) {
          if (closure[b][c] && !closure[a][c]) {
            closure[a][c] = true;
            changed = true;
          }
        }
      }
    }
  }
  std::vector<Rule> out;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!closure[a][b]) continue;
      for (const Rule& r : w.rules) {
        if (r.lhs != b) continue;
        if (r.rhs.size() == 1 && r.rhs[0].is_nonterminal()) continue;
        if (r.rhs.empty() && a != w.start) continue;
        out.push_back(Rule{static_cast<NonterminalId>(a), r.rhs});
      }
    }
  }
  // Keep the original relative order of left-hand sides as far as possible.
  std::stable_sort(out.begin(), out.end(),
                   [](const Rule& x, const Rule& y) { return x.lhs < y.lhs; });
  w.rules = std::move(out);
  w.dedupe();
}

std::string terminal_stem(const std::string& t, TerminalId id) {
  bool alnum = !t.empty() && std::all_of(t.begin(), t.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
  return "T_" + (alnum ? t : std::to_string(id));
}

void lift_terminals(Workspace& w) {
  std::vector<std::optional<NonterminalId>> lifted(w.terminals.size());
  std::vector<Rule> extra;
  for (Rule& r : w.rules) {
    if (r.rhs.size() < 2) continue;
    for (Symbol& s : r.rhs) {
      if (!s.is_terminal()) continue;
      if (!lifted[s.id]) {
        lifted[s.id] = w.fresh(terminal_stem(w.terminals[s.id], s.id));
        extra.push_back(Rule{*lifted[s.id], {s}});
      }
      s = Symbol::nonterminal(*lifted[s.id]);
    }
  }
  for (Rule& r : extra) w.rules.push_back(std::move(r));
}

void binarize(Workspace& w) {
  std::vector<Rule> out;
  for (Rule& r : w.rules) {
    if (r.rhs.size() <= 2) {
      out.push_back(std::move(r));
      continue;
    }
    NonterminalId lhs = r.lhs;
    std::string base = w.nonterminals[r.lhs];
    for (std::size_t i = 0; i + 2 < r.rhs.size(); ++i) {
      NonterminalId next = w.fresh(base + "_" + std::to_string(i + 1));
      out.push_back(Rule{lhs, {r.rhs[i], Symbol::nonterminal(next)}});
      lhs = next;
    }
    out.push_back(Rule{lhs, {r.rhs[r.rhs.size() - 2], r.rhs.back()}});
  }
  w.rules = std::move(out);
}

}  // namespace

CnfGrammar to_cnf(const Grammar& input) {
  if (input.nonterminal_count() == 0 || !generating_nonterminals(input)[input.start()])
    throw Error(ErrorCode::EmptyLanguage, "no terminal word is derivable from the start symbol");

  Workspace w(trim_grammar(input));
  if (start_on_rhs(w)) {
    NonterminalId old_start = w.start;
    NonterminalId s0 = w.fresh(w.nonterminals[old_start] + "0");
    w.rules.insert(w.rules.begin(), Rule{s0, {Symbol::nonterminal(old_start)}});
    w.start = s0;
  }
  eliminate_epsilon(w);
  eliminate_units(w);
  w = Workspace(trim_grammar(w.build()));
  lift_terminals(w);
  binarize(w);
  w.dedupe();
  return CnfGrammar::from_grammar(w.build());
}

CnfGrammar CnfGrammar::from_grammar(Grammar g) {
  CnfGrammar c;
  const auto& prods = g.productions();
  for (ProductionId id = 0; id < prods.size(); ++id) {
    const Production& p = prods[id];
    if (p.rhs.empty()) {
      if (p.lhs != g.start())
        throw Error(ErrorCode::InvalidArgument, "epsilon production on non-start nonterminal");
      c.epsilon_at_start_ = true;
    } else if (p.rhs.size() == 1 && p.rhs[0].is_terminal()) {
      c.terminal_.push_back(TerminalRule{p.lhs, p.rhs[0].id, id});
    } else if (p.rhs.size() == 2 && p.rhs[0].is_nonterminal() && p.rhs[1].is_nonterminal()) {
      c.binary_.push_back(BinaryRule{p.lhs, p.rhs[0].id, p.rhs[1].id, id});
    } else {
      throw Error(ErrorCode::InvalidArgument,
                  "production of " + g.nonterminal_name(p.lhs) + " is not in Chomsky normal form");
    }
  }
  if (c.epsilon_at_start_) {
    for (const BinaryRule& r : c.binary_)
      if (r.left == g.start() || r.right == g.start())
        throw Error(ErrorCode::InvalidArgument, "start symbol with epsilon occurs on a right-hand side");
  }
  auto useful = useful_nonterminals(g);
  for (NonterminalId a = 0; a < g.nonterminal_count(); ++a)
    if (!useful[a])
      throw Error(ErrorCode::InvalidArgument, "nonterminal " + g.nonterminal_name(a) + " is useless");

  std::size_t n = g.nonterminal_count();
  auto group = [n](const std::vector<BinaryRule>& rules, auto key,
                   std::vector<BinaryRule>& sorted, std::vector<std::size_t>& offset) {
    offset.assign(n + 1, 0);
    for (const BinaryRule& r : rules) ++offset[key(r) + 1];
    for (std::size_t i = 0; i < n; ++i) offset[i + 1] += offset[i];
    sorted.resize(rules.size());
    std::vector<std::size_t> cursor(offset.begin(), offset.end() - 1);
    for (const BinaryRule& r : rules) sorted[cursor[key(r)]++] = r;
  };
  group(c.binary_, [](const BinaryRule& r) { return r.left; }, c.by_left_, c.by_left_offset_);
  group(c.binary_, [](const BinaryRule& r) { return r.right; }, c.by_right_, c.by_right_offset_);
  c.grammar_ = std::move(g);
  return c;
}

std::span<const BinaryRule> CnfGrammar::rules_with_left(NonterminalId b) const {
  return std::span<const BinaryRule>(by_left_).subspan(by_left_offset_[b],
                                                       by_left_offset_[b + 1] - by_left_offset_[b]);
}

std::span<const BinaryRule> CnfGrammar::rules_with_right(NonterminalId c) const {
  return std::span<const BinaryRule>(by_right_).subspan(by_right_offset_[c],
                                                        by_right_offset_[c + 1] - by_right_offset_[c]);
}

}  // namespace ratindex

#include "ratindex/intersection.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <queue>

#include "ratindex/error.hpp"

namespace ratindex {

namespace {

std::uint64_t pack(std::uint64_t a, std::uint64_t i, std::uint64_t j, std::uint64_t n) {
  return (a * n + i) * n + j;
}

}  // namespace

std::optional<TripleId> TripleGrammar::find(const Triple& t) const {
  std::uint64_t n = node_count();
  if (t.nonterminal >= base_->nonterminal_count() || t.from >= n || t.to >= n) return std::nullopt;
  auto it = index_.find(pack(t.nonterminal, t.from, t.to, n));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const std::uint32_t> TripleGrammar::uses(TripleId t) const {
  return std::span<const std::uint32_t>(uses_).subspan(uses_offset_[t], uses_offset_[t + 1] - uses_offset_[t]);
}

TripleGrammar bar_hillel(const CnfGrammar& g, const Nfa& a) {
  TripleGrammar tg;
  tg.base_ = &g;
  tg.automaton_ = a;
  const LabeledGraph& d = tg.automaton_.graph;
  const std::uint64_t n = d.node_count();

  tg.label_terminal_.resize(d.label_count());
  for (LabelId l = 0; l < d.label_count(); ++l)
    tg.label_terminal_[l] = g.grammar().find_terminal(d.label_name(l));

  std::deque<TripleId> queue;
  auto intern = [&](const Triple& t) -> TripleId {
    auto [it, inserted] = tg.index_.try_emplace(pack(t.nonterminal, t.from, t.to, n),
                                                static_cast<TripleId>(tg.triples_.size()));
    if (inserted) {
      tg.triples_.push_back(t);
      queue.push_back(it->second);
    }
    return it->second;
  };

  // Form 2: (A, i, j) -> a for every edge i -a-> j and rule A -> a.
  std::vector<std::vector<const TerminalRule*>> by_terminal(g.terminal_count());
  for (const TerminalRule& r : g.terminal_rules()) by_terminal[r.terminal].push_back(&r);
  for (const Edge& e : d.edges()) {
    auto t = tg.label_terminal_[e.label];
    if (!t) continue;
    for (const TerminalRule* r : by_terminal[*t]) {
      TripleId lhs = intern(Triple{r->lhs, e.source, e.target});
      tg.productions_.push_back(TripleProduction{lhs, false, 0, 0, *t, r->production});
    }
  }

  // Form 1, bottom-up over processed triples:
  // (X, i, k) -> (B, i, j) (C, j, k) for X -> B C.
  std::unordered_map<std::uint64_t, std::vector<TripleId>> out_index;  // (C, j) -> triples (C, j, *)
  std::unordered_map<std::uint64_t, std::vector<TripleId>> in_index;   // (B, i) -> triples (B, *, i)
  auto key2 = [n](std::uint64_t a, std::uint64_t node) { return a * n + node; };

  while (!queue.empty()) {
    TripleId id = queue.front();
    queue.pop_front();
    Triple t = tg.triples_[id];
    out_index[key2(t.nonterminal, t.from)].push_back(id);
    in_index[key2(t.nonterminal, t.to)].push_back(id);

    for (const BinaryRule& r : g.rules_with_left(t.nonterminal)) {
      auto it = out_index.find(key2(r.right, t.to));
      if (it == out_index.end()) continue;
      for (std::size_t k = 0; k < it->second.size(); ++k) {
        TripleId partner = it->second[k];
        Triple p = tg.triples_[partner];
        TripleId lhs = intern(Triple{r.lhs, t.from, p.to});
        tg.productions_.push_back(TripleProduction{lhs, true, id, partner, 0, r.production});
      }
    }
    for (const BinaryRule& r : g.rules_with_right(t.nonterminal)) {
      auto it = in_index.find(key2(r.left, t.from));
      if (it == in_index.end()) continue;
      for (std::size_t k = 0; k < it->second.size(); ++k) {
        TripleId partner = it->second[k];
        if (partner == id) continue;  // already paired with itself above
        Triple p = tg.triples_[partner];
        TripleId lhs = intern(Triple{r.lhs, p.from, t.to});
        tg.productions_.push_back(TripleProduction{lhs, true, partner, id, 0, r.production});
      }
    }
  }

  for (NodeId q0 : tg.automaton_.initial)
    for (NodeId f : tg.automaton_.accepting)
      if (auto id = tg.find(Triple{g.start(), q0, f})) tg.start_.push_back(*id);

  if (g.epsilon_at_start()) {
    for (NodeId q0 : tg.automaton_.initial) {
      if (std::find(tg.automaton_.accepting.begin(), tg.automaton_.accepting.end(), q0) !=
          tg.automaton_.accepting.end()) {
        tg.empty_node_ = q0;
        break;
      }
    }
  }

  tg.uses_offset_.assign(tg.triples_.size() + 1, 0);
  for (const TripleProduction& p : tg.productions_) {
    if (!p.binary) continue;
    ++tg.uses_offset_[p.left + 1];
    if (p.right != p.left) ++tg.uses_offset_[p.right + 1];
  }
  std::partial_sum(tg.uses_offset_.begin(), tg.uses_offset_.end(), tg.uses_offset_.begin());
  tg.uses_.resize(tg.uses_offset_.back());
  std::vector<std::size_t> cursor(tg.uses_offset_.begin(), tg.uses_offset_.end() - 1);
  for (std::uint32_t pid = 0; pid < tg.productions_.size(); ++pid) {
    const TripleProduction& p = tg.productions_[pid];
    if (!p.binary) continue;
    tg.uses_[cursor[p.left]++] = pid;
    if (p.right != p.left) tg.uses_[cursor[p.right]++] = pid;
  }
  return tg;
}

TripleGrammar bar_hillel(const CnfGrammar& g, const LabeledGraph& d) {
  return bar_hillel(g, graph_language_nfa(d));
}

std::optional<ShortestEntry> ShortestTable::lookup(const TripleGrammar& tg, const Triple& t) const {
  auto id = tg.find(t);
  if (!id || *id >= entries_.size()) return std::nullopt;
  return entries_[*id];
}

namespace {

/// Ordering of terminals by name, used for lexicographic tie-breaking.
std::vector<std::uint32_t> terminal_ranks(const Grammar& g) {
  std::vector<TerminalId> order(g.terminal_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](TerminalId x, TerminalId y) { return g.terminal_name(x) < g.terminal_name(y); });
  std::vector<std::uint32_t> rank(g.terminal_count());
  for (std::uint32_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  return rank;
}

/// Streams the yield of settled derivations without materializing it.
class YieldCursor {
 public:
  YieldCursor(const TripleGrammar& tg, const std::vector<ShortestEntry>& best) : tg_(tg), best_(best) {}

  void reset_to_production(std::uint32_t pid) {
    stack_.clear();
    pending_terminal_.reset();
    const TripleProduction& p = tg_.productions()[pid];
    if (p.binary) {
      stack_.push_back(p.right);
      stack_.push_back(p.left);
    } else {
      pending_terminal_ = p.terminal;
    }
  }

  void reset_to_triple(TripleId t) {
    stack_.assign(1, t);
    pending_terminal_.reset();
  }

  std::optional<TerminalId> next() {
    if (pending_terminal_) {
      auto t = pending_terminal_;
      pending_terminal_.reset();
      return t;
    }
    while (!stack_.empty()) {
      TripleId t = stack_.back();
      stack_.pop_back();
      const TripleProduction& p = tg_.productions()[best_[t].production];
      if (!p.binary) return p.terminal;
      stack_.push_back(p.right);
      stack_.push_back(p.left);
    }
    return std::nullopt;
  }

 private:
  const TripleGrammar& tg_;
  const std::vector<ShortestEntry>& best_;
  std::vector<TripleId> stack_;
  std::optional<TerminalId> pending_terminal_;
};

/// <0, 0, >0 like strcmp; both cursors yield words of equal length.
int compare_yields(YieldCursor& x, YieldCursor& y, const std::vector<std::uint32_t>& rank) {
  while (true) {
    auto a = x.next();
    auto b = y.next();
    if (!a || !b) return 0;
    if (rank[*a] != rank[*b]) return rank[*a] < rank[*b] ? -1 : 1;
  }
}

}  // namespace

ShortestTable shortest_words(const TripleGrammar& tg) {
  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  const auto triples = tg.triples();
  const auto prods = tg.productions();
  std::vector<ShortestEntry> best(triples.size(), ShortestEntry{std::numeric_limits<std::uint64_t>::max(), kNone});
  std::vector<bool> settled(triples.size(), false);
  auto rank = terminal_ranks(tg.base().grammar());
  YieldCursor cx(tg, best), cy(tg, best);

  using Item = std::pair<std::uint64_t, TripleId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;

  auto offer = [&](std::uint32_t pid, std::uint64_t length) {
    TripleId lhs = prods[pid].lhs;
    ShortestEntry& cur = best[lhs];
    if (cur.production == kNone || length < cur.length) {
      cur = ShortestEntry{length, pid};
      pq.push({length, lhs});
      return;
    }
    if (length > cur.length) return;
    cx.reset_to_production(pid);
    cy.reset_to_production(cur.production);
    int cmp = compare_yields(cx, cy, rank);
    if (cmp < 0 || (cmp == 0 && pid < cur.production)) cur.production = pid;
  };

  for (std::uint32_t pid = 0; pid < prods.size(); ++pid)
    if (!prods[pid].binary) offer(pid, 1);

  while (!pq.empty()) {
    auto [length, t] = pq.top();
    pq.pop();
    if (settled[t] || length != best[t].length) continue;
    settled[t] = true;
    for (std::uint32_t pid : tg.uses(t)) {
      const TripleProduction& p = prods[pid];
      if (!settled[p.left] || !settled[p.right] || settled[p.lhs]) continue;
      offer(pid, best[p.left].length + best[p.right].length);
    }
  }

  for (TripleId t = 0; t < triples.size(); ++t)
    if (!settled[t]) throw Error(ErrorCode::Internal, "product triple left unsettled");
  return ShortestTable(std::move(best));
}

Witness extract_witness(const TripleGrammar& tg, const ShortestTable& table, TripleId root) {
  if (root >= table.size()) throw Error(ErrorCode::Unrealizable, "triple is not realizable");
  const auto prods = tg.productions();
  const auto triples = tg.triples();

  Witness w;
  w.path.push_back(triples[root].from);
  auto build = [&](auto&& self, TripleId t) -> ParseTree {
    const TripleProduction& p = prods[table[t].production];
    ParseTree node{TreeLabel::nonterminal(triples[t].nonterminal), {}};
    if (!p.binary) {
      node.children.push_back(ParseTree{TreeLabel::terminal(p.terminal), {}});
      w.word.push_back(p.terminal);
      w.path.push_back(triples[t].to);
      return node;
    }
    node.children.push_back(self(self, p.left));
    node.children.push_back(self(self, p.right));
    return node;
  };
  w.tree = build(build, root);
  return w;
}

Witness extract_witness(const TripleGrammar& tg, const ShortestTable& table, const Triple& t) {
  auto id = tg.find(t);
  if (!id) {
    const Grammar& g = tg.base().grammar();
    const LabeledGraph& d = tg.automaton().graph;
    auto name = [&](NodeId q) { return q < d.node_count() ? d.node_name(q) : std::to_string(q); };
    std::string nt = t.nonterminal < g.nonterminal_count() ? g.nonterminal_name(t.nonterminal)
                                                           : std::to_string(t.nonterminal);
    throw Error(ErrorCode::Unrealizable,
                "triple (" + nt + ", " + name(t.from) + ", " + name(t.to) + ") is not realizable");
  }
  return extract_witness(tg, table, *id);
}

std::optional<ShortestWord> shortest_in_intersection(const TripleGrammar& tg, const ShortestTable& table) {
  if (tg.accepts_empty()) {
    ShortestWord s;
    s.witness.tree = ParseTree{TreeLabel::nonterminal(tg.base().start()), {ParseTree{TreeLabel::epsilon(), {}}}};
    s.witness.path.push_back(*tg.empty_word_node());
    return s;
  }
  if (tg.start_triples().empty()) return std::nullopt;

  std::vector<ShortestEntry> entries(table.size());
  for (TripleId t = 0; t < table.size(); ++t) entries[t] = table[t];
  auto rank = terminal_ranks(tg.base().grammar());
  YieldCursor cx(tg, entries), cy(tg, entries);

  TripleId chosen = tg.start_triples().front();
  for (TripleId t : tg.start_triples().subspan(1)) {
    if (table[t].length < table[chosen].length) {
      chosen = t;
    } else if (table[t].length == table[chosen].length) {
      cx.reset_to_triple(t);
      cy.reset_to_triple(chosen);
      int cmp = compare_yields(cx, cy, rank);
      if (cmp < 0 || (cmp == 0 && t < chosen)) chosen = t;
    }
  }
  ShortestWord s;
  s.length = table[chosen].length;
  s.witness = extract_witness(tg, table, chosen);
  s.start = chosen;
  return s;
}

std::optional<ShortestWord> shortest_word(const CnfGrammar& g, const Nfa& a) {
  TripleGrammar tg = bar_hillel(g, a);
  ShortestTable table = shortest_words(tg);
  return shortest_in_intersection(tg, table);
}

HeightReport height_bound_check(const CnfGrammar& g, std::size_t node_count, const ParseTree& tree) {
  HeightReport r;
  r.height = height(tree);
  r.bound = static_cast<std::uint64_t>(g.nonterminal_count()) * node_count * node_count;
  r.violated = r.height > r.bound;
  return r;
}

}  // namespace ratindex

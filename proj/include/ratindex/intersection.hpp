#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "ratindex/cnf.hpp"
#include "ratindex/graph.hpp"
#include "ratindex/parse_tree.hpp"

namespace ratindex {

using TripleId = std::uint32_t;

/// Product nonterminal (A, i, j): A derives the label of some path i -> j.
struct Triple {
  NonterminalId nonterminal;
  NodeId from;
  NodeId to;

  bool operator==(const Triple&) const = default;
};

struct TripleProduction {
  TripleId lhs;
  bool binary;
  TripleId left = 0;        // binary: (B, i, k)
  TripleId right = 0;       // binary: (C, k, j)
  TerminalId terminal = 0;  // terminal form: (A, i, j) -> a
  ProductionId base;        // originating production of the CNF grammar
};

/// Bar-Hillel product of a CNF grammar with an automaton, materialized lazily:
/// only realizable triples and the productions among them are kept, in
/// discovery order.
///
/// Holds a reference to the CNF grammar, which must outlive it.
class TripleGrammar {
 public:
  const CnfGrammar& base() const { return *base_; }
  const Nfa& automaton() const { return automaton_; }
  std::size_t node_count() const { return automaton_.graph.node_count(); }

  std::span<const Triple> triples() const { return triples_; }
  std::span<const TripleProduction> productions() const { return productions_; }
  std::optional<TripleId> find(const Triple& t) const;

  /// Realizable (S, q0, f) with q0 initial and f accepting.
  std::span<const TripleId> start_triples() const { return start_; }

  /// ε is in the intersection: S -> ε and some state is initial and accepting.
  bool accepts_empty() const { return empty_node_.has_value(); }
  std::optional<NodeId> empty_word_node() const { return empty_node_; }

  /// Productions in which triple `t` occurs on the right-hand side.
  std::span<const std::uint32_t> uses(TripleId t) const;

  /// Graph label -> grammar terminal (labels unknown to the grammar map to none).
  std::optional<TerminalId> terminal_of(LabelId l) const { return label_terminal_.at(l); }

 private:
  friend TripleGrammar bar_hillel(const CnfGrammar&, const Nfa&);

  const CnfGrammar* base_ = nullptr;
  Nfa automaton_;
  std::vector<std::optional<TerminalId>> label_terminal_;
  std::vector<Triple> triples_;
  std::unordered_map<std::uint64_t, TripleId> index_;
  std::vector<TripleProduction> productions_;
  std::vector<TripleId> start_;
  std::optional<NodeId> empty_node_;
  std::vector<std::uint32_t> uses_;
  std::vector<std::size_t> uses_offset_;
};

/// Product with NFA semantics (start triples honour Q₀ and F).
TripleGrammar bar_hillel(const CnfGrammar& g, const Nfa& a);

/// Product with graph-language semantics (every node initial and accepting).
TripleGrammar bar_hillel(const CnfGrammar& g, const LabeledGraph& d);

struct ShortestEntry {
  std::uint64_t length;
  std::uint32_t production;  // index into TripleGrammar::productions()
};

/// Minimum yield length per realizable triple, indexed by TripleId.
class ShortestTable {
 public:
  ShortestTable() = default;
  explicit ShortestTable(std::vector<ShortestEntry> entries) : entries_(std::move(entries)) {}

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const ShortestEntry& operator[](TripleId t) const { return entries_[t]; }
  std::optional<ShortestEntry> lookup(const TripleGrammar& tg, const Triple& t) const;

 private:
  std::vector<ShortestEntry> entries_;
};

/// Knuth's generalization of Dijkstra over the product. Among derivations of
/// equal length the lexicographically smallest yield wins (terminals ordered
/// by name), then the smallest production index.
ShortestTable shortest_words(const TripleGrammar& tg);

struct Witness {
  Word word;
  ParseTree tree;             // labels projected to the CNF grammar
  std::vector<NodeId> path;   // automaton states, one more than |word|
};

/// Throws ErrorCode::Unrealizable when the triple is not in the product.
Witness extract_witness(const TripleGrammar& tg, const ShortestTable& table, const Triple& t);
Witness extract_witness(const TripleGrammar& tg, const ShortestTable& table, TripleId t);

struct ShortestWord {
  std::uint64_t length = 0;
  Witness witness;
  std::optional<TripleId> start;  // empty for the ε witness
};

/// Shortest word of L(G) ∩ L(A) with the same tie-breaking as
/// shortest_words; nullopt when the intersection is empty.
std::optional<ShortestWord> shortest_in_intersection(const TripleGrammar& tg, const ShortestTable& table);

/// Convenience: product + table + selection.
std::optional<ShortestWord> shortest_word(const CnfGrammar& g, const Nfa& a);

struct HeightReport {
  std::size_t height = 0;
  std::uint64_t bound = 0;  // |N| * n^2
  bool violated = false;
};

/// Compares the witness tree height with |N|·n².
HeightReport height_bound_check(const CnfGrammar& g, std::size_t node_count, const ParseTree& tree);
inline HeightReport height_bound_check(const CnfGrammar& g, const LabeledGraph& d, const ParseTree& tree) {
  return height_bound_check(g, d.node_count(), tree);
}

}  // namespace ratindex

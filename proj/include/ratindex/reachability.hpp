#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ratindex/cnf.hpp"
#include "ratindex/graph.hpp"

namespace ratindex {

struct Fact {
  NodeId source;
  NodeId target;
  NonterminalId nonterminal;

  bool operator==(const Fact&) const = default;
};

/// All-pairs CFL-reachability facts (i, j, A): some path i -> j spells a word
/// derivable from A. Each fact remembers the derivation that first produced
/// it so witness paths can be rebuilt.
class ReachabilityRelation {
 public:
  std::span<const Fact> facts() const { return facts_; }
  bool contains(NodeId i, NodeId j, NonterminalId a) const;

  NonterminalId start() const { return start_; }
  std::size_t node_count() const { return node_count_; }

  /// Facts of the start symbol, sorted by (source, target).
  std::vector<std::pair<NodeId, NodeId>> start_facts() const;

 private:
  friend ReachabilityRelation all_pairs_reach(const CnfGrammar&, const LabeledGraph&);
  friend std::vector<NodeId> witness_path(const ReachabilityRelation&, NodeId, NodeId);

  struct Origin {
    enum class Kind : std::uint8_t { Edge, Binary, Empty } kind;
    std::uint32_t left = 0;   // fact id (Binary)
    std::uint32_t right = 0;  // fact id (Binary)
  };

  std::optional<std::uint32_t> find(NodeId i, NodeId j, NonterminalId a) const;

  std::size_t node_count_ = 0;
  std::size_t nonterminal_count_ = 0;
  NonterminalId start_ = 0;
  std::vector<Fact> facts_;
  std::vector<Origin> origins_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
};

/// Semi-naive worklist over CNF rules with (node, nonterminal) join indexes.
/// With S -> ε every node gets the fact (i, i, S).
ReachabilityRelation all_pairs_reach(const CnfGrammar& g, const LabeledGraph& d);

/// Path i -> j whose label word is derivable from the start symbol.
/// Throws ErrorCode::NotReachable when (i, j, S) is not a fact.
std::vector<NodeId> witness_path(const ReachabilityRelation& rel, NodeId i, NodeId j);

}  // namespace ratindex

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ratindex/grammar.hpp"
#include "ratindex/graph.hpp"

namespace ratindex {

/// head(x, y) :- p1(x, z1), p2(z1, z2), …, pm(z_{m-1}, y).
struct ChainRule {
  std::string head;
  std::vector<std::string> body;
  std::size_t line = 0;
};

struct ChainProgram {
  std::vector<ChainRule> rules;
  std::string query;

  /// Predicates occurring in some head, in order of first appearance.
  std::vector<std::string> idb_predicates() const;
  /// Predicates never occurring in a head, in order of first appearance.
  std::vector<std::string> edb_predicates() const;
};

/// One rule per line (a rule may also end at its '.'); `?- Pred` selects the
/// query, which otherwise is the first rule's head. `%` and `#` start
/// comments. Throws ErrorCode::NonChainRule (naming the rule) or
/// ErrorCode::NonBinaryPredicate.
ChainProgram parse_chain_program(std::string_view text);

/// Terminal name an edb predicate is matched against in the graph.
std::string edb_terminal_name(std::string_view predicate);

/// Grammar with one production per rule. idb predicates become nonterminals
/// (first letter upper-cased), edb predicates become the terminals
/// edb_terminal_name(p). A body with at most one idb predicate therefore
/// gives a linear production. Name collisions throw
/// ErrorCode::DuplicateSymbol.
Grammar chain_to_cfg(const ChainProgram& p);

/// Query facts as (source, target) node pairs, sorted. Throws
/// ErrorCode::UnknownEdbLabel when an edb terminal is not a graph label
/// (declare unused labels with an `alphabet:` header).
std::vector<std::pair<NodeId, NodeId>> evaluate(const ChainProgram& p, const LabeledGraph& d);

}  // namespace ratindex

#pragma once

#include <span>
#include <vector>

#include "ratindex/grammar.hpp"

namespace ratindex {

struct BinaryRule {
  NonterminalId lhs;
  NonterminalId left;
  NonterminalId right;
  ProductionId production;
};

struct TerminalRule {
  NonterminalId lhs;
  TerminalId terminal;
  ProductionId production;
};

/// A grammar in Chomsky normal form: A -> B C, A -> a, and S -> ε only when
/// epsilon_at_start() holds and S occurs on no right-hand side. Every
/// nonterminal is generating and reachable from the start symbol.
class CnfGrammar {
 public:
  /// Validates `g` against the normal form; throws ErrorCode::InvalidArgument
  /// when a production has the wrong shape or a nonterminal is useless.
  static CnfGrammar from_grammar(Grammar g);

  const Grammar& grammar() const { return grammar_; }
  bool epsilon_at_start() const { return epsilon_at_start_; }
  NonterminalId start() const { return grammar_.start(); }
  std::size_t nonterminal_count() const { return grammar_.nonterminal_count(); }
  std::size_t terminal_count() const { return grammar_.terminal_count(); }

  std::span<const BinaryRule> binary_rules() const { return binary_; }
  std::span<const TerminalRule> terminal_rules() const { return terminal_; }

  /// Binary rules grouped by their left/right child.
  std::span<const BinaryRule> rules_with_left(NonterminalId b) const;
  std::span<const BinaryRule> rules_with_right(NonterminalId c) const;

 private:
  Grammar grammar_;
  bool epsilon_at_start_ = false;
  std::vector<BinaryRule> binary_;
  std::vector<TerminalRule> terminal_;
  std::vector<BinaryRule> by_left_;
  std::vector<std::size_t> by_left_offset_;
  std::vector<BinaryRule> by_right_;
  std::vector<std::size_t> by_right_offset_;
};

/// Converts `g` to an equivalent CNF grammar. Steps: fresh start symbol when
/// the start occurs on a right-hand side, ε-elimination, unit elimination,
/// useless-symbol removal, terminal lifting, binarization.
///
/// Throws ErrorCode::EmptyLanguage when no word is derivable from the start.
CnfGrammar to_cnf(const Grammar& g);

/// Nonterminals that derive some terminal word.
std::vector<bool> generating_nonterminals(const Grammar& g);

/// Nonterminals reachable from the start through productions whose symbols
/// are all generating.
std::vector<bool> useful_nonterminals(const Grammar& g);

/// Copy of `g` restricted to useful nonterminals; nonterminal ids are
/// renumbered in order of first appearance. Start stays first.
Grammar trim_grammar(const Grammar& g);

}  // namespace ratindex

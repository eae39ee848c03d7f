#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ratindex/cnf.hpp"
#include "ratindex/grammar.hpp"

namespace ratindex {

struct TreeLabel {
  enum class Kind : std::uint8_t { Nonterminal, Terminal, Epsilon };
  Kind kind = Kind::Epsilon;
  std::uint32_t id = 0;

  static TreeLabel nonterminal(NonterminalId a) { return {Kind::Nonterminal, a}; }
  static TreeLabel terminal(TerminalId t) { return {Kind::Terminal, t}; }
  static TreeLabel epsilon() { return {Kind::Epsilon, 0}; }

  bool operator==(const TreeLabel&) const = default;
};

/// Derivation tree. Terminal and ε leaves have no children.
struct ParseTree {
  TreeLabel label;
  std::vector<ParseTree> children;

  bool is_leaf() const { return children.empty(); }
  bool operator==(const ParseTree&) const = default;
};

std::size_t node_count(const ParseTree& t);
std::size_t leaf_count(const ParseTree& t);

/// Edges on the longest root-to-leaf path.
std::size_t height(const ParseTree& t);

/// Terminal leaves left to right.
Word yield(const ParseTree& t);

/// Strahler-style dimension: leaves are 0; an inner node takes the maximum
/// over its children, plus one when that maximum is attained more than once.
unsigned dimension(const ParseTree& t);

/// Checks that every inner node matches a production of `g`.
bool is_valid_tree(const Grammar& g, const ParseTree& t);

/// Bracketed rendering, e.g. "(S (A a) (B b))".
std::string format_tree(const Grammar& g, const ParseTree& t);

struct TreeSamplingOptions {
  unsigned depth_cap = 12;
  /// Per-node probability of steering towards the shallowest completion.
  double stop_probability = 0.3;
};

/// Random derivation tree of `g` rooted at its start symbol. Depth never
/// exceeds max(depth_cap, shallowest possible tree).
ParseTree sample_parse_tree(const CnfGrammar& g, std::mt19937_64& rng,
                            const TreeSamplingOptions& options = {});

}  // namespace ratindex

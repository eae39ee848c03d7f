#pragma once

#include <optional>
#include <span>

#include "ratindex/cnf.hpp"
#include "ratindex/parse_tree.hpp"

namespace ratindex {

struct Membership {
  bool accepted = false;
  std::optional<ParseTree> tree;  // present when accepted and requested
};

/// CYK recognition of `word` by `g`. Terminal ids must be valid for
/// g.grammar(); use parse_word to convert text (it raises the alphabet error).
Membership cyk_membership(const CnfGrammar& g, std::span<const TerminalId> word,
                          bool want_tree = false);

}  // namespace ratindex

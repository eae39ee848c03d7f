#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ratindex {

using TerminalId = std::uint32_t;
using NonterminalId = std::uint32_t;
using ProductionId = std::uint32_t;

/// A word over a grammar's terminal alphabet.
using Word = std::vector<TerminalId>;

enum class SymbolKind : std::uint8_t { Terminal, Nonterminal };

struct Symbol {
  SymbolKind kind = SymbolKind::Terminal;
  std::uint32_t id = 0;

  static constexpr Symbol terminal(TerminalId t) { return {SymbolKind::Terminal, t}; }
  static constexpr Symbol nonterminal(NonterminalId n) {
    return {SymbolKind::Nonterminal, n};
  }
  constexpr bool is_terminal() const { return kind == SymbolKind::Terminal; }
  constexpr bool is_nonterminal() const { return kind == SymbolKind::Nonterminal; }

  auto operator<=>(const Symbol&) const = default;
};

struct Production {
  NonterminalId lhs = 0;
  std::vector<Symbol> rhs;  // empty rhs is an epsilon production

  bool operator==(const Production&) const = default;
};

/// Context-free grammar (terminals, nonterminals, productions, start).
///
/// Terminal and nonterminal names share one namespace; registering a name
/// under both kinds throws ErrorCode::DuplicateSymbol.
class Grammar {
 public:
  TerminalId add_terminal(std::string_view name);
  NonterminalId add_nonterminal(std::string_view name);
  ProductionId add_production(NonterminalId lhs, std::vector<Symbol> rhs);
  void set_start(NonterminalId start);

  std::span<const std::string> terminals() const { return terminals_; }
  std::span<const std::string> nonterminals() const { return nonterminals_; }
  std::span<const Production> productions() const { return productions_; }
  NonterminalId start() const { return start_; }

  std::size_t terminal_count() const { return terminals_.size(); }
  std::size_t nonterminal_count() const { return nonterminals_.size(); }

  const std::string& terminal_name(TerminalId t) const { return terminals_.at(t); }
  const std::string& nonterminal_name(NonterminalId n) const { return nonterminals_.at(n); }
  const std::string& symbol_name(Symbol s) const;

  std::optional<TerminalId> find_terminal(std::string_view name) const;
  std::optional<NonterminalId> find_nonterminal(std::string_view name) const;

  /// True when every terminal name is a single byte.
  bool single_char_terminals() const;

 private:
  std::vector<std::string> terminals_;
  std::vector<std::string> nonterminals_;
  std::unordered_map<std::string, Symbol> index_;
  std::vector<Production> productions_;
  NonterminalId start_ = 0;
};

/// Parses the line-oriented grammar format:
///
///   # comment
///   S -> a S b | a b
///   A -> 'x' A | ε
///
/// Identifiers starting with an uppercase letter are nonterminals, other
/// identifiers and quoted strings are terminals. An empty alternative (or the
/// token ε) is the empty body. The first left-hand side is the start symbol.
Grammar parse_grammar(std::string_view text);

/// Inverse of parse_grammar, one line per left-hand side.
std::string format_grammar(const Grammar& g);

/// Splits `text` into terminals of `g`. Whitespace-separated when `text`
/// contains whitespace, per byte when all terminals are one byte long,
/// greedy longest match otherwise.
Word parse_word(const Grammar& g, std::string_view text);

std::string format_word(const Grammar& g, std::span<const TerminalId> word);

}  // namespace ratindex

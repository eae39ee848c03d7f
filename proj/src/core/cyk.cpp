#include "ratindex/cyk.hpp"

#include "ratindex/error.hpp"

namespace ratindex {

namespace {

class Chart {
 public:
  Chart(std::size_t length, std::size_t nonterminals)
      : n_(length), k_(nonterminals), cells_(length * length * nonterminals, 0) {}

  // Span [i, i + len), len >= 1.
  bool get(std::size_t i, std::size_t len, NonterminalId a) const { return cells_[index(i, len, a)]; }
  void set(std::size_t i, std::size_t len, NonterminalId a) { cells_[index(i, len, a)] = 1; }

 private:
  std::size_t index(std::size_t i, std::size_t len, NonterminalId a) const {
    return ((len - 1) * n_ + i) * k_ + a;
  }
  std::size_t n_, k_;
  std::vector<std::uint8_t> cells_;
};

ParseTree build(const CnfGrammar& g, const Chart& chart, std::span<const TerminalId> word,
                NonterminalId a, std::size_t i, std::size_t len) {
  ParseTree node{TreeLabel::nonterminal(a), {}};
  if (len == 1) {
    node.children.push_back(ParseTree{TreeLabel::terminal(word[i]), {}});
    return node;
  }
  for (const BinaryRule& r : g.binary_rules()) {
    if (r.lhs != a) continue;
    for (std::size_t split = 1; split < len; ++split) {
      if (chart.get(i, split, r.left) && chart.get(i + split, len - split, r.right)) {
        node.children.push_back(build(g, chart, word, r.left, i, split));
        node.children.push_back(build(g, chart, word, r.right, i + split, len - split));
        return node;
      }
    }
  }
  throw Error(ErrorCode::Internal, "CYK chart inconsistent during tree construction");
}

}  // namespace

Membership cyk_membership(const CnfGrammar& g, std::span<const TerminalId> word, bool want_tree) {
  for (TerminalId t : word)
    if (t >= g.terminal_count()) throw Error(ErrorCode::Alphabet, "terminal id out of range");

  Membership result;
  if (word.empty()) {
    result.accepted = g.epsilon_at_start();
    if (result.accepted && want_tree)
      result.tree = ParseTree{TreeLabel::nonterminal(g.start()), {ParseTree{TreeLabel::epsilon(), {}}}};
    return result;
  }

  std::size_t n = word.size();
  Chart chart(n, g.nonterminal_count());
  for (std::size_t i = 0; i < n; ++i)
    for (const TerminalRule& r : g.terminal_rules())
      if (r.terminal == word[i]) chart.set(i, 1, r.lhs);

  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      for (const BinaryRule& r : g.binary_rules()) {
        if (chart.get(i, len, r.lhs)) continue;
        for (std::size_t split = 1; split < len; ++split) {
          if (chart.get(i, split, r.left) && chart.get(i + split, len - split, r.right)) {
            chart.set(i, len, r.lhs);
            break;
          }
        }
      }
    }
  }

  result.accepted = chart.get(0, n, g.start());
  if (result.accepted && want_tree) result.tree = build(g, chart, word, g.start(), 0, n);
  return result;
}

}  // namespace ratindex

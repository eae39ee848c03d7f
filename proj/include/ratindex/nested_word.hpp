#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ratindex/parse_tree.hpp"

namespace ratindex {

/// Push is written ā (or '('), Pop is written a (or ')').
enum class Move : std::uint8_t { Push, Pop };

/// Balanced sequence of push/pop moves: equal counts, and no prefix has
/// more pops than pushes.
class WellNestedWord {
 public:
  WellNestedWord() = default;

  /// Throws ErrorCode::Unbalanced.
  static WellNestedWord from_moves(std::vector<Move> moves);

  /// Accepts "ā"/"a" or "("/")"; whitespace is ignored.
  static WellNestedWord parse(std::string_view text);

  std::span<const Move> moves() const { return moves_; }
  std::size_t size() const { return moves_.size(); }
  bool empty() const { return moves_.empty(); }

  std::string to_string() const;   // āāaa
  std::string to_parens() const;   // (())

  bool operator==(const WellNestedWord&) const = default;

 private:
  explicit WellNestedWord(std::vector<Move> moves) : moves_(std::move(moves)) {}
  friend WellNestedWord alpha_of_tree(const ParseTree&);
  friend WellNestedWord harmonic(unsigned, unsigned);
  std::vector<Move> moves_;
};

/// 1-based (push position, pop position) pairs sorted by push position.
struct MatchingPairs {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  bool operator==(const MatchingPairs&) const = default;
};

/// Stack matching. Throws ErrorCode::Unbalanced on unbalanced input.
MatchingPairs matching_pairs(std::span<const Move> moves);
inline MatchingPairs matching_pairs(const WellNestedWord& w) { return matching_pairs(w.moves()); }

/// Encodes a parse tree: ā·α(root); a leaf is a; a node with k children is
/// a ā^k α(child_1)…α(child_k).
WellNestedWord alpha_of_tree(const ParseTree& t);

inline constexpr unsigned kDefaultHarmonicCap = 20;

/// h_0 = ε, h_{k+1} = ā h_k a ā h_k a. Throws ErrorCode::CapExceeded for k > cap.
WellNestedWord harmonic(unsigned k, unsigned cap = kDefaultHarmonicCap);

/// Largest k such that deleting some matching pairs leaves exactly h_k.
///
/// Linear-time pass over the matching forest. For a pair v let c(v) be the
/// oscillation of the forest strictly inside v. A forest F contains h_{k+1}
/// iff it has two incomparable pairs u, v whose insides contain h_k, so
/// osc(F) = 1 + max{min(c(u), c(v)) : u, v incomparable}, or 0 without such
/// a pair. The maximum splits into "two different roots" (second largest
/// subtree maximum) and "inside one root" (that root's c minus one).
unsigned oscillation(const WellNestedWord& w);

inline constexpr std::size_t kDefaultBruteForceCap = 20;

/// Literal definition: tries every subset of matching pairs to delete.
/// Throws ErrorCode::CapExceeded when |w| > cap.
unsigned oscillation_bruteforce(const WellNestedWord& w, std::size_t cap = kDefaultBruteForceCap);

}  // namespace ratindex

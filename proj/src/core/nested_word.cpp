#include "ratindex/nested_word.hpp"

#include <algorithm>

#include "ratindex/error.hpp"

namespace ratindex {

namespace {

constexpr std::string_view kPushGlyph = "\xC4\x81";  // ā

void check_balanced(std::span<const Move> moves) {
  std::size_t depth = 0;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (moves[i] == Move::Push) {
      ++depth;
    } else if (depth == 0) {
      throw Error(ErrorCode::Unbalanced, "pop without matching push at position " + std::to_string(i + 1));
    } else {
      --depth;
    }
  }
  if (depth != 0) throw Error(ErrorCode::Unbalanced, std::to_string(depth) + " unmatched push move(s)");
}

}  // namespace

WellNestedWord WellNestedWord::from_moves(std::vector<Move> moves) {
  check_balanced(moves);
  return WellNestedWord(std::move(moves));
}

WellNestedWord WellNestedWord::parse(std::string_view text) {
  std::vector<Move> moves;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.substr(i, kPushGlyph.size()) == kPushGlyph) {
      moves.push_back(Move::Push);
      i += kPushGlyph.size();
      continue;
    }
    char c = text[i++];
    if (c == '(') moves.push_back(Move::Push);
    else if (c == ')' || c == 'a') moves.push_back(Move::Pop);
    else if (c == ' ' || c == '\t' || c == '\n') continue;
    else throw Error(ErrorCode::Syntax, std::string("unexpected character '") + c + "' in nested word");
  }
  return from_moves(std::move(moves));
}

std::string WellNestedWord::to_string() const {
  std::string s;
  for (Move m : moves_) s += m == Move::Push ? std::string(kPushGlyph) : std::string("a");
  return s;
}

std::string WellNestedWord::to_parens() const {
  std::string s;
  s.reserve(moves_.size());
  for (Move m : moves_) s += m == Move::Push ? '(' : ')';
  return s;
}

MatchingPairs matching_pairs(std::span<const Move> moves) {
  check_balanced(moves);
  MatchingPairs out;
  out.pairs.resize(moves.size() / 2);
  std::vector<std::size_t> open;       // positions of pending pushes
  std::vector<std::size_t> slot;       // output index reserved at push time
  std::size_t next = 0;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (moves[i] == Move::Push) {
      open.push_back(i + 1);
      slot.push_back(next++);
    } else {
      out.pairs[slot.back()] = {open.back(), i + 1};
      open.pop_back();
      slot.pop_back();
    }
  }
  return out;
}

namespace {

void encode_node(const ParseTree& n, std::vector<Move>& out) {
  out.push_back(Move::Pop);
  if (n.is_leaf()) return;
  out.insert(out.end(), n.children.size(), Move::Push);
  for (const ParseTree& c : n.children) encode_node(c, out);
}

}  // namespace

WellNestedWord alpha_of_tree(const ParseTree& t) {
  std::vector<Move> moves;
  moves.push_back(Move::Push);
  encode_node(t, moves);
  return WellNestedWord(std::move(moves));
}

WellNestedWord harmonic(unsigned k, unsigned cap) {
  if (k > cap)
    throw Error(ErrorCode::CapExceeded,
                "harmonic order " + std::to_string(k) + " exceeds cap " + std::to_string(cap));
  std::vector<Move> h;
  for (unsigned i = 0; i < k; ++i) {
    std::vector<Move> next;
    next.reserve(2 * h.size() + 4);
    for (int rep = 0; rep < 2; ++rep) {
      next.push_back(Move::Push);
      next.insert(next.end(), h.begin(), h.end());
      next.push_back(Move::Pop);
    }
    h = std::move(next);
  }
  return WellNestedWord(std::move(h));
}

unsigned oscillation(const WellNestedWord& w) {
  // Per open forest: the two largest subtree maxima among its roots and the
  // best incomparable-pair value found so far (-1 = none).
  struct Frame {
    long top1 = -1;
    long top2 = -1;
    long best = -1;
  };
  std::vector<Frame> stack(1);
  for (Move m : w.moves()) {
    if (m == Move::Push) {
      stack.emplace_back();
      continue;
    }
    Frame inner = stack.back();
    stack.pop_back();
    long c = inner.best + 1;                   // oscillation inside this pair
    long subtree_max = std::max(c, inner.top1);
    Frame& parent = stack.back();
    if (subtree_max > parent.top1) {
      parent.top2 = parent.top1;
      parent.top1 = subtree_max;
    } else if (subtree_max > parent.top2) {
      parent.top2 = subtree_max;
    }
    parent.best = std::max({parent.best, inner.best, parent.top2});
  }
  return static_cast<unsigned>(stack.front().best + 1);
}

unsigned oscillation_bruteforce(const WellNestedWord& w, std::size_t cap) {
  if (w.size() > cap)
    throw Error(ErrorCode::CapExceeded, "word of " + std::to_string(w.size()) +
                                            " moves exceeds brute-force cap " + std::to_string(cap));
  auto pairs = matching_pairs(w).pairs;
  std::size_t p = pairs.size();
  if (p >= 40) throw Error(ErrorCode::CapExceeded, "too many matching pairs for exhaustive search");

  std::vector<std::vector<Move>> harmonics;
  for (unsigned k = 0;; ++k) {
    auto h = harmonic(k, 62);
    if (h.size() > w.size()) break;
    harmonics.emplace_back(h.moves().begin(), h.moves().end());
  }

  unsigned best = 0;
  std::vector<bool> keep(w.size());
  std::vector<Move> rest;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p); ++mask) {
    std::fill(keep.begin(), keep.end(), false);
    for (std::size_t b = 0; b < p; ++b) {
      if ((mask >> b) & 1U) {
        keep[pairs[b].first - 1] = true;
        keep[pairs[b].second - 1] = true;
      }
    }
    rest.clear();
    for (std::size_t i = 0; i < w.size(); ++i)
      if (keep[i]) rest.push_back(w.moves()[i]);
    for (unsigned k = 0; k < harmonics.size(); ++k)
      if (rest == harmonics[k]) best = std::max(best, k);
  }
  return best;
}

}  // namespace ratindex

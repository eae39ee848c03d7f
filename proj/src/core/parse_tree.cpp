#include "ratindex/parse_tree.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "ratindex/error.hpp"

namespace ratindex {

std::size_t node_count(const ParseTree& t) {
  std::size_t n = 1;
  for (const ParseTree& c : t.children) n += node_count(c);
  return n;
}

std::size_t leaf_count(const ParseTree& t) {
  if (t.is_leaf()) return 1;
  std::size_t n = 0;
  for (const ParseTree& c : t.children) n += leaf_count(c);
  return n;
}

std::size_t height(const ParseTree& t) {
  std::size_t h = 0;
  for (const ParseTree& c : t.children) h = std::max(h, 1 + height(c));
  return h;
}

namespace {

void collect_yield(const ParseTree& t, Word& out) {
  if (t.label.kind == TreeLabel::Kind::Terminal) out.push_back(t.label.id);
  for (const ParseTree& c : t.children) collect_yield(c, out);
}

}  // namespace

Word yield(const ParseTree& t) {
  Word w;
  collect_yield(t, w);
  return w;
}

unsigned dimension(const ParseTree& t) {
  if (t.is_leaf()) return 0;
  unsigned best = 0;
  unsigned ties = 0;
  for (const ParseTree& c : t.children) {
    unsigned d = dimension(c);
    if (ties == 0 || d > best) {
      best = d;
      ties = 1;
    } else if (d == best) {
      ++ties;
    }
  }
  return ties > 1 ? best + 1 : best;
}

bool is_valid_tree(const Grammar& g, const ParseTree& t) {
  if (t.label.kind != TreeLabel::Kind::Nonterminal) return t.is_leaf();
  if (t.label.id >= g.nonterminal_count() || t.is_leaf()) return false;
  std::vector<Symbol> rhs;
  bool epsilon_body = t.children.size() == 1 && t.children[0].label.kind == TreeLabel::Kind::Epsilon;
  if (!epsilon_body) {
    for (const ParseTree& c : t.children) {
      switch (c.label.kind) {
        case TreeLabel::Kind::Nonterminal: rhs.push_back(Symbol::nonterminal(c.label.id)); break;
        case TreeLabel::Kind::Terminal: rhs.push_back(Symbol::terminal(c.label.id)); break;
        case TreeLabel::Kind::Epsilon: return false;
      }
    }
  }
  Production want{t.label.id, rhs};
  auto prods = g.productions();
  if (std::find(prods.begin(), prods.end(), want) == prods.end()) return false;
  return std::all_of(t.children.begin(), t.children.end(),
                     [&](const ParseTree& c) { return is_valid_tree(g, c); });
}

namespace {

void render(const Grammar& g, const ParseTree& t, std::ostringstream& os) {
  switch (t.label.kind) {
    case TreeLabel::Kind::Terminal: os << g.terminal_name(t.label.id); return;
    case TreeLabel::Kind::Epsilon: os << "\xCE\xB5"; return;
    case TreeLabel::Kind::Nonterminal: break;
  }
  os << '(' << g.nonterminal_name(t.label.id);
  for (const ParseTree& c : t.children) {
    os << ' ';
    render(g, c, os);
  }
  os << ')';
}

constexpr unsigned kUnbounded = std::numeric_limits<unsigned>::max();

/// One expansion choice for a nonterminal.
struct Choice {
  enum class Kind { Binary, Terminal, Epsilon } kind;
  std::uint32_t a = 0, b = 0;  // children or terminal
};

class Sampler {
 public:
  Sampler(const CnfGrammar& g, std::mt19937_64& rng, const TreeSamplingOptions& opt)
      : g_(g), rng_(rng), opt_(opt), choices_(g.nonterminal_count()), min_height_(g.nonterminal_count(), kUnbounded) {
    for (const TerminalRule& r : g.terminal_rules())
      choices_[r.lhs].push_back({Choice::Kind::Terminal, r.terminal, 0});
    for (const BinaryRule& r : g.binary_rules())
      choices_[r.lhs].push_back({Choice::Kind::Binary, r.left, r.right});
    if (g.epsilon_at_start()) choices_[g.start()].push_back({Choice::Kind::Epsilon, 0, 0});

    bool changed = true;
    while (changed) {
      changed = false;
      for (NonterminalId a = 0; a < choices_.size(); ++a) {
        for (const Choice& c : choices_[a]) {
          unsigned h = choice_height(c);
          if (h < min_height_[a]) {
            min_height_[a] = h;
            changed = true;
          }
        }
      }
    }
  }

  ParseTree sample(NonterminalId a, unsigned budget) {
    const auto& options = choices_[a];
    unsigned limit = std::max(budget, min_height_[a]);
    std::vector<const Choice*> eligible;
    std::vector<const Choice*> shallowest;
    for (const Choice& c : options) {
      unsigned h = choice_height(c);
      if (h <= limit) eligible.push_back(&c);
      if (h == min_height_[a]) shallowest.push_back(&c);
    }
    if (eligible.empty()) throw Error(ErrorCode::Internal, "sampler found no eligible production");
    std::bernoulli_distribution stop(opt_.stop_probability);
    const auto& pool = stop(rng_) ? shallowest : eligible;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    const Choice& c = *pool[pick(rng_)];

    ParseTree node{TreeLabel::nonterminal(a), {}};
    switch (c.kind) {
      case Choice::Kind::Terminal:
        node.children.push_back(ParseTree{TreeLabel::terminal(c.a), {}});
        break;
      case Choice::Kind::Epsilon:
        node.children.push_back(ParseTree{TreeLabel::epsilon(), {}});
        break;
      case Choice::Kind::Binary: {
        unsigned child_budget = limit > 0 ? limit - 1 : 0;
        node.children.push_back(sample(c.a, child_budget));
        node.children.push_back(sample(c.b, child_budget));
        break;
      }
    }
    return node;
  }

 private:
  unsigned choice_height(const Choice& c) const {
    if (c.kind != Choice::Kind::Binary) return 1;
    unsigned h = std::max(min_height_[c.a], min_height_[c.b]);
    return h == kUnbounded ? kUnbounded : h + 1;
  }

  const CnfGrammar& g_;
  std::mt19937_64& rng_;
  TreeSamplingOptions opt_;
  std::vector<std::vector<Choice>> choices_;
  std::vector<unsigned> min_height_;
};

}  // namespace

std::string format_tree(const Grammar& g, const ParseTree& t) {
  std::ostringstream os;
  render(g, t, os);
  return os.str();
}

ParseTree sample_parse_tree(const CnfGrammar& g, std::mt19937_64& rng, const TreeSamplingOptions& options) {
  Sampler sampler(g, rng, options);
  return sampler.sample(g.start(), options.depth_cap);
}

}  // namespace ratindex

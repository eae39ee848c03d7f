#include "ratindex/reachability.hpp"

#include <algorithm>
#include <deque>

#include "ratindex/error.hpp"

namespace ratindex {

std::optional<std::uint32_t> ReachabilityRelation::find(NodeId i, NodeId j, NonterminalId a) const {
  if (i >= node_count_ || j >= node_count_ || a >= nonterminal_count_) return std::nullopt;
  std::uint64_t n = node_count_;
  auto it = index_.find((std::uint64_t{a} * n + i) * n + j);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool ReachabilityRelation::contains(NodeId i, NodeId j, NonterminalId a) const {
  return find(i, j, a).has_value();
}

std::vector<std::pair<NodeId, NodeId>> ReachabilityRelation::start_facts() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (const Fact& f : facts_)
    if (f.nonterminal == start_) out.emplace_back(f.source, f.target);
  std::sort(out.begin(), out.end());
  return out;
}

ReachabilityRelation all_pairs_reach(const CnfGrammar& g, const LabeledGraph& d) {
  ReachabilityRelation rel;
  rel.node_count_ = d.node_count();
  rel.nonterminal_count_ = g.nonterminal_count();
  rel.start_ = g.start();
  const std::uint64_t n = d.node_count();

  std::deque<std::uint32_t> worklist;
  // (A, i) -> facts (i, *, A) and (A, j) -> facts (*, j, A)
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> out_edges;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> in_edges;

  auto add = [&](NodeId i, NodeId j, NonterminalId a, ReachabilityRelation::Origin origin) {
    auto [it, inserted] = rel.index_.try_emplace((std::uint64_t{a} * n + i) * n + j,
                                                 static_cast<std::uint32_t>(rel.facts_.size()));
    if (!inserted) return;
    rel.facts_.push_back(Fact{i, j, a});
    rel.origins_.push_back(origin);
    out_edges[std::uint64_t{a} * n + i].push_back(it->second);
    in_edges[std::uint64_t{a} * n + j].push_back(it->second);
    worklist.push_back(it->second);
  };

  std::vector<std::vector<NonterminalId>> producers(g.terminal_count());
  for (const TerminalRule& r : g.terminal_rules()) producers[r.terminal].push_back(r.lhs);
  for (const Edge& e : d.edges()) {
    auto t = g.grammar().find_terminal(d.label_name(e.label));
    if (!t) continue;
    for (NonterminalId a : producers[*t]) add(e.source, e.target, a, {ReachabilityRelation::Origin::Kind::Edge});
  }
  if (g.epsilon_at_start())
    for (NodeId i = 0; i < n; ++i) add(i, i, g.start(), {ReachabilityRelation::Origin::Kind::Empty});

  while (!worklist.empty()) {
    std::uint32_t id = worklist.front();
    worklist.pop_front();
    const Fact y = rel.facts_[id];

    // X -> Y Z: Y(i, j), Z(j, k) gives X(i, k)
    for (const BinaryRule& r : g.rules_with_left(y.nonterminal)) {
      auto it = out_edges.find(std::uint64_t{r.right} * n + y.target);
      if (it == out_edges.end()) continue;
      const auto& partners = it->second;
      for (std::size_t k = 0; k < partners.size(); ++k) {
        std::uint32_t z = partners[k];
        add(y.source, rel.facts_[z].target, r.lhs, {ReachabilityRelation::Origin::Kind::Binary, id, z});
      }
    }
    // X -> Z Y: Z(k, i), Y(i, j) gives X(k, j)
    for (const BinaryRule& r : g.rules_with_right(y.nonterminal)) {
      auto it = in_edges.find(std::uint64_t{r.left} * n + y.source);
      if (it == in_edges.end()) continue;
      const auto& partners = it->second;
      for (std::size_t k = 0; k < partners.size(); ++k) {
        std::uint32_t z = partners[k];
        add(rel.facts_[z].source, y.target, r.lhs, {ReachabilityRelation::Origin::Kind::Binary, z, id});
      }
    }
  }
  return rel;
}

std::vector<NodeId> witness_path(const ReachabilityRelation& rel, NodeId i, NodeId j) {
  auto root = rel.find(i, j, rel.start_);
  if (!root) throw Error(ErrorCode::NotReachable, "target is not reachable from source under the grammar");
  std::vector<NodeId> path{i};
  std::vector<std::uint32_t> stack{*root};
  while (!stack.empty()) {
    std::uint32_t f = stack.back();
    stack.pop_back();
    const auto& origin = rel.origins_[f];
    switch (origin.kind) {
      case ReachabilityRelation::Origin::Kind::Edge:
        path.push_back(rel.facts_[f].target);
        break;
      case ReachabilityRelation::Origin::Kind::Empty:
        break;
      case ReachabilityRelation::Origin::Kind::Binary:
        stack.push_back(origin.right);
        stack.push_back(origin.left);
        break;
    }
  }
  return path;
}

}  // namespace ratindex

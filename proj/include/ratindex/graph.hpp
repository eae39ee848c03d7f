#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ratindex {

using NodeId = std::uint32_t;
using LabelId = std::uint32_t;

struct Edge {
  NodeId source;
  LabelId label;
  NodeId target;

  auto operator<=>(const Edge&) const = default;
};

/// Directed edge-labeled graph (Q, Σ, δ). Node and label names are opaque.
class LabeledGraph {
 public:
  NodeId add_node(std::string_view name);
  LabelId add_label(std::string_view name);
  /// Adds the edge unless it is already present.
  void add_edge(NodeId source, LabelId label, NodeId target);
  void add_edge(std::string_view source, std::string_view label, std::string_view target);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t label_count() const { return labels_.size(); }
  std::span<const std::string> nodes() const { return nodes_; }
  std::span<const std::string> labels() const { return labels_; }
  std::span<const Edge> edges() const { return edges_; }

  const std::string& node_name(NodeId n) const { return nodes_.at(n); }
  const std::string& label_name(LabelId l) const { return labels_.at(l); }
  std::optional<NodeId> find_node(std::string_view name) const;
  std::optional<LabelId> find_label(std::string_view name) const;

 private:
  std::vector<std::string> nodes_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> node_index_;
  std::unordered_map<std::string, LabelId> label_index_;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> edge_index_;
};

/// Finite automaton (Q, Σ, δ, Q₀, F) over a labeled graph.
struct Nfa {
  LabeledGraph graph;
  std::vector<NodeId> initial;
  std::vector<NodeId> accepting;

  bool accepts_empty_word() const;
};

/// Graph language: every node initial and accepting.
Nfa graph_language_nfa(const LabeledGraph& g);

/// TSV edges `source<TAB>label<TAB>target` (any whitespace when the line has
/// no tab). Optional headers: `states: ...` for isolated nodes and
/// `alphabet: ...` for labels without edges. `#` starts a comment.
LabeledGraph parse_graph(std::string_view text);

/// Graph format plus `initial: ...` and `accepting: ...` headers. Without
/// headers every state is initial and accepting.
Nfa parse_nfa(std::string_view text);

std::string format_graph(const LabeledGraph& g);
std::string format_nfa(const Nfa& a);

/// Subset-simulation acceptance test for a word given as label names.
bool nfa_accepts(const Nfa& a, std::span<const std::string> word);

}  // namespace ratindex

#include "ratindex/graph.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "ratindex/error.hpp"

namespace ratindex {

NodeId LabeledGraph::add_node(std::string_view name) {
  std::string key(name);
  if (auto it = node_index_.find(key); it != node_index_.end()) return it->second;
  auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(key);
  node_index_.emplace(std::move(key), id);
  return id;
}

LabelId LabeledGraph::add_label(std::string_view name) {
  std::string key(name);
  if (auto it = label_index_.find(key); it != label_index_.end()) return it->second;
  auto id = static_cast<LabelId>(labels_.size());
  labels_.push_back(key);
  label_index_.emplace(std::move(key), id);
  return id;
}

void LabeledGraph::add_edge(NodeId source, LabelId label, NodeId target) {
  if (source >= nodes_.size() || target >= nodes_.size() || label >= labels_.size())
    throw Error(ErrorCode::InvalidArgument, "edge refers to an unknown node or label");
  std::uint64_t key = (std::uint64_t{source} << 32) | target;
  auto& bucket = edge_index_[key];
  for (std::uint32_t e : bucket)
    if (edges_[e].label == label) return;
  bucket.push_back(static_cast<std::uint32_t>(edges_.size()));
  edges_.push_back(Edge{source, label, target});
}

void LabeledGraph::add_edge(std::string_view source, std::string_view label, std::string_view target) {
  NodeId s = add_node(source);
  LabelId l = add_label(label);
  NodeId t = add_node(target);
  add_edge(s, l, t);
}

std::optional<NodeId> LabeledGraph::find_node(std::string_view name) const {
  auto it = node_index_.find(std::string(name));
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<LabelId> LabeledGraph::find_label(std::string_view name) const {
  auto it = label_index_.find(std::string(name));
  if (it == label_index_.end()) return std::nullopt;
  return it->second;
}

bool Nfa::accepts_empty_word() const {
  return std::any_of(initial.begin(), initial.end(), [&](NodeId q) {
    return std::find(accepting.begin(), accepting.end(), q) != accepting.end();
  });
}

Nfa graph_language_nfa(const LabeledGraph& g) {
  Nfa a{g, {}, {}};
  for (NodeId q = 0; q < g.node_count(); ++q) {
    a.initial.push_back(q);
    a.accepting.push_back(q);
  }
  return a;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  if (line.find('\t') != std::string_view::npos) {
    std::size_t pos = 0;
    while (true) {
      std::size_t tab = line.find('\t', pos);
      out.emplace_back(trim(line.substr(pos, tab == std::string_view::npos ? std::string_view::npos : tab - pos)));
      if (tab == std::string_view::npos) break;
      pos = tab + 1;
    }
    return out;
  }
  std::istringstream is{std::string(line)};
  std::string field;
  while (is >> field) out.push_back(field);
  return out;
}

struct Headers {
  std::vector<std::string> initial;
  std::vector<std::string> accepting;
  bool has_initial = false;
  bool has_accepting = false;
};

LabeledGraph parse_lines(std::string_view text, Headers* headers) {
  LabeledGraph g;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string_view line = trim(raw);
    if (line.empty()) continue;

    std::size_t colon = line.find(':');
    std::string key = colon == std::string_view::npos ? std::string() : std::string(trim(line.substr(0, colon)));
    if (key == "states" || key == "alphabet" || key == "initial" || key == "accepting") {
      std::istringstream is{std::string(line.substr(colon + 1))};
      std::vector<std::string> values;
      for (std::string v; is >> v;) values.push_back(v);
      if (key == "states") {
        for (const auto& v : values) g.add_node(v);
        continue;
      }
      if (key == "alphabet") {
        for (const auto& v : values) g.add_label(v);
        continue;
      }
      if ((key == "initial" || key == "accepting") && headers) {
        for (const auto& v : values) g.add_node(v);
        auto& slot = key == "initial" ? headers->initial : headers->accepting;
        slot.insert(slot.end(), values.begin(), values.end());
        (key == "initial" ? headers->has_initial : headers->has_accepting) = true;
        continue;
      }
      if (key == "initial" || key == "accepting")
        throw Error(ErrorCode::Syntax, "line " + std::to_string(line_no) + ": '" + key +
                                           ":' header is only valid in automaton files");
    }

    auto fields = split_fields(line);
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty() || fields[2].empty())
      throw Error(ErrorCode::Syntax, "line " + std::to_string(line_no) +
                                         ": expected 'source<TAB>label<TAB>target'");
    g.add_edge(fields[0], fields[1], fields[2]);
  }
  return g;
}

}  // namespace

LabeledGraph parse_graph(std::string_view text) { return parse_lines(text, nullptr); }

Nfa parse_nfa(std::string_view text) {
  Headers h;
  Nfa a{parse_lines(text, &h), {}, {}};
  auto resolve = [&](const std::vector<std::string>& names, std::vector<NodeId>& out) {
    for (const auto& n : names) {
      NodeId q = *a.graph.find_node(n);
      if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
    }
  };
  if (h.has_initial) {
    resolve(h.initial, a.initial);
  } else {
    for (NodeId q = 0; q < a.graph.node_count(); ++q) a.initial.push_back(q);
  }
  if (h.has_accepting) {
    resolve(h.accepting, a.accepting);
  } else {
    for (NodeId q = 0; q < a.graph.node_count(); ++q) a.accepting.push_back(q);
  }
  return a;
}

std::string format_graph(const LabeledGraph& g) {
  std::ostringstream os;
  os << "states:";
  for (const auto& n : g.nodes()) os << ' ' << n;
  os << '\n';
  for (const Edge& e : g.edges())
    os << g.node_name(e.source) << '\t' << g.label_name(e.label) << '\t' << g.node_name(e.target) << '\n';
  return os.str();
}

std::string format_nfa(const Nfa& a) {
  std::string graph = format_graph(a.graph);
  std::size_t first_line = graph.find('\n') + 1;
  std::ostringstream os;
  os << graph.substr(0, first_line) << "initial:";
  for (NodeId q : a.initial) os << ' ' << a.graph.node_name(q);
  os << "\naccepting:";
  for (NodeId q : a.accepting) os << ' ' << a.graph.node_name(q);
  os << '\n' << graph.substr(first_line);
  return os.str();
}

bool nfa_accepts(const Nfa& a, std::span<const std::string> word) {
  std::vector<bool> current(a.graph.node_count(), false);
  for (NodeId q : a.initial) current[q] = true;
  for (const std::string& sym : word) {
    auto label = a.graph.find_label(sym);
    if (!label) return false;
    std::vector<bool> next(a.graph.node_count(), false);
    for (const Edge& e : a.graph.edges())
      if (e.label == *label && current[e.source]) next[e.target] = true;
    current = std::move(next);
  }
  return std::any_of(a.accepting.begin(), a.accepting.end(), [&](NodeId q) { return current[q]; });
}

}  // namespace ratindex

#include "mrew/graph.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace mrew {

bool Node::has_property(const std::string& key) const { return property(key) != nullptr; }

const Value* Node::property(const std::string& key) const {
  for (const auto& [k, v] : properties)
    if (k == key) return &v;
  return nullptr;
}

bool Edge::is_remote() const {
  for (const auto& [k, v] : attributes)
    if (k == "remote" && v.text == "true") return true;
  return false;
}

std::string to_string(Framework f) {
  switch (f) {
    case Framework::Amr: return "amr";
    case Framework::Ucca: return "ucca";
    case Framework::UccaLike: return "ucca_like";
  }
  return "amr";
}

std::optional<Framework> framework_from_string(const std::string& s) {
  if (s == "amr") return Framework::Amr;
  if (s == "ucca") return Framework::Ucca;
  if (s == "ucca_like") return Framework::UccaLike;
  return std::nullopt;
}

bool SemanticGraph::has_node(NodeId id) const { return find_node(id) != nullptr; }

const Node* SemanticGraph::find_node(NodeId id) const {
  for (const auto& n : nodes_)
    if (n.id == id) return &n;
  return nullptr;
}

Node* SemanticGraph::find_node(NodeId id) {
  return const_cast<Node*>(std::as_const(*this).find_node(id));
}

const Edge* SemanticGraph::find_edge(std::uint64_t uid) const {
  for (const auto& e : edges_)
    if (e.uid == uid) return &e;
  return nullptr;
}

Edge* SemanticGraph::find_edge(std::uint64_t uid) {
  return const_cast<Edge*>(std::as_const(*this).find_edge(uid));
}

NodeId SemanticGraph::add_node(std::optional<std::string> label,
                               std::vector<KeyValue> properties,
                               std::vector<Anchor> anchors) {
  NodeId id = next_node_id_++;
  nodes_.push_back(Node{id, std::move(label), std::move(properties), std::move(anchors)});
  return id;
}

void SemanticGraph::add_node_with_id(NodeId id, std::optional<std::string> label,
                                     std::vector<KeyValue> properties,
                                     std::vector<Anchor> anchors) {
  if (has_node(id)) throw StructuralError("duplicate node id " + std::to_string(id));
  nodes_.push_back(Node{id, std::move(label), std::move(properties), std::move(anchors)});
  next_node_id_ = std::max(next_node_id_, id + 1);
}

std::uint64_t SemanticGraph::add_edge(NodeId source, NodeId target, std::string label,
                                      std::vector<KeyValue> attributes) {
  if (!has_node(source))
    throw StructuralError("edge references unknown source node " + std::to_string(source));
  if (!has_node(target))
    throw StructuralError("edge references unknown target node " + std::to_string(target));
  Edge e{source, target, std::move(label), std::move(attributes), next_edge_uid_++};
  edges_.push_back(std::move(e));
  return edges_.back().uid;
}

void SemanticGraph::delete_node(NodeId id) {
  std::erase_if(edges_, [&](const Edge& e) { return e.source == id || e.target == id; });
  std::erase_if(nodes_, [&](const Node& n) { return n.id == id; });
  tops.erase(id);
}

bool SemanticGraph::delete_edge(std::uint64_t uid) {
  auto n = std::erase_if(edges_, [&](const Edge& e) { return e.uid == uid; });
  return n > 0;
}

void SemanticGraph::shift_edges(NodeId from, NodeId to) {
  if (!has_node(from))
    throw StructuralError("shift references unknown node " + std::to_string(from));
  if (!has_node(to)) throw StructuralError("shift references unknown node " + std::to_string(to));
  for (auto& e : edges_) {
    bool between = (e.source == from && e.target == to) || (e.source == to && e.target == from);
    if (between) continue;
    if (e.source == from) e.source = to;
    if (e.target == from) e.target = to;
  }
  if (tops.erase(from) > 0) tops.insert(to);
}

void SemanticGraph::set_single_top(NodeId id) {
  if (!has_node(id))
    throw StructuralError("top references unknown node " + std::to_string(id));
  tops = {id};
}

bool operator==(const SemanticGraph& a, const SemanticGraph& b) {
  return a.id == b.id && a.framework == b.framework && a.flavor == b.flavor &&
         a.input_text == b.input_text && a.tops == b.tops && a.nodes_ == b.nodes_ &&
         a.edges_ == b.edges_;
}

std::vector<Violation> validate(const SemanticGraph& g) {
  std::vector<Violation> out;

  std::unordered_set<NodeId> ids;
  for (const auto& n : g.nodes()) ids.insert(n.id);

  for (const auto& e : g.edges()) {
    if (!ids.count(e.source) || !ids.count(e.target))
      out.push_back({Violation::Kind::DanglingEdge,
                     "edge " + std::to_string(e.source) + " -" + e.label + "-> " +
                         std::to_string(e.target) + " references a missing node"});
  }

  // Cycle check via iterative DFS coloring over the node set.
  std::unordered_map<NodeId, std::vector<NodeId>> succ;
  for (const auto& e : g.edges())
    if (ids.count(e.source) && ids.count(e.target)) succ[e.source].push_back(e.target);

  std::unordered_map<NodeId, int> color;  // 0 = white, 1 = gray, 2 = black
  bool cyclic = false;
  for (const auto& n : g.nodes()) {
    if (color[n.id] != 0) continue;
    std::vector<std::pair<NodeId, std::size_t>> stack{{n.id, 0}};
    color[n.id] = 1;
    while (!stack.empty() && !cyclic) {
      auto& [v, i] = stack.back();
      auto& next = succ[v];
      if (i < next.size()) {
        NodeId w = next[i++];
        if (color[w] == 1) {
          cyclic = true;
        } else if (color[w] == 0) {
          color[w] = 1;
          stack.push_back({w, 0});
        }
      } else {
        color[v] = 2;
        stack.pop_back();
      }
    }
    if (cyclic) break;
  }
  if (cyclic) out.push_back({Violation::Kind::Cycle, "graph contains a directed cycle"});

  if (g.tops.size() != 1)
    out.push_back({Violation::Kind::TopCount,
                   "expected exactly 1 top node, found " + std::to_string(g.tops.size())});

  // Reachability from the tops.
  std::unordered_set<NodeId> seen;
  std::vector<NodeId> frontier;
  for (NodeId t : g.tops)
    if (ids.count(t)) {
      seen.insert(t);
      frontier.push_back(t);
    }
  while (!frontier.empty()) {
    NodeId v = frontier.back();
    frontier.pop_back();
    for (NodeId w : succ[v])
      if (seen.insert(w).second) frontier.push_back(w);
  }
  for (const auto& n : g.nodes())
    if (!seen.count(n.id))
      out.push_back({Violation::Kind::Unreachable,
                     "node " + std::to_string(n.id) + " is not reachable from the top"});
  return out;
}

std::vector<std::string> extract_edge_labels(const SemanticGraph& g) {
  std::vector<std::string> labels;
  labels.reserve(g.edge_count());
  for (const auto& e : g.edges()) labels.push_back(e.label);
  std::sort(labels.begin(), labels.end());
  return labels;
}

}  // namespace mrew

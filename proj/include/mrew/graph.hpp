#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mrew {

// Scalar payload of node properties and edge attributes. MRP files mix JSON
// strings, numbers and booleans in the "values" arrays, so the original kind
// is kept to make serialization lossless.
struct Value {
  enum class Kind { String, Number, Boolean, Null };

  Kind kind = Kind::String;
  std::string text;  // canonical textual form ("-", "3", "true", ...)

  Value() = default;
  Value(const char* s) : kind(Kind::String), text(s) {}
  Value(std::string s) : kind(Kind::String), text(std::move(s)) {}
  Value(Kind k, std::string s) : kind(k), text(std::move(s)) {}

  static Value boolean(bool b) { return Value(Kind::Boolean, b ? "true" : "false"); }
  static Value number(const std::string& s) { return Value(Kind::Number, s); }

  friend bool operator==(const Value&, const Value&) = default;
  friend auto operator<=>(const Value&, const Value&) = default;
};

using KeyValue = std::pair<std::string, Value>;

// Character span [from, to) into the source sentence.
struct Anchor {
  int from = 0;
  int to = 0;

  friend bool operator==(const Anchor&, const Anchor&) = default;
  friend auto operator<=>(const Anchor&, const Anchor&) = default;
};

using NodeId = int;

struct Node {
  NodeId id = 0;
  std::optional<std::string> label;    // absent for UCCA internal nodes
  std::vector<KeyValue> properties;    // order preserved for round-trips
  std::vector<Anchor> anchors;         // empty for AMR

  bool has_property(const std::string& key) const;
  const Value* property(const std::string& key) const;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
  NodeId source = 0;
  NodeId target = 0;
  std::string label;
  std::vector<KeyValue> attributes;    // UCCA remotes carry ("remote", true)

  // Session-local identity; survives relabeling, never serialized and not
  // part of structural equality. Lets rule commands refer to one concrete
  // occurrence among parallel edges.
  std::uint64_t uid = 0;

  bool is_remote() const;

  friend bool operator==(const Edge& a, const Edge& b) {
    return a.source == b.source && a.target == b.target && a.label == b.label &&
           a.attributes == b.attributes;
  }
};

enum class Framework { Amr, Ucca, UccaLike };

std::string to_string(Framework f);
std::optional<Framework> framework_from_string(const std::string& s);

// A well-formedness violation reported by validate(). Violations are data,
// not errors: loading and rewriting tolerate ill-formed intermediates.
struct Violation {
  enum class Kind { DanglingEdge, Cycle, TopCount, Unreachable };
  Kind kind;
  std::string message;
};

class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Labeled directed multigraph with typed nodes, a top-node set and optional
// source text. Used for both AMR inputs and UCCA(-like) outputs.
//
// Graphs behave as regular values: all pipeline functions take const
// references and return fresh graphs, so copies can be shared freely across
// threads. The member mutators below are the building blocks those functions
// use on their local copies.
class SemanticGraph {
 public:
  std::string id;
  Framework framework = Framework::Amr;
  int flavor = 2;
  std::optional<std::string> input_text;
  std::set<NodeId> tops;

  SemanticGraph() = default;
  SemanticGraph(std::string graph_id, Framework fw) : id(std::move(graph_id)), framework(fw) {}

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_node(NodeId id) const;
  const Node* find_node(NodeId id) const;
  Node* find_node(NodeId id);
  const Edge* find_edge(std::uint64_t uid) const;
  Edge* find_edge(std::uint64_t uid);

  // Inserts a node under the next fresh id. Fresh ids are strictly
  // increasing for the lifetime of the value (deletion never frees an id),
  // so previously held ids stay unambiguous during a rewriting session.
  NodeId add_node(std::optional<std::string> label = std::nullopt,
                  std::vector<KeyValue> properties = {},
                  std::vector<Anchor> anchors = {});

  // Inserts a node with an explicit id (corpus loading). Throws
  // StructuralError on duplicate ids.
  void add_node_with_id(NodeId id, std::optional<std::string> label = std::nullopt,
                        std::vector<KeyValue> properties = {},
                        std::vector<Anchor> anchors = {});

  // Appends an edge; parallel edges with the same label are permitted.
  // Throws StructuralError when either endpoint does not exist.
  std::uint64_t add_edge(NodeId source, NodeId target, std::string label,
                         std::vector<KeyValue> attributes = {});

  // Removes the node and every incident edge. No-op on unknown ids.
  void delete_node(NodeId id);

  // Removes one concrete edge occurrence. Returns false if absent.
  bool delete_edge(std::uint64_t uid);

  // Redirects every edge incident to `from` (except edges running between
  // `from` and `to`) onto `to`, and transfers top status. Endpoints must
  // exist.
  void shift_edges(NodeId from, NodeId to);

  void set_single_top(NodeId id);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  // Structural equality on all serialized fields; ignores edge uids and
  // the fresh-id counter.
  friend bool operator==(const SemanticGraph& a, const SemanticGraph& b);

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  NodeId next_node_id_ = 0;
  std::uint64_t next_edge_uid_ = 1;
};

// Checks edge endpoints, acyclicity, |tops| == 1 and reachability from the
// top. Pure: never mutates the graph.
std::vector<Violation> validate(const SemanticGraph& g);

// Multiset of all edge labels, sorted.
std::vector<std::string> extract_edge_labels(const SemanticGraph& g);

}  // namespace mrew

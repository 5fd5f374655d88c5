#include "mrew/canonical.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace mrew {
namespace {

std::string key_values_key(const std::vector<KeyValue>& kvs) {
  std::vector<std::string> parts;
  parts.reserve(kvs.size());
  for (const auto& [k, v] : kvs)
    parts.push_back(k + "=" + std::to_string(static_cast<int>(v.kind)) + ":" + v.text);
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) out += p + ";";
  return out;
}

std::string node_invariant(const SemanticGraph& g, const Node& n) {
  std::ostringstream os;
  os << "L:" << (n.label ? *n.label : "\x01") << "|P:" << key_values_key(n.properties) << "|A:";
  std::vector<Anchor> anchors = n.anchors;
  std::sort(anchors.begin(), anchors.end());
  for (const auto& a : anchors) os << a.from << "-" << a.to << ",";
  os << "|T:" << (g.tops.count(n.id) ? 1 : 0);
  return os.str();
}

struct Refiner {
  const SemanticGraph& g;
  std::vector<NodeId> ids;                      // node ids in storage order
  std::unordered_map<NodeId, std::size_t> idx;  // id -> position in `ids`
  // adjacency as (neighbor position, edge signature) per direction
  std::vector<std::vector<std::pair<std::size_t, std::string>>> out_adj, in_adj;

  explicit Refiner(const SemanticGraph& graph) : g(graph) {
    ids.reserve(g.node_count());
    for (const auto& n : g.nodes()) {
      idx[n.id] = ids.size();
      ids.push_back(n.id);
    }
    out_adj.resize(ids.size());
    in_adj.resize(ids.size());
    for (const auto& e : g.edges()) {
      std::string sig = e.label + "#" + key_values_key(e.attributes);
      out_adj[idx.at(e.source)].push_back({idx.at(e.target), sig});
      in_adj[idx.at(e.target)].push_back({idx.at(e.source), sig});
    }
  }

  // One round of color refinement. Colors are small integers assigned in
  // sorted key order so they are identical for isomorphic graphs.
  static std::vector<int> assign(const std::vector<std::string>& keys) {
    std::map<std::string, int> order;
    for (const auto& k : keys) order.emplace(k, 0);
    int c = 0;
    for (auto& [k, v] : order) v = c++;
    std::vector<int> colors(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) colors[i] = order.at(keys[i]);
    return colors;
  }

  std::vector<int> refine(std::vector<int> colors) const {
    std::size_t n = ids.size();
    int classes = 0;
    for (int c : colors) classes = std::max(classes, c + 1);
    while (true) {
      std::vector<std::string> keys(n);
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::string> sig;
        sig.reserve(out_adj[i].size() + in_adj[i].size());
        for (const auto& [j, s] : out_adj[i])
          sig.push_back(">" + s + "@" + std::to_string(colors[j]));
        for (const auto& [j, s] : in_adj[i])
          sig.push_back("<" + s + "@" + std::to_string(colors[j]));
        std::sort(sig.begin(), sig.end());
        std::string key = std::to_string(colors[i]) + "!";
        for (const auto& s : sig) key += s + "|";
        keys[i] = std::move(key);
      }
      auto next = assign(keys);
      int next_classes = 0;
      for (int c : next) next_classes = std::max(next_classes, c + 1);
      if (next_classes == classes) return next;
      classes = next_classes;
      colors = std::move(next);
    }
  }

  // Encodes the graph under the node order induced by a discrete coloring.
  std::string encode(const std::vector<int>& colors) const {
    std::size_t n = ids.size();
    std::vector<std::size_t> pos(n);  // position -> canonical rank
    for (std::size_t i = 0; i < n; ++i) pos[i] = static_cast<std::size_t>(colors[i]);

    std::vector<std::string> node_parts(n);
    for (std::size_t i = 0; i < n; ++i)
      node_parts[pos[i]] = node_invariant(g, *g.find_node(ids[i]));

    std::vector<std::string> edge_parts;
    edge_parts.reserve(g.edge_count());
    for (const auto& e : g.edges()) {
      std::ostringstream os;
      os << pos[idx.at(e.source)] << ">" << pos[idx.at(e.target)] << ":" << e.label << "#"
         << key_values_key(e.attributes);
      edge_parts.push_back(os.str());
    }
    std::sort(edge_parts.begin(), edge_parts.end());

    std::string out = "n" + std::to_string(n) + ";";
    for (const auto& s : node_parts) out += "[" + s + "]";
    out += "/";
    for (const auto& s : edge_parts) out += "(" + s + ")";
    return out;
  }

  bool discrete(const std::vector<int>& colors) const {
    std::vector<char> seen(colors.size(), 0);
    for (int c : colors) {
      if (seen[c]) return false;
      seen[c] = 1;
    }
    return true;
  }

  // Individualization-refinement search for the minimal encoding.
  std::string canonical(std::vector<int> colors) const {
    colors = refine(std::move(colors));
    if (discrete(colors)) return encode(colors);

    // Pick the first color class with more than one member.
    int target = -1;
    {
      std::map<int, int> count;
      for (int c : colors) count[c]++;
      for (const auto& [c, k] : count)
        if (k > 1) {
          target = c;
          break;
        }
    }
    std::string best;
    int classes = 0;
    for (int c : colors) classes = std::max(classes, c + 1);
    for (std::size_t i = 0; i < colors.size(); ++i) {
      if (colors[i] != target) continue;
      auto branch = colors;
      branch[i] = classes;  // split this node into its own class
      std::string enc = canonical(std::move(branch));
      if (best.empty() || enc < best) best = std::move(enc);
    }
    return best;
  }
};

}  // namespace

std::string canonical_form(const SemanticGraph& g) {
  if (g.node_count() == 0) return "n0;/";
  Refiner r(g);
  std::vector<std::string> keys;
  keys.reserve(g.node_count());
  for (const auto& n : g.nodes()) keys.push_back(node_invariant(g, n));
  return r.canonical(Refiner::assign(keys));
}

}  // namespace mrew

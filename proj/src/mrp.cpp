#include "mrew/mrp.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace mrew {

using nlohmann::json;

namespace {

Value value_from_json(const json& j) {
  if (j.is_string()) return Value(j.get<std::string>());
  if (j.is_boolean()) return Value::boolean(j.get<bool>());
  if (j.is_null()) return Value(Value::Kind::Null, "null");
  if (j.is_number()) return Value::number(j.dump());
  // Arrays/objects do not occur in the sample; keep their dump as a string.
  return Value(j.dump());
}

json value_to_json(const Value& v) {
  switch (v.kind) {
    case Value::Kind::String: return json(v.text);
    case Value::Kind::Boolean: return json(v.text == "true");
    case Value::Kind::Null: return json(nullptr);
    case Value::Kind::Number: return json::parse(v.text);
  }
  return json(v.text);
}

std::vector<KeyValue> zip_pairs(const json& obj, const char* keys_field, const char* what) {
  std::vector<KeyValue> out;
  bool has_keys = obj.contains(keys_field);
  bool has_values = obj.contains("values");
  if (!has_keys && !has_values) return out;
  if (!has_keys || !has_values)
    throw MrpSchemaError(std::string(what) + " needs both \"" + keys_field + "\" and \"values\"",
                         has_keys ? "values" : keys_field);
  const json& keys = obj.at(keys_field);
  const json& values = obj.at("values");
  if (!keys.is_array() || !values.is_array() || keys.size() != values.size())
    throw MrpSchemaError(std::string(what) + " \"" + keys_field +
                             "\"/\"values\" must be equal-length arrays",
                         keys_field);
  for (std::size_t i = 0; i < keys.size(); ++i)
    out.emplace_back(keys[i].get<std::string>(), value_from_json(values[i]));
  return out;
}

std::string escape_dot(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

SemanticGraph parse_mrp(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw MrpParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
  if (!j.is_object()) throw MrpSchemaError("MRP line must be a JSON object", "");
  if (!j.contains("id")) throw MrpSchemaError("missing mandatory field", "id");
  if (!j.contains("nodes")) throw MrpSchemaError("missing mandatory field", "nodes");

  SemanticGraph g;
  g.id = j.at("id").is_string() ? j.at("id").get<std::string>() : j.at("id").dump();

  if (j.contains("framework")) {
    auto fw = framework_from_string(j.at("framework").get<std::string>());
    if (!fw)
      throw MrpSchemaError("unsupported framework \"" + j.at("framework").get<std::string>() + "\"",
                           "framework");
    g.framework = *fw;
  }
  g.flavor = j.value("flavor", g.framework == Framework::Amr ? 2 : 1);
  if (j.contains("input")) g.input_text = j.at("input").get<std::string>();

  for (const json& jn : j.at("nodes")) {
    if (!jn.contains("id")) throw MrpSchemaError("node missing mandatory field", "nodes[].id");
    std::optional<std::string> label;
    if (jn.contains("label")) label = jn.at("label").is_string() ? jn.at("label").get<std::string>()
                                                                 : jn.at("label").dump();
    std::vector<Anchor> anchors;
    if (jn.contains("anchors"))
      for (const json& ja : jn.at("anchors"))
        anchors.push_back({ja.at("from").get<int>(), ja.at("to").get<int>()});
    g.add_node_with_id(jn.at("id").get<int>(), std::move(label),
                       zip_pairs(jn, "properties", "node"), std::move(anchors));
  }

  if (j.contains("tops"))
    for (const json& jt : j.at("tops")) {
      int t = jt.get<int>();
      if (!g.has_node(t))
        throw MrpSchemaError("top references unknown node " + std::to_string(t), "tops");
      g.tops.insert(t);
    }

  if (j.contains("edges"))
    for (const json& je : j.at("edges")) {
      if (!je.contains("source") || !je.contains("target"))
        throw MrpSchemaError("edge missing endpoint", "edges[].source");
      g.add_edge(je.at("source").get<int>(), je.at("target").get<int>(),
                 je.value("label", std::string()), zip_pairs(je, "attributes", "edge"));
    }
  return g;
}

std::string write_mrp(const SemanticGraph& g) {
  json j;
  j["id"] = g.id;
  j["flavor"] = g.flavor;
  j["framework"] = to_string(g.framework);
  if (g.input_text) j["input"] = *g.input_text;
  j["tops"] = json::array();
  for (NodeId t : g.tops) j["tops"].push_back(t);

  j["nodes"] = json::array();
  for (const auto& n : g.nodes()) {
    json jn;
    jn["id"] = n.id;
    if (n.label) jn["label"] = *n.label;
    if (!n.properties.empty()) {
      json keys = json::array(), values = json::array();
      for (const auto& [k, v] : n.properties) {
        keys.push_back(k);
        values.push_back(value_to_json(v));
      }
      jn["properties"] = std::move(keys);
      jn["values"] = std::move(values);
    }
    if (!n.anchors.empty()) {
      json ja = json::array();
      for (const auto& a : n.anchors) ja.push_back({{"from", a.from}, {"to", a.to}});
      jn["anchors"] = std::move(ja);
    }
    j["nodes"].push_back(std::move(jn));
  }

  j["edges"] = json::array();
  for (const auto& e : g.edges()) {
    json je;
    je["source"] = e.source;
    je["target"] = e.target;
    je["label"] = e.label;
    if (!e.attributes.empty()) {
      json keys = json::array(), values = json::array();
      for (const auto& [k, v] : e.attributes) {
        keys.push_back(k);
        values.push_back(value_to_json(v));
      }
      je["attributes"] = std::move(keys);
      je["values"] = std::move(values);
    }
    j["edges"].push_back(std::move(je));
  }
  return j.dump();
}

std::string export_dot(const SemanticGraph& g, const DotHighlight& highlight) {
  std::ostringstream os;
  os << "digraph \"" << escape_dot(g.id) << "\" {\n";
  for (const auto& n : g.nodes()) {
    std::string label = std::to_string(n.id) + " / ";
    if (n.label) {
      label += *n.label;
    } else if (g.input_text && !n.anchors.empty()) {
      std::string text;
      for (const auto& a : n.anchors) {
        if (!text.empty()) text += " ";
        if (a.from >= 0 && a.to <= static_cast<int>(g.input_text->size()) && a.from < a.to)
          text += g.input_text->substr(a.from, a.to - a.from);
      }
      label += text;
    }
    for (const auto& [k, v] : n.properties) label += "\\n" + k + " " + v.text;
    os << "  n" << n.id << " [label=\"" << escape_dot(label) << "\"";
    if (g.tops.count(n.id)) os << ", shape=box";
    if (highlight.nodes.count(n.id)) os << ", color=\"forestgreen\", penwidth=2";
    os << "];\n";
  }
  for (const auto& e : g.edges()) {
    os << "  n" << e.source << " -> n" << e.target << " [label=\"" << escape_dot(e.label) << "\"";
    if (e.is_remote()) os << ", style=dashed";
    if (highlight.edge_uids.count(e.uid)) os << ", color=\"forestgreen\", penwidth=2";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::vector<SemanticGraph> load_corpus(const std::string& path, Framework expected) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus file: " + path);
  std::vector<SemanticGraph> out;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    SemanticGraph g;
    try {
      g = parse_mrp(line);
    } catch (const std::exception& e) {
      throw IoError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (g.framework != expected)
      throw MrpSchemaError(path + ":" + std::to_string(lineno) + ": expected framework " +
                               to_string(expected) + ", got " + to_string(g.framework),
                           "framework");
    if (!seen.insert(g.id).second)
      throw MrpSchemaError(path + ":" + std::to_string(lineno) + ": duplicate graph id " + g.id,
                           "id");
    out.push_back(std::move(g));
  }
  return out;
}

CorpusSplit make_split(const std::vector<SemanticGraph>& corpus, std::size_t n_train) {
  CorpusSplit split;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    (i < n_train ? split.train : split.test).push_back(corpus[i].id);
  return split;
}

std::vector<std::string> load_id_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open id list: " + path);
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    auto end = line.find_last_not_of(" \t\r");
    ids.push_back(line.substr(begin, end - begin + 1));
  }
  return ids;
}

}  // namespace mrew

#include "mrew/packs.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace mrew {

const std::set<std::string>& ucca_labels() {
  static const std::set<std::string> labels = {"A", "P", "C", "F", "T", "D", "U", "H",
                                               "Q", "E", "S", "L", "N", "R", "G"};
  return labels;
}

const std::vector<std::string>* RelationMapping::targets_for(const std::string& amr_label) const {
  for (const auto& [label, targets] : entries)
    if (label == amr_label) return &targets;
  return nullptr;
}

RelationMapping parse_mapping(const std::string& text) {
  RelationMapping mapping;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream row(line);
    std::string amr, ucca;
    if (!(row >> amr)) continue;
    if (!(row >> ucca))
      throw LexiconError("mapping line " + std::to_string(lineno) + ": expected two columns");
    std::string extra;
    if (row >> extra)
      throw LexiconError("mapping line " + std::to_string(lineno) + ": expected two columns");

    std::vector<std::string> targets;
    if (ucca.front() == '{' && ucca.back() == '}') {
      std::string inner = ucca.substr(1, ucca.size() - 2);
      std::size_t start = 0;
      while (start <= inner.size()) {
        auto comma = inner.find(',', start);
        targets.push_back(inner.substr(start, comma == std::string::npos ? comma : comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    } else {
      targets.push_back(ucca);
    }
    for (const auto& t : targets)
      if (!ucca_labels().count(t))
        throw LexiconError("mapping line " + std::to_string(lineno) + ": '" + t +
                           "' is not a UCCA label");
    if (mapping.targets_for(amr))
      throw LexiconError("mapping line " + std::to_string(lineno) + ": duplicate entry for '" +
                         amr + "'");
    mapping.entries.emplace_back(amr, std::move(targets));
  }
  return mapping;
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoErrorLike(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

PackSources load_pack_sources(const std::string& data_dir) {
  PackSources s;
  s.mapping = parse_mapping(slurp(data_dir + "/amr_ucca_map.tsv"));
  s.core_head = slurp(data_dir + "/packs/core_head.rules");
  s.core_tail = slurp(data_dir + "/packs/core_tail.rules");
  s.r2_structural = slurp(data_dir + "/packs/r2_structural.rules");

  // Resolve the lexicons the structural rules declare.
  RulePack probe = parse_rule_file(s.r2_structural);
  load_lexicons(probe, data_dir);
  s.lexicons = std::move(probe.lexicons);
  return s;
}

SemanticGraph extract_properties(const SemanticGraph& g, const std::set<std::string>& keys) {
  SemanticGraph out = g;
  std::vector<NodeId> ids;
  for (const auto& n : out.nodes()) ids.push_back(n.id);
  for (NodeId id : ids) {
    // Snapshot: the node pointer is invalidated by add_node below.
    std::vector<KeyValue> extracted;
    {
      Node* n = out.find_node(id);
      std::vector<KeyValue> kept;
      for (auto& kv : n->properties)
        (keys.count(kv.first) ? extracted : kept).push_back(std::move(kv));
      n->properties = std::move(kept);
    }
    for (const auto& [key, value] : extracted) {
      NodeId fresh = out.add_node(value.text);
      out.add_edge(id, fresh, key);
    }
  }
  return out;
}

std::set<std::string> default_property_keys(const SemanticGraph& g) {
  std::set<std::string> keys;
  for (const auto& n : g.nodes())
    for (const auto& [k, v] : n.properties)
      if (k != "wiki") keys.insert(k);
  return keys;
}

namespace {

std::string relabel_rule_text(const std::string& amr_label, const std::string& target) {
  std::ostringstream os;
  os << "rule " << amr_label << "_to_" << target << " {\n"
     << "    pattern {\n"
     << "        e: X -[" << (amr_label.find_first_of(" \t\"") == std::string::npos
                                  ? amr_label
                                  : "\"" + amr_label + "\"")
     << "]-> Y;\n"
     << "    }\n"
     << "    commands {\n"
     << "        del_edge e;\n"
     << "        add_edge X -[" << target << "]-> Y;\n"
     << "    }\n"
     << "}\n";
  return os.str();
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
  return out;
}

std::vector<std::string> rule_names_of(const std::string& pack_text) {
  std::vector<std::string> names;
  for (const auto& r : parse_rule_file(pack_text).rules) names.push_back(r.name);
  return names;
}

RulePack finish(const std::string& text, const PackSources& sources) {
  RulePack pack = parse_rule_file(text);
  for (const auto& [name, lex] : sources.lexicons) attach_lexicon(pack, lex);
  return pack;
}

}  // namespace

std::string build_r1_text(const PackSources& sources) {
  std::ostringstream os;
  os << sources.core_head << "\n";
  std::vector<std::string> relabels;
  for (const auto& [amr, targets] : sources.mapping.entries) {
    os << relabel_rule_text(amr, targets.front()) << "\n";
    relabels.push_back(amr + "_to_" + targets.front());
  }
  os << sources.core_tail << "\n";
  os << "strategy { seq(onf(push_root_down), iter(alt(" << join_names(relabels)
     << ")), iter(ensure_ucca_edges)) }\n";
  return os.str();
}

RulePack build_r1(const PackSources& sources) {
  return finish(build_r1_text(sources), sources);
}

std::string build_r2_text(const PackSources& sources) {
  std::ostringstream os;
  os << sources.core_head << "\n" << sources.r2_structural << "\n";

  std::vector<std::string> forked, relabels;
  for (const auto& [amr, targets] : sources.mapping.entries) {
    if (targets.size() > 1) {
      for (const auto& t : targets) {
        os << relabel_rule_text(amr, t) << "\n";
        forked.push_back(amr + "_to_" + t);
      }
    } else {
      os << relabel_rule_text(amr, targets.front()) << "\n";
      relabels.push_back(amr + "_to_" + targets.front());
    }
  }
  os << sources.core_tail << "\n";

  std::vector<std::string> structural = rule_names_of(sources.r2_structural);
  os << "strategy { seq(onf(push_root_down), iter(alt(" << join_names(structural) << "))";
  if (!forked.empty()) os << ", allnf(alt(" << join_names(forked) << "))";
  os << ", iter(alt(" << join_names(relabels) << ")), iter(ensure_ucca_edges)) }\n";
  return os.str();
}

RulePack build_r2(const PackSources& sources) {
  return finish(build_r2_text(sources), sources);
}

bool check_backoff_totality(const SemanticGraph& g) {
  for (const auto& e : g.edges())
    if (!ucca_labels().count(e.label)) return false;
  return true;
}

}  // namespace mrew

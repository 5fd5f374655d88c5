#pragma once

#include <set>
#include <string>
#include <vector>

#include "mrew/graph.hpp"
#include "mrew/rules.hpp"

namespace mrew {

// Closed output vocabulary of edge labels (UCCA foundational layer plus Q).
const std::set<std::string>& ucca_labels();

// AMR relation -> UCCA label(s). Entries with several targets are ambiguous:
// the deterministic pack uses the first target, the extended pack forks one
// rule per target under a non-deterministic strategy.
struct RelationMapping {
  std::vector<std::pair<std::string, std::vector<std::string>>> entries;
  std::string default_label = "A";

  const std::vector<std::string>* targets_for(const std::string& amr_label) const;
};

// Two-column text: "<amr-label> <ucca-label>" or "<amr-label> {L1,L2}".
// Tab- or space-separated; "#" comments. Throws LexiconError on malformed
// rows or on targets outside the UCCA vocabulary.
RelationMapping parse_mapping(const std::string& text);

// Everything the pack builders read from the data directory.
struct PackSources {
  RelationMapping mapping;
  std::string core_head;       // push_root_down
  std::string core_tail;       // ensure_ucca_edges back-off
  std::string r2_structural;   // conjunction / dates / roles / scenes
  std::map<std::string, Lexicon> lexicons;
};

// Loads mapping, core rule texts and lexicons from `data_dir` (the layout
// shipped under data/ in this repository).
PackSources load_pack_sources(const std::string& data_dir);

// Turns node properties into explicit structure: each (key, value) with key
// in `keys` is removed from its node and replaced by a fresh node labeled
// with the value plus an edge labeled with the key. Fresh ids are allocated
// in node-storage order, consecutively per node.
SemanticGraph extract_properties(const SemanticGraph& g, const std::set<std::string>& keys);

// Property keys the conversion pipeline extracts by default: every key
// present in the graph except "wiki" (wiki links have no structural
// counterpart in the target representation).
std::set<std::string> default_property_keys(const SemanticGraph& g);

inline SemanticGraph preprocess_amr(const SemanticGraph& g) {
  return extract_properties(g, default_property_keys(g));
}

// Deterministic baseline pack: root wrapper, one relabel rule per mapping
// entry (first target), back-off to A.
RulePack build_r1(const PackSources& sources);
std::string build_r1_text(const PackSources& sources);

// Extended pack: structural rules (coordination, date entities,
// organizational roles, agentive nouns via lexicon, scene formation), a
// non-deterministic fork over ambiguous mapping entries, then the
// deterministic relabels and back-off.
RulePack build_r2(const PackSources& sources);
std::string build_r2_text(const PackSources& sources);

// True iff every edge label of `g` is inside the UCCA vocabulary (the
// precondition for downstream scoring).
bool check_backoff_totality(const SemanticGraph& g);

}  // namespace mrew

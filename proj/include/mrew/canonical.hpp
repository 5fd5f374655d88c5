#pragma once

#include <string>

#include "mrew/graph.hpp"

namespace mrew {

// Canonical text encoding of a graph's structure: node labels, properties,
// anchors, top markers, and the full labeled/attributed edge multiset, but
// independent of concrete node-id values (and of graph id / input text).
// Two graphs get the same encoding iff they are isomorphic under a node
// bijection preserving all of the above. Used to deduplicate rewrite
// outputs and to compare expected against produced structures in tests.
std::string canonical_form(const SemanticGraph& g);

inline bool canonically_equal(const SemanticGraph& a, const SemanticGraph& b) {
  return canonical_form(a) == canonical_form(b);
}

}  // namespace mrew

#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrew/graph.hpp"

namespace mrew {

class MrpParseError : public std::runtime_error {
 public:
  MrpParseError(const std::string& msg, std::size_t byte_offset)
      : std::runtime_error(msg + " (at byte " + std::to_string(byte_offset) + ")"),
        byte_offset(byte_offset) {}
  std::size_t byte_offset;
};

class MrpSchemaError : public std::runtime_error {
 public:
  MrpSchemaError(const std::string& msg, std::string field)
      : std::runtime_error(msg + " (field \"" + field + "\")"), field(std::move(field)) {}
  std::string field;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses one MRP JSON-line object. Parallel "properties"/"values" arrays on
// nodes (and "attributes"/"values" on edges) are zipped into key-value pairs.
SemanticGraph parse_mrp(const std::string& line);

// Serializes back to one MRP JSON line; parse_mrp(write_mrp(g)) == g on all
// retained fields (id, flavor, framework, input, tops, nodes, edges).
std::string write_mrp(const SemanticGraph& g);

// Elements to color in DOT output (matched-subgraph figures).
struct DotHighlight {
  std::set<NodeId> nodes;
  std::set<std::uint64_t> edge_uids;
};

// GraphViz export. Node boxes show "id / label"; unlabeled UCCA nodes get a
// display label recovered from their anchors when input text is available
// (display only, never used for scoring). Remote edges are dashed.
std::string export_dot(const SemanticGraph& g, const DotHighlight& highlight = {});

// Loads a JSON-lines corpus file in order. Throws IoError on unreadable
// paths, MrpSchemaError on duplicate graph ids or on a graph whose framework
// differs from `expected`.
std::vector<SemanticGraph> load_corpus(const std::string& path, Framework expected);

// Positional train/test split ("the first n_train graphs").
struct CorpusSplit {
  std::vector<std::string> train;
  std::vector<std::string> test;
};

CorpusSplit make_split(const std::vector<SemanticGraph>& corpus, std::size_t n_train = 17);

// One graph id per line; "#" comments and blank lines ignored.
std::vector<std::string> load_id_list(const std::string& path);

}  // namespace mrew

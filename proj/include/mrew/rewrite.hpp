#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrew/graph.hpp"
#include "mrew/rules.hpp"

namespace mrew {

// An injective binding of pattern variables into one graph.
struct Match {
  std::map<std::string, NodeId> node_binding;
  std::map<std::string, std::uint64_t> edge_binding;  // named edge vars
  std::vector<std::uint64_t> edge_uids;               // one per pattern edge clause
  std::map<std::string, int> lexicon_binding;         // lexicon name -> row index
};

struct RewriteResult {
  std::vector<SemanticGraph> outputs;  // deduplicated, discovery order; never empty
  std::size_t steps_taken = 0;
  bool truncated = false;
};

class RuleApplicationError : public std::runtime_error {
 public:
  RuleApplicationError(const std::string& rule, std::size_t command_index, const std::string& what)
      : std::runtime_error("rule '" + rule + "', command #" + std::to_string(command_index) +
                           ": " + what),
        rule(rule),
        command_index(command_index) {}
  std::string rule;
  std::size_t command_index;
};

// All injective bindings of `p` in `g` satisfying label, property, top and
// without constraints, in deterministic order (lexicographic on bound node
// ids, then edge occurrences, then lexicon rows). Patterns referencing
// lexicons produce one match per consistent lexicon row.
std::vector<Match> find_matches(const Pattern& p, const SemanticGraph& g,
                                const std::map<std::string, Lexicon>& lexicons = {});

// Executes the rule's commands on a copy of `g` under binding `m`. Fresh
// nodes receive the next available ids; deleting a node drops its incident
// edges. Throws RuleApplicationError when a command references an element
// deleted by an earlier command.
SemanticGraph apply_commands(const Rule& r, const Match& m, const SemanticGraph& g,
                             const std::map<std::string, Lexicon>& lexicons = {});

constexpr std::size_t kDefaultStepBudget = 10000;

// Runs a strategy over the graph. iter commits to the first result of each
// pass until the child no longer applies; allnf explores every alternative
// and collects all distinct normal forms; alt unions child results; onf
// applies its child at most once (keeping the input when it fails); seq
// pipes every intermediate output through the next child. Outputs are
// deduplicated up to node-id-insensitive isomorphism. The step budget bounds
// the total number of rule applications; exhausting it sets `truncated`.
RewriteResult run_strategy(const Strategy& s, const RulePack& pack, const SemanticGraph& g,
                           std::size_t budget = kDefaultStepBudget);

inline RewriteResult run_pack(const RulePack& pack, const SemanticGraph& g,
                              std::size_t budget = kDefaultStepBudget) {
  return run_strategy(pack.strategy, pack, g, budget);
}

// First rule (in strategy order) that matches `g`, with its first match.
// Drives the --trace rendering of matched subgraphs.
std::optional<std::pair<std::string, Match>> trace_first_match(const RulePack& pack,
                                                               const SemanticGraph& g);

}  // namespace mrew

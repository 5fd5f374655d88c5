#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mrew {

// ---------------------------------------------------------------------------
// Rule DSL abstract syntax
//
// Textual form (one or more blocks):
//
//   lexicon agentive "lexicons/agentive.tsv"
//
//   rule time_to_T {
//       pattern {
//           e: X -[time]-> Y;
//       }
//       commands {
//           del_edge e;
//           add_edge X -[T]-> Y;
//       }
//   }
//
//   strategy { seq(onf(push_root_down), iter(time_to_T)) }
//
// See docs/rule-dsl.md for the authoring guide.
// ---------------------------------------------------------------------------

// A label position: a literal, a reference to one column of a lexicon row
// (all references to the same lexicon inside a rule bind one row), or a
// wildcard (any label, for node clauses: label must be present).
struct LexRef {
  std::string lexicon;
  bool value_column = false;  // false -> key column
  friend bool operator==(const LexRef&, const LexRef&) = default;
};
struct Wildcard {
  friend bool operator==(const Wildcard&, const Wildcard&) = default;
};
using LabelTerm = std::variant<std::string, LexRef, Wildcard>;

// Edge label constraint: one of a set of terms, or the complement of the set
// when negated ("-[^A|P]->" matches any label other than A and P; a negated
// empty set matches every label).
struct EdgeLabelConstraint {
  bool negated = false;
  std::vector<LabelTerm> alternatives;
};

struct PropertyConstraint {
  std::string key;
  std::optional<std::string> value;  // nullopt: key merely present
};

struct NodeClause {
  std::string var;
  std::optional<LabelTerm> label;  // constraint on the node label
  std::vector<PropertyConstraint> properties;
  bool require_top = false;
};

struct EdgeClause {
  std::optional<std::string> edge_var;
  std::string source_var;
  EdgeLabelConstraint label;
  std::string target_var;
};

struct Pattern {
  std::vector<NodeClause> nodes;
  std::vector<EdgeClause> edges;
  std::vector<Pattern> without;  // no match may extend the binding into these
  std::vector<std::string> var_order;  // node vars in first-occurrence order
};

namespace cmd {
struct DelEdge { std::string edge_var; };
struct AddEdge { std::string source_var; LabelTerm label; std::string target_var; };
struct DelNode { std::string var; };
struct AddNode { std::string var; std::optional<LabelTerm> label; };
struct RelabelEdge { std::string edge_var; LabelTerm label; };
struct RelabelNode { std::string var; LabelTerm label; };
struct Shift { std::string from_var; std::string to_var; };
struct SetTop { std::string var; };
}  // namespace cmd

using Command = std::variant<cmd::DelEdge, cmd::AddEdge, cmd::DelNode, cmd::AddNode,
                             cmd::RelabelEdge, cmd::RelabelNode, cmd::Shift, cmd::SetTop>;

struct Rule {
  std::string name;
  Pattern pattern;
  std::vector<Command> commands;
};

struct Strategy {
  enum class Kind { RuleRef, Seq, Iter, Onf, Alt, AllNf };
  Kind kind = Kind::RuleRef;
  std::string rule_name;           // RuleRef only
  std::vector<Strategy> children;  // combinators only

  static Strategy ref(std::string name) {
    Strategy s;
    s.kind = Kind::RuleRef;
    s.rule_name = std::move(name);
    return s;
  }
  static Strategy combine(Kind k, std::vector<Strategy> children) {
    Strategy s;
    s.kind = k;
    s.children = std::move(children);
    return s;
  }
};

struct Lexicon {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;  // unique keys

  const std::string* value_for(const std::string& key) const;
};

struct LexiconRef {
  std::string name;
  std::string path;  // as written in the rule file
};

struct RulePack {
  std::vector<Rule> rules;
  Strategy strategy;
  std::vector<LexiconRef> lexicon_refs;
  std::map<std::string, Lexicon> lexicons;  // resolved by the loader

  const Rule* find_rule(const std::string& name) const;
};

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

class RuleSyntaxError : public std::runtime_error {
 public:
  RuleSyntaxError(const std::string& msg, int line, int column)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ")"),
        line(line),
        column(column) {}
  int line;
  int column;
};

class LexiconError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses a rule pack. When no strategy block is present the strategy
// defaults to seq(iter(r1), iter(r2), ...) in file order. Lexicons are left
// unresolved; callers attach them (attach_lexicon / load from disk).
RulePack parse_rule_file(const std::string& text);

// Two-column, tab- or comma-separated; "#" comments and blank lines ignored.
Lexicon parse_lexicon(const std::string& name, const std::string& text);

void attach_lexicon(RulePack& pack, Lexicon lexicon);

// Resolves every lexicon_ref relative to `base_dir` and attaches it.
void load_lexicons(RulePack& pack, const std::string& base_dir);

// Pretty-prints a pack back to DSL text; parse(print(parse(x))) == parse(x).
std::string print_pack(const RulePack& pack);
std::string print_rule(const Rule& rule);
std::string print_strategy(const Strategy& s);

// FNV-1a hash of the printed pack, for report traceability.
std::string pack_content_hash(const RulePack& pack);

}  // namespace mrew

#include "mrew/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

#include "mrew/canonical.hpp"

namespace mrew {
namespace {

// Candidate lexicon rows still consistent with the partial binding.
using LexCandidates = std::map<std::string, std::vector<int>>;

struct MatchState {
  std::map<std::string, NodeId> nodes;
  std::vector<std::uint64_t> edge_uids;  // aligned with pattern edge clauses
  std::map<std::string, std::uint64_t> named_edges;
  LexCandidates lex;
};

class Matcher {
 public:
  Matcher(const SemanticGraph& g, const std::map<std::string, Lexicon>& lexicons)
      : g_(g), lexicons_(lexicons) {}

  std::vector<Match> all(const Pattern& p) {
    MatchState init;
    init.lex = initial_candidates(p);
    std::vector<MatchState> states = bind_pattern(p, init);

    std::vector<Match> out;
    for (auto& st : states) {
      if (!without_ok(p, st)) continue;
      // One match per surviving combination of lexicon rows.
      emit_rows(p, st, out);
    }
    std::sort(out.begin(), out.end(), [&](const Match& a, const Match& b) {
      auto key = [&](const Match& m) {
        std::vector<long long> k;
        for (const auto& v : p.var_order) k.push_back(m.node_binding.at(v));
        for (auto u : m.edge_uids) k.push_back(static_cast<long long>(u));
        for (const auto& [name, row] : m.lexicon_binding) k.push_back(row);
        return k;
      };
      return key(a) < key(b);
    });
    return out;
  }

  // Is there any injective extension of `outer` into sub-pattern `p`?
  bool extends(const Pattern& p, const MatchState& outer) {
    return !bind_pattern(p, outer, /*first_only=*/true).empty();
  }

 private:
  LexCandidates initial_candidates(const Pattern& p) const {
    LexCandidates lex;
    auto note = [&](const LabelTerm& t) {
      if (const auto* r = std::get_if<LexRef>(&t)) {
        auto it = lexicons_.find(r->lexicon);
        if (it == lexicons_.end())
          throw StructuralError("pattern references unloaded lexicon '" + r->lexicon + "'");
        auto& rows = lex[r->lexicon];
        if (rows.empty())
          for (int i = 0; i < static_cast<int>(it->second.entries.size()); ++i) rows.push_back(i);
      }
    };
    for (const auto& n : p.nodes)
      if (n.label) note(*n.label);
    for (const auto& e : p.edges)
      for (const auto& a : e.label.alternatives) note(a);
    return lex;
  }

  // Narrows candidate rows of `ref`'s lexicon to those whose column equals
  // `label`. Returns false when no row survives.
  static bool narrow(LexCandidates& lex, const Lexicon& lexicon, const LexRef& ref,
                     const std::string& label) {
    auto& rows = lex[ref.lexicon];
    std::vector<int> kept;
    for (int i : rows) {
      const auto& row = lexicon.entries[static_cast<std::size_t>(i)];
      if ((ref.value_column ? row.second : row.first) == label) kept.push_back(i);
    }
    rows = std::move(kept);
    return !rows.empty();
  }

  bool label_term_matches(const LabelTerm& t, const std::string& label, LexCandidates& lex) const {
    if (const auto* s = std::get_if<std::string>(&t)) return *s == label;
    if (std::get_if<Wildcard>(&t)) return true;
    const auto& ref = std::get<LexRef>(t);
    return narrow(lex, lexicons_.at(ref.lexicon), ref, label);
  }

  bool node_satisfies(const NodeClause& c, const Node& n, LexCandidates& lex) const {
    if (c.require_top && !g_.tops.count(n.id)) return false;
    if (c.label) {
      if (!n.label) return false;
      if (!label_term_matches(*c.label, *n.label, lex)) return false;
    }
    for (const auto& pc : c.properties) {
      const Value* v = n.property(pc.key);
      if (!v) return false;
      if (pc.value && v->text != *pc.value) return false;
    }
    return true;
  }

  bool edge_label_satisfies(const EdgeLabelConstraint& c, const std::string& label,
                            LexCandidates& lex) const {
    if (c.negated) {
      // Complement match: the label must equal none of the alternatives.
      // Lexicon refs inside a negated set are not supported (unused).
      for (const auto& a : c.alternatives)
        if (const auto* s = std::get_if<std::string>(&a); s && *s == label) return false;
      return true;
    }
    for (const auto& a : c.alternatives) {
      LexCandidates scratch = lex;
      if (label_term_matches(a, label, scratch)) {
        lex = std::move(scratch);
        return true;
      }
    }
    return false;
  }

  bool node_bound(const MatchState& st, NodeId id) const {
    for (const auto& [v, b] : st.nodes)
      if (b == id) return true;
    return false;
  }

  // Depth-first enumeration over node clauses, then edge clauses.
  std::vector<MatchState> bind_pattern(const Pattern& p, const MatchState& init,
                                       bool first_only = false) {
    std::vector<MatchState> done;
    bind_nodes(p, 0, init, done, first_only);
    return done;
  }

  void bind_nodes(const Pattern& p, std::size_t i, MatchState st, std::vector<MatchState>& done,
                  bool first_only) {
    if (first_only && !done.empty()) return;
    if (i == p.nodes.size()) {
      bind_edges(p, 0, std::move(st), done, first_only);
      return;
    }
    const NodeClause& c = p.nodes[i];
    auto bound = st.nodes.find(c.var);
    if (bound != st.nodes.end()) {
      const Node* n = g_.find_node(bound->second);
      MatchState next = st;
      if (n && node_satisfies(c, *n, next.lex)) bind_nodes(p, i + 1, std::move(next), done, first_only);
      return;
    }
    for (const auto& n : g_.nodes()) {
      if (node_bound(st, n.id)) continue;  // injectivity
      MatchState next = st;
      if (!node_satisfies(c, n, next.lex)) continue;
      next.nodes[c.var] = n.id;
      bind_nodes(p, i + 1, std::move(next), done, first_only);
      if (first_only && !done.empty()) return;
    }
  }

  void bind_edges(const Pattern& p, std::size_t i, MatchState st, std::vector<MatchState>& done,
                  bool first_only) {
    if (first_only && !done.empty()) return;
    if (i == p.edges.size()) {
      done.push_back(std::move(st));
      return;
    }
    const EdgeClause& c = p.edges[i];
    auto src = st.nodes.find(c.source_var);
    auto tgt = st.nodes.find(c.target_var);
    for (const auto& e : g_.edges()) {
      if (std::find(st.edge_uids.begin(), st.edge_uids.end(), e.uid) != st.edge_uids.end())
        continue;  // edge occurrences bind injectively
      if (src != st.nodes.end() && e.source != src->second) continue;
      if (tgt != st.nodes.end() && e.target != tgt->second) continue;
      // Implicitly declared endpoint vars still bind injectively.
      if (src == st.nodes.end() && node_bound(st, e.source)) continue;
      if (tgt == st.nodes.end() &&
          (node_bound(st, e.target) || (src == st.nodes.end() && e.target == e.source &&
                                        c.source_var != c.target_var)))
        continue;
      if (src == st.nodes.end() && tgt == st.nodes.end() && c.source_var == c.target_var &&
          e.source != e.target)
        continue;

      MatchState next = st;
      if (!edge_label_satisfies(c.label, e.label, next.lex)) continue;
      next.nodes[c.source_var] = e.source;
      next.nodes[c.target_var] = e.target;
      next.edge_uids.push_back(e.uid);
      if (c.edge_var) next.named_edges[*c.edge_var] = e.uid;
      bind_edges(p, i + 1, std::move(next), done, first_only);
      if (first_only && !done.empty()) return;
    }
  }

  bool without_ok(const Pattern& p, const MatchState& st) {
    for (const auto& w : p.without)
      if (extends(w, st)) return false;
    return true;
  }

  // Expands remaining lexicon row candidates into concrete matches.
  void emit_rows(const Pattern& p, const MatchState& st, std::vector<Match>& out) const {
    std::vector<std::pair<std::string, std::vector<int>>> lex(st.lex.begin(), st.lex.end());
    std::vector<int> pick(lex.size(), 0);
    while (true) {
      Match m;
      m.node_binding = st.nodes;
      m.edge_uids = st.edge_uids;
      m.edge_binding = st.named_edges;
      bool ok = true;
      for (std::size_t i = 0; i < lex.size(); ++i) {
        if (lex[i].second.empty()) {
          ok = false;
          break;
        }
        m.lexicon_binding[lex[i].first] = lex[i].second[static_cast<std::size_t>(pick[i])];
      }
      if (!ok) return;
      out.push_back(std::move(m));
      // Advance the row selector.
      std::size_t i = 0;
      for (; i < lex.size(); ++i) {
        if (++pick[i] < static_cast<int>(lex[i].second.size())) break;
        pick[i] = 0;
      }
      if (i == lex.size()) return;
      (void)p;
    }
  }

  const SemanticGraph& g_;
  const std::map<std::string, Lexicon>& lexicons_;
};

std::string resolve_label(const LabelTerm& t, const Match& m,
                          const std::map<std::string, Lexicon>& lexicons, const std::string& rule,
                          std::size_t ci) {
  if (const auto* s = std::get_if<std::string>(&t)) return *s;
  if (const auto* r = std::get_if<LexRef>(&t)) {
    auto row = m.lexicon_binding.find(r->lexicon);
    auto lx = lexicons.find(r->lexicon);
    if (row == m.lexicon_binding.end() || lx == lexicons.end())
      throw RuleApplicationError(rule, ci, "no lexicon row bound for '" + r->lexicon + "'");
    const auto& entry = lx->second.entries[static_cast<std::size_t>(row->second)];
    return r->value_column ? entry.second : entry.first;
  }
  throw RuleApplicationError(rule, ci, "wildcard label cannot be used in a command");
}

}  // namespace

std::vector<Match> find_matches(const Pattern& p, const SemanticGraph& g,
                                const std::map<std::string, Lexicon>& lexicons) {
  return Matcher(g, lexicons).all(p);
}

SemanticGraph apply_commands(const Rule& r, const Match& m, const SemanticGraph& g,
                             const std::map<std::string, Lexicon>& lexicons) {
  SemanticGraph out = g;
  std::map<std::string, NodeId> vars = m.node_binding;

  auto node_of = [&](const std::string& v, std::size_t ci) -> NodeId {
    auto it = vars.find(v);
    if (it == vars.end()) throw RuleApplicationError(r.name, ci, "unbound variable '" + v + "'");
    if (!out.has_node(it->second))
      throw RuleApplicationError(r.name, ci,
                                 "node '" + v + "' was deleted by an earlier command");
    return it->second;
  };
  auto edge_of = [&](const std::string& v, std::size_t ci) -> Edge* {
    auto it = m.edge_binding.find(v);
    if (it == m.edge_binding.end())
      throw RuleApplicationError(r.name, ci, "unbound edge variable '" + v + "'");
    Edge* e = out.find_edge(it->second);
    if (!e)
      throw RuleApplicationError(r.name, ci,
                                 "edge '" + v + "' was deleted by an earlier command");
    return e;
  };

  for (std::size_t ci = 0; ci < r.commands.size(); ++ci) {
    const Command& c = r.commands[ci];
    std::visit(
        [&](const auto& cc) {
          using T = std::decay_t<decltype(cc)>;
          if constexpr (std::is_same_v<T, cmd::DelEdge>) {
            out.delete_edge(edge_of(cc.edge_var, ci)->uid);
          } else if constexpr (std::is_same_v<T, cmd::AddEdge>) {
            out.add_edge(node_of(cc.source_var, ci), node_of(cc.target_var, ci),
                         resolve_label(cc.label, m, lexicons, r.name, ci));
          } else if constexpr (std::is_same_v<T, cmd::DelNode>) {
            out.delete_node(node_of(cc.var, ci));
          } else if constexpr (std::is_same_v<T, cmd::AddNode>) {
            std::optional<std::string> label;
            if (cc.label) label = resolve_label(*cc.label, m, lexicons, r.name, ci);
            vars[cc.var] = out.add_node(std::move(label));
          } else if constexpr (std::is_same_v<T, cmd::RelabelEdge>) {
            edge_of(cc.edge_var, ci)->label = resolve_label(cc.label, m, lexicons, r.name, ci);
          } else if constexpr (std::is_same_v<T, cmd::RelabelNode>) {
            out.find_node(node_of(cc.var, ci))->label =
                resolve_label(cc.label, m, lexicons, r.name, ci);
          } else if constexpr (std::is_same_v<T, cmd::Shift>) {
            out.shift_edges(node_of(cc.from_var, ci), node_of(cc.to_var, ci));
          } else if constexpr (std::is_same_v<T, cmd::SetTop>) {
            out.set_single_top(node_of(cc.var, ci));
          }
        },
        c);
  }
  return out;
}

namespace {

class StrategyRunner {
 public:
  StrategyRunner(const RulePack& pack, std::size_t budget) : pack_(pack), budget_(budget) {}

  std::vector<SemanticGraph> eval(const Strategy& s, const SemanticGraph& g) {
    switch (s.kind) {
      case Strategy::Kind::RuleRef: return apply_rule(s.rule_name, g);
      case Strategy::Kind::Seq: {
        std::vector<SemanticGraph> frontier{g};
        for (const auto& child : s.children) {
          std::vector<SemanticGraph> next;
          for (const auto& cur : frontier) {
            auto r = eval(child, cur);
            next.insert(next.end(), std::make_move_iterator(r.begin()),
                        std::make_move_iterator(r.end()));
          }
          frontier = dedup(std::move(next));
          if (frontier.empty()) return {};
        }
        return frontier;
      }
      case Strategy::Kind::Alt: {
        std::vector<SemanticGraph> all;
        for (const auto& child : s.children) {
          auto r = eval(child, g);
          all.insert(all.end(), std::make_move_iterator(r.begin()),
                     std::make_move_iterator(r.end()));
        }
        return dedup(std::move(all));
      }
      case Strategy::Kind::Onf: {
        auto r = eval(s.children.at(0), g);
        if (r.empty()) r.push_back(g);
        return r;
      }
      case Strategy::Kind::Iter: {
        SemanticGraph cur = g;
        while (!exhausted()) {
          auto r = eval(s.children.at(0), cur);
          if (r.empty()) break;
          cur = std::move(r.front());
        }
        return {std::move(cur)};
      }
      case Strategy::Kind::AllNf: {
        std::vector<SemanticGraph> normal_forms;
        std::unordered_set<std::string> seen;
        std::deque<SemanticGraph> work{g};
        seen.insert(canonical_form(g));
        while (!work.empty()) {
          if (exhausted()) {
            // Best effort under a blown budget: whatever is still queued
            // counts as an output so callers always get >= 1 graph.
            for (auto& w : work) normal_forms.push_back(std::move(w));
            break;
          }
          SemanticGraph cur = std::move(work.front());
          work.pop_front();
          auto r = eval(s.children.at(0), cur);
          if (r.empty()) {
            normal_forms.push_back(std::move(cur));
            continue;
          }
          for (auto& nxt : r)
            if (seen.insert(canonical_form(nxt)).second) work.push_back(std::move(nxt));
        }
        return normal_forms;
      }
    }
    return {};
  }

  std::size_t steps() const { return steps_; }
  bool truncated() const { return truncated_; }

 private:
  bool exhausted() {
    if (steps_ >= budget_) truncated_ = true;
    return truncated_;
  }

  std::vector<SemanticGraph> apply_rule(const std::string& name, const SemanticGraph& g) {
    const Rule* rule = pack_.find_rule(name);
    if (!rule) throw StructuralError("strategy references unknown rule '" + name + "'");
    auto matches = find_matches(rule->pattern, g, pack_.lexicons);
    std::vector<SemanticGraph> out;
    for (const auto& m : matches) {
      if (exhausted()) break;
      ++steps_;
      out.push_back(apply_commands(*rule, m, g, pack_.lexicons));
    }
    return dedup(std::move(out));
  }

  static std::vector<SemanticGraph> dedup(std::vector<SemanticGraph> graphs) {
    std::vector<SemanticGraph> out;
    std::unordered_set<std::string> seen;
    for (auto& g : graphs)
      if (seen.insert(canonical_form(g)).second) out.push_back(std::move(g));
    return out;
  }

  const RulePack& pack_;
  std::size_t budget_;
  std::size_t steps_ = 0;
  bool truncated_ = false;
};

}  // namespace

RewriteResult run_strategy(const Strategy& s, const RulePack& pack, const SemanticGraph& g,
                           std::size_t budget) {
  StrategyRunner runner(pack, budget);
  RewriteResult result;
  result.outputs = runner.eval(s, g);
  if (result.outputs.empty()) result.outputs.push_back(g);  // input is its own normal form
  result.steps_taken = runner.steps();
  result.truncated = runner.truncated();
  return result;
}

namespace {
const Strategy* first_ref_with_match(const Strategy& s, const RulePack& pack,
                                     const SemanticGraph& g) {
  if (s.kind == Strategy::Kind::RuleRef) {
    const Rule* rule = pack.find_rule(s.rule_name);
    if (rule && !find_matches(rule->pattern, g, pack.lexicons).empty()) return &s;
    return nullptr;
  }
  for (const auto& c : s.children)
    if (const Strategy* hit = first_ref_with_match(c, pack, g)) return hit;
  return nullptr;
}
}  // namespace

std::optional<std::pair<std::string, Match>> trace_first_match(const RulePack& pack,
                                                               const SemanticGraph& g) {
  const Strategy* ref = first_ref_with_match(pack.strategy, pack, g);
  if (!ref) return std::nullopt;
  const Rule* rule = pack.find_rule(ref->rule_name);
  auto matches = find_matches(rule->pattern, g, pack.lexicons);
  return std::make_pair(ref->rule_name, matches.front());
}

}  // namespace mrew

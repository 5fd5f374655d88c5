#include "mrew/rules.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace mrew {

const std::string* Lexicon::value_for(const std::string& key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return &v;
  return nullptr;
}

const Rule* RulePack::find_rule(const std::string& name) const {
  for (const auto& r : rules)
    if (r.name == name) return &r;
  return nullptr;
}

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok {
  Ident,
  String,
  LBrace, RBrace, LBracket, RBracket, LParen, RParen,
  Comma, Semi, Colon, Pipe, Caret, Equals, Star,
  ArrowOpen,   // -[
  ArrowClose,  // ]->
  ShiftArrow,  // ==>
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

bool ident_start(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_cont(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'; }

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_ws_and_comments();
      int line = line_, col = col_;
      if (eof()) {
        out.push_back({Tok::End, "", line, col});
        return out;
      }
      char c = peek();
      if (c == '"') {
        out.push_back({Tok::String, read_string(), line, col});
      } else if (ident_start(c)) {
        out.push_back({Tok::Ident, read_ident(), line, col});
      } else if (c == '-' && peek(1) == '[') {
        advance(2);
        out.push_back({Tok::ArrowOpen, "-[", line, col});
      } else if (c == ']' && peek(1) == '-' && peek(2) == '>') {
        advance(3);
        out.push_back({Tok::ArrowClose, "]->", line, col});
      } else if (c == '=' && peek(1) == '=' && peek(2) == '>') {
        advance(3);
        out.push_back({Tok::ShiftArrow, "==>", line, col});
      } else {
        Tok t;
        switch (c) {
          case '{': t = Tok::LBrace; break;
          case '}': t = Tok::RBrace; break;
          case '[': t = Tok::LBracket; break;
          case ']': t = Tok::RBracket; break;
          case '(': t = Tok::LParen; break;
          case ')': t = Tok::RParen; break;
          case ',': t = Tok::Comma; break;
          case ';': t = Tok::Semi; break;
          case ':': t = Tok::Colon; break;
          case '|': t = Tok::Pipe; break;
          case '^': t = Tok::Caret; break;
          case '=': t = Tok::Equals; break;
          case '*': t = Tok::Star; break;
          default:
            throw RuleSyntaxError(std::string("unexpected character '") + c + "'", line, col);
        }
        advance(1);
        out.push_back({t, std::string(1, c), line, col});
      }
    }
  }

 private:
  bool eof(std::size_t ahead = 0) const { return pos_ + ahead >= text_.size(); }
  char peek(std::size_t ahead = 0) const { return eof(ahead) ? '\0' : text_[pos_ + ahead]; }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && !eof(); ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_ws_and_comments() {
    while (!eof()) {
      char c = peek();
      if (c == '%') {
        while (!eof() && peek() != '\n') advance(1);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else {
        return;
      }
    }
  }

  std::string read_ident() {
    std::string s;
    s.push_back(peek());
    advance(1);
    while (!eof()) {
      char c = peek();
      if (ident_cont(c)) {
        s.push_back(c);
        advance(1);
      } else if (c == '-' && ident_start(peek(1)) && peek(1) != '\0') {
        // '-' continues an identifier (ARG0-of, date-entity) but "-[" starts
        // an edge arrow.
        s.push_back('-');
        advance(1);
      } else {
        break;
      }
    }
    return s;
  }

  std::string read_string() {
    int line = line_, col = col_;
    advance(1);  // opening quote
    std::string s;
    while (!eof()) {
      char c = peek();
      if (c == '"') {
        advance(1);
        return s;
      }
      if (c == '\\') {
        advance(1);
        if (eof()) break;
        char esc = peek();
        if (esc == 'n') s.push_back('\n');
        else if (esc == 't') s.push_back('\t');
        else s.push_back(esc);
        advance(1);
      } else {
        s.push_back(c);
        advance(1);
      }
    }
    throw RuleSyntaxError("unterminated string literal", line, col);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
 public:
  explicit Parser(const std::string& text) : tokens_(Lexer(text).run()) {}

  RulePack parse() {
    RulePack pack;
    std::optional<Strategy> strategy;
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (t.kind != Tok::Ident) fail("expected 'rule', 'strategy' or 'lexicon'", t);
      if (t.text == "rule") {
        pack.rules.push_back(parse_rule());
      } else if (t.text == "lexicon") {
        next();
        std::string name = expect_ident("lexicon name");
        const Token& p = expect(Tok::String, "lexicon path string");
        lexicon_names_.insert(name);
        pack.lexicon_refs.push_back({name, p.text});
      } else if (t.text == "strategy") {
        if (strategy) fail("duplicate strategy block", t);
        next();
        expect(Tok::LBrace, "'{'");
        strategy = parse_strategy();
        expect(Tok::RBrace, "'}'");
      } else {
        fail("expected 'rule', 'strategy' or 'lexicon', got '" + t.text + "'", t);
      }
    }

    std::set<std::string> names;
    for (const auto& r : pack.rules)
      if (!names.insert(r.name).second)
        throw RuleSyntaxError("duplicate rule name '" + r.name + "'", 0, 0);

    if (strategy) {
      pack.strategy = std::move(*strategy);
    } else {
      // Default: apply each rule exhaustively, in file order.
      std::vector<Strategy> blocks;
      for (const auto& r : pack.rules)
        blocks.push_back(Strategy::combine(Strategy::Kind::Iter, {Strategy::ref(r.name)}));
      pack.strategy = blocks.size() == 1
                          ? std::move(blocks.front())
                          : Strategy::combine(Strategy::Kind::Seq, std::move(blocks));
    }
    check_strategy(pack.strategy, names);
    return pack;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& next() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& msg, const Token& t) const {
    throw RuleSyntaxError(msg, t.line, t.column);
  }

  const Token& expect(Tok kind, const std::string& what) {
    const Token& t = next();
    if (t.kind != kind) fail("expected " + what + ", got '" + t.text + "'", t);
    return t;
  }

  std::string expect_ident(const std::string& what) {
    const Token& t = next();
    if (t.kind != Tok::Ident) fail("expected " + what + ", got '" + t.text + "'", t);
    return t.text;
  }

  // An identifier in label position: either a lexicon reference
  // ("name.key" / "name.value" for a declared lexicon) or a literal label.
  LabelTerm label_term_from_ident(const Token& t) const {
    auto dot = t.text.rfind('.');
    if (dot != std::string::npos) {
      std::string lex = t.text.substr(0, dot);
      std::string column = t.text.substr(dot + 1);
      if (lexicon_names_.count(lex)) {
        if (column != "key" && column != "value")
          fail("lexicon reference must end in .key or .value", t);
        return LexRef{lex, column == "value"};
      }
    }
    return t.text;
  }

  LabelTerm parse_label_term() {
    const Token& t = next();
    if (t.kind == Tok::String) return t.text;
    if (t.kind == Tok::Star) return Wildcard{};
    if (t.kind == Tok::Ident) return label_term_from_ident(t);
    fail("expected label, got '" + t.text + "'", t);
  }

  EdgeLabelConstraint parse_edge_label_spec() {
    EdgeLabelConstraint c;
    if (peek().kind == Tok::Caret) {
      next();
      c.negated = true;
      if (peek().kind == Tok::ArrowClose) return c;  // "^" alone: any label
    } else if (peek().kind == Tok::Star) {
      next();
      c.negated = true;  // "*": complement of the empty set
      return c;
    }
    c.alternatives.push_back(parse_label_term());
    while (peek().kind == Tok::Pipe) {
      next();
      c.alternatives.push_back(parse_label_term());
    }
    return c;
  }

  void parse_node_constraints(NodeClause& clause) {
    expect(Tok::LBracket, "'['");
    while (true) {
      const Token& t = next();
      if (t.kind != Tok::Ident) fail("expected constraint, got '" + t.text + "'", t);
      if (t.text == "top" && peek().kind != Tok::Equals) {
        clause.require_top = true;
      } else if (t.text == "label") {
        expect(Tok::Equals, "'='");
        clause.label = parse_label_term();
      } else {
        expect(Tok::Equals, "'='");
        const Token& v = next();
        if (v.kind == Tok::String)
          clause.properties.push_back({t.text, v.text});
        else if (v.kind == Tok::Star)
          clause.properties.push_back({t.text, std::nullopt});
        else
          fail("property constraint value must be a string or '*'", v);
      }
      if (peek().kind == Tok::Comma) {
        next();
        continue;
      }
      break;
    }
    expect(Tok::RBracket, "']'");
  }

  Pattern parse_clause_block() {
    Pattern p;
    expect(Tok::LBrace, "'{'");
    while (peek().kind != Tok::RBrace) {
      std::optional<std::string> edge_var;
      std::string first = expect_ident("variable");
      if (peek().kind == Tok::Colon) {
        next();
        edge_var = first;
        first = expect_ident("source variable");
      }
      if (peek().kind == Tok::ArrowOpen) {
        next();
        EdgeClause e;
        e.edge_var = edge_var;
        e.source_var = first;
        e.label = parse_edge_label_spec();
        expect(Tok::ArrowClose, "']->'");
        e.target_var = expect_ident("target variable");
        expect(Tok::Semi, "';'");
        p.edges.push_back(std::move(e));
      } else {
        if (edge_var) fail("edge variable prefix requires an edge clause", peek());
        NodeClause n;
        n.var = first;
        if (peek().kind == Tok::LBracket) parse_node_constraints(n);
        expect(Tok::Semi, "';'");
        p.nodes.push_back(std::move(n));
      }
    }
    expect(Tok::RBrace, "'}'");

    for (const auto& n : p.nodes) record_var(p, n.var);
    for (const auto& e : p.edges) {
      record_var(p, e.source_var);
      record_var(p, e.target_var);
    }
    return p;
  }

  static void record_var(Pattern& p, const std::string& v) {
    if (std::find(p.var_order.begin(), p.var_order.end(), v) == p.var_order.end())
      p.var_order.push_back(v);
  }

  Rule parse_rule() {
    next();  // 'rule'
    Rule rule;
    rule.name = expect_ident("rule name");
    expect(Tok::LBrace, "'{'");

    const Token& pat = next();
    if (pat.kind != Tok::Ident || pat.text != "pattern") fail("expected 'pattern' block", pat);
    rule.pattern = parse_clause_block();

    while (peek().kind == Tok::Ident && peek().text == "without") {
      next();
      rule.pattern.without.push_back(parse_clause_block());
    }

    const Token& cmds = next();
    if (cmds.kind != Tok::Ident || cmds.text != "commands") fail("expected 'commands' block", cmds);
    expect(Tok::LBrace, "'{'");
    while (peek().kind != Tok::RBrace) rule.commands.push_back(parse_command(rule));
    expect(Tok::RBrace, "'}'");
    expect(Tok::RBrace, "'}' closing the rule");

    validate_rule(rule);
    return rule;
  }

  Command parse_command(Rule& rule) {
    const Token& t = next();
    if (t.kind != Tok::Ident) fail("expected command, got '" + t.text + "'", t);
    Command out;
    if (t.text == "del_edge") {
      out = cmd::DelEdge{expect_ident("edge variable")};
    } else if (t.text == "add_edge") {
      cmd::AddEdge c;
      c.source_var = expect_ident("source variable");
      expect(Tok::ArrowOpen, "'-['");
      c.label = parse_label_term();
      expect(Tok::ArrowClose, "']->'");
      c.target_var = expect_ident("target variable");
      out = std::move(c);
    } else if (t.text == "del_node") {
      out = cmd::DelNode{expect_ident("node variable")};
    } else if (t.text == "add_node") {
      cmd::AddNode c;
      c.var = expect_ident("fresh variable");
      if (peek().kind == Tok::LBracket) {
        next();
        const Token& l = next();
        if (l.kind != Tok::Ident || l.text != "label") fail("expected 'label'", l);
        expect(Tok::Equals, "'='");
        c.label = parse_label_term();
        expect(Tok::RBracket, "']'");
      }
      out = std::move(c);
    } else if (t.text == "relabel_edge") {
      cmd::RelabelEdge c;
      c.edge_var = expect_ident("edge variable");
      c.label = parse_label_term();
      out = std::move(c);
    } else if (t.text == "relabel_node") {
      cmd::RelabelNode c;
      c.var = expect_ident("node variable");
      c.label = parse_label_term();
      out = std::move(c);
    } else if (t.text == "shift") {
      cmd::Shift c;
      c.from_var = expect_ident("source variable");
      expect(Tok::ShiftArrow, "'==>'");
      c.to_var = expect_ident("target variable");
      out = std::move(c);
    } else if (t.text == "set_top") {
      out = cmd::SetTop{expect_ident("node variable")};
    } else {
      fail("unknown command '" + t.text + "'", t);
    }
    expect(Tok::Semi, "';'");
    return out;
  }

  // Commands may reference pattern variables and fresh nodes introduced by
  // earlier add_node commands.
  void validate_rule(const Rule& rule) const {
    std::set<std::string> node_vars(rule.pattern.var_order.begin(),
                                    rule.pattern.var_order.end());
    std::set<std::string> edge_vars;
    for (const auto& e : rule.pattern.edges)
      if (e.edge_var) edge_vars.insert(*e.edge_var);

    auto need_node = [&](const std::string& v) {
      if (!node_vars.count(v))
        throw RuleSyntaxError("rule '" + rule.name + "': undefined variable '" + v + "'", 0, 0);
    };
    auto need_edge = [&](const std::string& v) {
      if (!edge_vars.count(v))
        throw RuleSyntaxError("rule '" + rule.name + "': undefined edge variable '" + v + "'", 0,
                              0);
    };
    for (const auto& c : rule.commands) {
      std::visit(
          [&](const auto& cc) {
            using T = std::decay_t<decltype(cc)>;
            if constexpr (std::is_same_v<T, cmd::DelEdge>) need_edge(cc.edge_var);
            else if constexpr (std::is_same_v<T, cmd::AddEdge>) {
              need_node(cc.source_var);
              need_node(cc.target_var);
            } else if constexpr (std::is_same_v<T, cmd::DelNode>) need_node(cc.var);
            else if constexpr (std::is_same_v<T, cmd::AddNode>) {
              if (node_vars.count(cc.var))
                throw RuleSyntaxError(
                    "rule '" + rule.name + "': add_node variable '" + cc.var + "' already bound",
                    0, 0);
              node_vars.insert(cc.var);
            } else if constexpr (std::is_same_v<T, cmd::RelabelEdge>) need_edge(cc.edge_var);
            else if constexpr (std::is_same_v<T, cmd::RelabelNode>) need_node(cc.var);
            else if constexpr (std::is_same_v<T, cmd::Shift>) {
              need_node(cc.from_var);
              need_node(cc.to_var);
            } else if constexpr (std::is_same_v<T, cmd::SetTop>) need_node(cc.var);
          },
          c);
    }
  }

  Strategy parse_strategy() {
    const Token& t = next();
    if (t.kind != Tok::Ident) fail("expected strategy expression, got '" + t.text + "'", t);
    auto kind = [&]() -> std::optional<Strategy::Kind> {
      if (t.text == "seq") return Strategy::Kind::Seq;
      if (t.text == "iter") return Strategy::Kind::Iter;
      if (t.text == "onf") return Strategy::Kind::Onf;
      if (t.text == "alt") return Strategy::Kind::Alt;
      if (t.text == "allnf") return Strategy::Kind::AllNf;
      return std::nullopt;
    }();
    if (!kind || peek().kind != Tok::LParen) return Strategy::ref(t.text);

    expect(Tok::LParen, "'('");
    std::vector<Strategy> children;
    children.push_back(parse_strategy());
    while (peek().kind == Tok::Comma) {
      next();
      children.push_back(parse_strategy());
    }
    expect(Tok::RParen, "')'");
    if ((*kind == Strategy::Kind::Iter || *kind == Strategy::Kind::Onf ||
         *kind == Strategy::Kind::AllNf) &&
        children.size() != 1)
      fail(t.text + "(...) takes exactly one argument", t);
    return Strategy::combine(*kind, std::move(children));
  }

  static void check_strategy(const Strategy& s, const std::set<std::string>& rule_names) {
    if (s.kind == Strategy::Kind::RuleRef) {
      if (!rule_names.count(s.rule_name))
        throw RuleSyntaxError("strategy references undefined rule '" + s.rule_name + "'", 0, 0);
      return;
    }
    for (const auto& c : s.children) check_strategy(c, rule_names);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::set<std::string> lexicon_names_;
};

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

bool bare_safe(const std::string& s) {
  if (s.empty() || !ident_start(s[0])) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (ident_cont(c)) continue;
    if (c == '-' && i + 1 < s.size() && ident_start(s[i + 1])) continue;
    return false;
  }
  // A trailing ".key"/".value" would re-parse as a lexicon reference.
  return !s.ends_with(".key") && !s.ends_with(".value");
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  return out + "\"";
}

std::string print_label_term(const LabelTerm& t) {
  if (const auto* s = std::get_if<std::string>(&t)) return bare_safe(*s) ? *s : quote(*s);
  if (const auto* l = std::get_if<LexRef>(&t))
    return l->lexicon + (l->value_column ? ".value" : ".key");
  return "*";
}

void print_clause_block(std::ostringstream& os, const Pattern& p, const char* indent) {
  for (const auto& n : p.nodes) {
    os << indent << n.var;
    std::vector<std::string> cs;
    if (n.require_top) cs.push_back("top");
    if (n.label) cs.push_back("label=" + print_label_term(*n.label));
    for (const auto& pc : n.properties)
      cs.push_back(pc.key + "=" + (pc.value ? quote(*pc.value) : std::string("*")));
    if (!cs.empty()) {
      os << " [";
      for (std::size_t i = 0; i < cs.size(); ++i) os << (i ? ", " : "") << cs[i];
      os << "]";
    }
    os << ";\n";
  }
  for (const auto& e : p.edges) {
    os << indent;
    if (e.edge_var) os << *e.edge_var << ": ";
    os << e.source_var << " -[";
    if (e.label.negated) os << "^";
    for (std::size_t i = 0; i < e.label.alternatives.size(); ++i)
      os << (i ? "|" : "") << print_label_term(e.label.alternatives[i]);
    os << "]-> " << e.target_var << ";\n";
  }
}

}  // namespace

std::string print_rule(const Rule& rule) {
  std::ostringstream os;
  os << "rule " << rule.name << " {\n    pattern {\n";
  print_clause_block(os, rule.pattern, "        ");
  os << "    }\n";
  for (const auto& w : rule.pattern.without) {
    os << "    without {\n";
    print_clause_block(os, w, "        ");
    os << "    }\n";
  }
  os << "    commands {\n";
  for (const auto& c : rule.commands) {
    os << "        ";
    std::visit(
        [&](const auto& cc) {
          using T = std::decay_t<decltype(cc)>;
          if constexpr (std::is_same_v<T, cmd::DelEdge>) os << "del_edge " << cc.edge_var;
          else if constexpr (std::is_same_v<T, cmd::AddEdge>)
            os << "add_edge " << cc.source_var << " -[" << print_label_term(cc.label) << "]-> "
               << cc.target_var;
          else if constexpr (std::is_same_v<T, cmd::DelNode>) os << "del_node " << cc.var;
          else if constexpr (std::is_same_v<T, cmd::AddNode>) {
            os << "add_node " << cc.var;
            if (cc.label) os << " [label=" << print_label_term(*cc.label) << "]";
          } else if constexpr (std::is_same_v<T, cmd::RelabelEdge>)
            os << "relabel_edge " << cc.edge_var << " " << print_label_term(cc.label);
          else if constexpr (std::is_same_v<T, cmd::RelabelNode>)
            os << "relabel_node " << cc.var << " " << print_label_term(cc.label);
          else if constexpr (std::is_same_v<T, cmd::Shift>)
            os << "shift " << cc.from_var << " ==> " << cc.to_var;
          else if constexpr (std::is_same_v<T, cmd::SetTop>) os << "set_top " << cc.var;
        },
        c);
    os << ";\n";
  }
  os << "    }\n}\n";
  return os.str();
}

std::string print_strategy(const Strategy& s) {
  switch (s.kind) {
    case Strategy::Kind::RuleRef: return s.rule_name;
    case Strategy::Kind::Seq:
    case Strategy::Kind::Alt: {
      std::string out = s.kind == Strategy::Kind::Seq ? "seq(" : "alt(";
      for (std::size_t i = 0; i < s.children.size(); ++i)
        out += (i ? ", " : "") + print_strategy(s.children[i]);
      return out + ")";
    }
    case Strategy::Kind::Iter: return "iter(" + print_strategy(s.children.at(0)) + ")";
    case Strategy::Kind::Onf: return "onf(" + print_strategy(s.children.at(0)) + ")";
    case Strategy::Kind::AllNf: return "allnf(" + print_strategy(s.children.at(0)) + ")";
  }
  return "";
}

std::string print_pack(const RulePack& pack) {
  std::ostringstream os;
  for (const auto& ref : pack.lexicon_refs)
    os << "lexicon " << ref.name << " " << quote(ref.path) << "\n";
  if (!pack.lexicon_refs.empty()) os << "\n";
  for (const auto& r : pack.rules) os << print_rule(r) << "\n";
  os << "strategy { " << print_strategy(pack.strategy) << " }\n";
  return os.str();
}

RulePack parse_rule_file(const std::string& text) { return Parser(text).parse(); }

Lexicon parse_lexicon(const std::string& name, const std::string& text) {
  Lexicon lex;
  lex.name = name;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::set<std::string> keys;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    char sep = line.find('\t') != std::string::npos ? '\t' : ',';
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      auto pos = line.find(sep, start);
      cols.push_back(line.substr(start, pos == std::string::npos ? pos : pos - start));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    for (auto& c : cols) {
      auto b = c.find_first_not_of(" \t");
      auto e = c.find_last_not_of(" \t");
      c = b == std::string::npos ? "" : c.substr(b, e - b + 1);
    }
    if (cols.size() != 2)
      throw LexiconError("lexicon " + name + " line " + std::to_string(lineno) + ": expected 2 columns, got " +
                         std::to_string(cols.size()));
    if (!keys.insert(cols[0]).second)
      throw LexiconError("lexicon " + name + " line " + std::to_string(lineno) + ": duplicate key '" + cols[0] +
                         "'");
    lex.entries.emplace_back(cols[0], cols[1]);
  }
  return lex;
}

void attach_lexicon(RulePack& pack, Lexicon lexicon) {
  pack.lexicons[lexicon.name] = std::move(lexicon);
}

void load_lexicons(RulePack& pack, const std::string& base_dir) {
  for (const auto& ref : pack.lexicon_refs) {
    if (pack.lexicons.count(ref.name)) continue;
    std::string path = ref.path;
    if (!path.empty() && path[0] != '/' && !base_dir.empty()) path = base_dir + "/" + path;
    std::ifstream in(path);
    if (!in) throw LexiconError("cannot open lexicon file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    attach_lexicon(pack, parse_lexicon(ref.name, buf.str()));
  }
}

std::string pack_content_hash(const RulePack& pack) {
  std::string text = print_pack(pack);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace mrew

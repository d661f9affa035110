#include "tacit/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace tacit {

std::string Literal::text() const {
  switch (kind) {
    case Kind::Bool: return boolValue ? "true" : "false";
    case Kind::Int: return std::to_string(intValue);
    case Kind::Symbol: return symbol;
  }
  return "";
}

namespace {

enum class Tok {
  Ident,
  Int,
  Colon,
  Assign,   // =
  LBrace,
  RBrace,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  DotDot,
  Arrow,    // ->
  Bang,
  AndAnd,
  OrOr,
  EqEq,
  Neq,
  Lt,
  Le,
  Gt,
  Ge,
  Eof,
};

struct Token {
  Tok kind = Tok::Eof;
  std::string text;
  int64_t intValue = 0;
  int line = 1;
  int col = 1;
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::Colon: return "':'";
    case Tok::Assign: return "'='";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::DotDot: return "'..'";
    case Tok::Arrow: return "'->'";
    case Tok::Bang: return "'!'";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
    case Tok::EqEq: return "'=='";
    case Tok::Neq: return "'!='";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::Eof: return "end of input";
  }
  return "?";
}

bool is_keyword(const std::string& s) {
  static const char* kw[] = {
      "model",  "var",      "set",     "disjoint", "state", "compound",
      "parallel", "region", "initial", "entry",    "exit",  "do",
      "trans",  "on",       "when",    "if",       "rule",  "priority",
      "event",  "cond",     "emit",    "bool",     "enum",  "int",
      "true",   "false",
  };
  for (const char* k : kw)
    if (s == k) return true;
  return false;
}

class Lexer {
 public:
  Lexer(std::string_view text, std::string file)
      : text_(text), file_(std::move(file)) {}

  Token next() {
    skipSpace();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= text_.size()) {
      t.kind = Tok::Eof;
      return t;
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_'))
        advance();
      t.kind = Tok::Ident;
      t.text = std::string(text_.substr(start, pos_ - start));
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        advance();
      t.kind = Tok::Int;
      t.text = std::string(text_.substr(start, pos_ - start));
      try {
        t.intValue = std::stoll(t.text);
      } catch (const std::out_of_range&) {
        throw ParseError(file_, t.line, t.col, "integer literal out of range");
      }
      return t;
    }
    auto two = [&](char a, char b) {
      return c == a && pos_ + 1 < text_.size() && text_[pos_ + 1] == b;
    };
    if (two('-', '>')) { advance(); advance(); t.kind = Tok::Arrow; return t; }
    if (two('.', '.')) { advance(); advance(); t.kind = Tok::DotDot; return t; }
    if (two('&', '&')) { advance(); advance(); t.kind = Tok::AndAnd; return t; }
    if (two('|', '|')) { advance(); advance(); t.kind = Tok::OrOr; return t; }
    if (two('=', '=')) { advance(); advance(); t.kind = Tok::EqEq; return t; }
    if (two('!', '=')) { advance(); advance(); t.kind = Tok::Neq; return t; }
    if (two('<', '=')) { advance(); advance(); t.kind = Tok::Le; return t; }
    if (two('>', '=')) { advance(); advance(); t.kind = Tok::Ge; return t; }
    switch (c) {
      case ':': advance(); t.kind = Tok::Colon; return t;
      case '=': advance(); t.kind = Tok::Assign; return t;
      case '{': advance(); t.kind = Tok::LBrace; return t;
      case '}': advance(); t.kind = Tok::RBrace; return t;
      case '(': advance(); t.kind = Tok::LParen; return t;
      case ')': advance(); t.kind = Tok::RParen; return t;
      case '[': advance(); t.kind = Tok::LBracket; return t;
      case ']': advance(); t.kind = Tok::RBracket; return t;
      case ',': advance(); t.kind = Tok::Comma; return t;
      case '!': advance(); t.kind = Tok::Bang; return t;
      case '<': advance(); t.kind = Tok::Lt; return t;
      case '>': advance(); t.kind = Tok::Gt; return t;
      default:
        throw ParseError(file_, t.line, t.col,
                         std::string("unexpected character '") + c + "'");
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skipSpace() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::string file_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, std::string file)
      : lexer_(text, file), file_(std::move(file)) {
    cur_ = lexer_.next();
  }

  Model parse() {
    Model m;
    m.sourceFile = file_;
    expectKeyword("model");
    m.line = cur_.line;
    m.name = expectIdent("model name");
    while (cur_.kind != Tok::Eof) parseItem(m);
    deriveEvents(m);
    return m;
  }

 private:
  // --- token helpers -----------------------------------------------------

  [[noreturn]] void fail(const std::string& expected) {
    std::string found = cur_.kind == Tok::Ident || cur_.kind == Tok::Int
                            ? "'" + cur_.text + "'"
                            : tok_name(cur_.kind);
    throw ParseError(file_, cur_.line, cur_.col,
                     "expected " + expected + ", found " + found);
  }

  void bump() { cur_ = lexer_.next(); }

  bool atKeyword(const char* kw) const {
    return cur_.kind == Tok::Ident && cur_.text == kw;
  }

  bool acceptKeyword(const char* kw) {
    if (!atKeyword(kw)) return false;
    bump();
    return true;
  }

  void expectKeyword(const char* kw) {
    if (!acceptKeyword(kw)) fail(std::string("'") + kw + "'");
  }

  void expect(Tok k) {
    if (cur_.kind != k) fail(tok_name(k));
    bump();
  }

  std::string expectIdent(const char* what) {
    if (cur_.kind != Tok::Ident) fail(what);
    if (is_keyword(cur_.text))
      throw ParseError(file_, cur_.line, cur_.col,
                       "keyword '" + cur_.text + "' cannot be used as " + what);
    std::string s = cur_.text;
    bump();
    return s;
  }

  int64_t expectInt() {
    if (cur_.kind != Tok::Int) fail("integer");
    int64_t v = cur_.intValue;
    bump();
    return v;
  }

  // --- grammar -----------------------------------------------------------

  void parseItem(Model& m) {
    if (atKeyword("var")) {
      m.variables.push_back(parseVar());
    } else if (atKeyword("set")) {
      m.sets.push_back(parseSet());
    } else if (atKeyword("state")) {
      m.topStates.push_back(parseState());
    } else if (atKeyword("trans")) {
      m.topTransitions.push_back(parseTrans());
    } else if (atKeyword("rule")) {
      m.rules.push_back(parseRule());
    } else {
      fail("'var', 'set', 'state', 'trans' or 'rule'");
    }
  }

  Variable parseVar() {
    Variable v;
    v.line = cur_.line;
    expectKeyword("var");
    v.name = expectIdent("variable name");
    expect(Tok::Colon);
    if (acceptKeyword("bool")) {
      v.domain.kind = VarDomain::Kind::Bool;
    } else if (acceptKeyword("enum")) {
      v.domain.kind = VarDomain::Kind::Enum;
      expect(Tok::LBrace);
      v.domain.literals.push_back(expectIdent("enumeration literal"));
      while (cur_.kind == Tok::Comma) {
        bump();
        v.domain.literals.push_back(expectIdent("enumeration literal"));
      }
      expect(Tok::RBrace);
    } else if (acceptKeyword("int")) {
      v.domain.kind = VarDomain::Kind::Int;
      expect(Tok::LBracket);
      v.domain.lo = expectInt();
      expect(Tok::DotDot);
      v.domain.hi = expectInt();
      expect(Tok::RBracket);
    } else {
      fail("'bool', 'enum' or 'int'");
    }
    if (cur_.kind == Tok::Assign) {
      bump();
      v.declaredInitial = parseLiteral();
    }
    return v;
  }

  EntitySet parseSet() {
    EntitySet s;
    s.line = cur_.line;
    expectKeyword("set");
    s.name = expectIdent("set name");
    if (acceptKeyword("disjoint")) {
      s.declaredDisjointWith.push_back(expectIdent("set name"));
      while (cur_.kind == Tok::Comma) {
        bump();
        s.declaredDisjointWith.push_back(expectIdent("set name"));
      }
    }
    expect(Tok::LBrace);
    s.members.emplace_back(expectIdentWithLine("member name"));
    while (cur_.kind == Tok::Comma) {
      bump();
      s.members.emplace_back(expectIdentWithLine("member name"));
    }
    expect(Tok::RBrace);
    return s;
  }

  std::pair<std::string, int> expectIdentWithLine(const char* what) {
    int line = cur_.line;
    return {expectIdent(what), line};
  }

  State parseState() {
    State s;
    s.line = cur_.line;
    expectKeyword("state");
    s.name = expectIdent("state name");
    bool declaredCompound = acceptKeyword("compound");
    bool declaredParallel = !declaredCompound && acceptKeyword("parallel");
    if (cur_.kind == Tok::LBrace) {
      bump();
      while (cur_.kind != Tok::RBrace) parseStateItem(s.children, s.regions,
                                                      s.initialDecls,
                                                      s.entryActions,
                                                      s.exitActions,
                                                      s.transitions);
      bump();
    }
    if (declaredParallel)
      s.kind = StateKind::Parallel;
    else if (declaredCompound || !s.children.empty())
      s.kind = StateKind::Compound;
    else
      s.kind = StateKind::Basic;
    return s;
  }

  void parseStateItem(std::vector<State>& children, std::vector<Region>& regions,
                      std::vector<std::pair<std::string, int>>& initials,
                      std::vector<Action>& entry, std::vector<Action>& exit,
                      std::vector<Transition>& transitions) {
    if (atKeyword("state")) {
      children.push_back(parseState());
    } else if (atKeyword("region")) {
      regions.push_back(parseRegion());
    } else if (atKeyword("trans")) {
      transitions.push_back(parseTrans());
    } else if (atKeyword("initial")) {
      int line = cur_.line;
      bump();
      initials.emplace_back(expectIdent("state name"), line);
    } else if (atKeyword("entry")) {
      bump();
      expectKeyword("do");
      parseActions(entry);
    } else if (atKeyword("exit")) {
      bump();
      expectKeyword("do");
      parseActions(exit);
    } else {
      fail("'state', 'region', 'trans', 'initial', 'entry' or 'exit'");
    }
  }

  Region parseRegion() {
    Region r;
    r.line = cur_.line;
    expectKeyword("region");
    r.name = expectIdent("region name");
    expect(Tok::LBrace);
    std::vector<Region> nested;  // grammar permits; validation rejects
    while (cur_.kind != Tok::RBrace)
      parseStateItem(r.children, nested, r.initialDecls, r.entryActions,
                     r.exitActions, r.transitions);
    bump();
    if (!nested.empty())
      throw ParseError(file_, nested.front().line, 1,
                       "regions may only appear inside parallel states");
    return r;
  }

  Transition parseTrans() {
    Transition t;
    t.line = cur_.line;
    t.docIndex = nextTransIndex_++;
    expectKeyword("trans");
    t.source = expectIdent("state name");
    expect(Tok::Arrow);
    t.target = expectIdent("state name");
    if (acceptKeyword("on")) t.event = expectIdent("event name");
    if (acceptKeyword("when")) t.guard = parseExpr();
    if (acceptKeyword("do")) parseActions(t.actions);
    return t;
  }

  Rule parseRule() {
    Rule r;
    r.line = cur_.line;
    expectKeyword("rule");
    r.name = expectIdent("rule name");
    if (acceptKeyword("priority")) r.priority = expectInt();
    expect(Tok::Colon);
    expectKeyword("when");
    if (acceptKeyword("event")) {
      r.triggerKind = Rule::TriggerKind::Event;
      r.triggerEvent = expectIdent("event name");
    } else if (acceptKeyword("cond")) {
      r.triggerKind = Rule::TriggerKind::Cond;
      r.triggerCond = parseExpr();
    } else {
      fail("'event' or 'cond'");
    }
    if (acceptKeyword("if")) r.condition = parseExpr();
    expectKeyword("do");
    parseActions(r.actions);
    return r;
  }

  void parseActions(std::vector<Action>& out) {
    out.push_back(parseAction());
    while (cur_.kind == Tok::Comma) {
      bump();
      out.push_back(parseAction());
    }
  }

  Action parseAction() {
    Action a;
    a.line = cur_.line;
    a.docIndex = nextActionIndex_++;
    if (acceptKeyword("set")) {
      a.kind = Action::Kind::Assign;
      a.target = expectIdent("variable name");
      expect(Tok::Assign);
      a.value = parseLiteral();
    } else if (acceptKeyword("emit")) {
      a.kind = Action::Kind::Emit;
      a.target = expectIdent("event name");
    } else {
      fail("'set' or 'emit'");
    }
    return a;
  }

  Literal parseLiteral() {
    if (acceptKeyword("true")) return Literal::ofBool(true);
    if (acceptKeyword("false")) return Literal::ofBool(false);
    if (cur_.kind == Tok::Int) return Literal::ofInt(expectInt());
    if (cur_.kind == Tok::Ident) return Literal::ofSymbol(expectIdent("literal"));
    fail("literal");
  }

  // expr := or; or := and ("||" and)*; and := unary ("&&" unary)*;
  // unary := "!" unary | primary; primary := "(" expr ")" | operand [cmp operand]
  ExprPtr parseExpr() { return parseOr(); }

  ExprPtr parseOr() {
    ExprPtr e = parseAnd();
    while (cur_.kind == Tok::OrOr) {
      auto node = std::make_unique<Expr>();
      node->op = Expr::Op::Or;
      node->line = cur_.line;
      node->col = cur_.col;
      bump();
      node->lhs = std::move(e);
      node->rhs = parseAnd();
      e = std::move(node);
    }
    return e;
  }

  ExprPtr parseAnd() {
    ExprPtr e = parseUnary();
    while (cur_.kind == Tok::AndAnd) {
      auto node = std::make_unique<Expr>();
      node->op = Expr::Op::And;
      node->line = cur_.line;
      node->col = cur_.col;
      bump();
      node->lhs = std::move(e);
      node->rhs = parseUnary();
      e = std::move(node);
    }
    return e;
  }

  ExprPtr parseUnary() {
    if (cur_.kind == Tok::Bang) {
      auto node = std::make_unique<Expr>();
      node->op = Expr::Op::Not;
      node->line = cur_.line;
      node->col = cur_.col;
      bump();
      node->lhs = parseUnary();
      return node;
    }
    return parsePrimary();
  }

  ExprPtr parsePrimary() {
    if (cur_.kind == Tok::LParen) {
      bump();
      ExprPtr e = parseExpr();
      expect(Tok::RParen);
      return e;
    }
    ExprPtr lhs = parseOperand();
    Expr::Op op;
    switch (cur_.kind) {
      case Tok::EqEq: op = Expr::Op::Eq; break;
      case Tok::Neq: op = Expr::Op::Ne; break;
      case Tok::Lt: op = Expr::Op::Lt; break;
      case Tok::Le: op = Expr::Op::Le; break;
      case Tok::Gt: op = Expr::Op::Gt; break;
      case Tok::Ge: op = Expr::Op::Ge; break;
      default: return lhs;
    }
    auto node = std::make_unique<Expr>();
    node->op = op;
    node->line = cur_.line;
    node->col = cur_.col;
    bump();
    node->lhs = std::move(lhs);
    node->rhs = parseOperand();
    return node;
  }

  ExprPtr parseOperand() {
    auto node = std::make_unique<Expr>();
    node->line = cur_.line;
    node->col = cur_.col;
    if (cur_.kind == Tok::Int) {
      node->op = Expr::Op::Lit;
      node->lit = Literal::ofInt(expectInt());
      return node;
    }
    if (atKeyword("true") || atKeyword("false")) {
      node->op = Expr::Op::Lit;
      node->lit = Literal::ofBool(cur_.text == "true");
      bump();
      return node;
    }
    if (cur_.kind == Tok::Ident) {
      // May denote a variable or an enumeration literal; validation resolves.
      node->op = Expr::Op::Var;
      node->var = expectIdent("comparison operand");
      return node;
    }
    fail("comparison operand");
  }

  // --- derived alphabet ----------------------------------------------------

  void noteEvent(std::map<std::string, int>& firstLine, const std::string& name,
                 int line) {
    auto it = firstLine.find(name);
    if (it == firstLine.end())
      firstLine.emplace(name, line);
    else if (line < it->second)
      it->second = line;
  }

  void collectEvents(std::map<std::string, int>& firstLine,
                     const std::vector<Action>& actions) {
    for (const Action& a : actions)
      if (a.kind == Action::Kind::Emit) noteEvent(firstLine, a.target, a.line);
  }

  void collectEvents(std::map<std::string, int>& firstLine,
                     const Transition& t) {
    if (t.event) noteEvent(firstLine, *t.event, t.line);
    collectEvents(firstLine, t.actions);
  }

  void collectEvents(std::map<std::string, int>& firstLine, const State& s) {
    collectEvents(firstLine, s.entryActions);
    collectEvents(firstLine, s.exitActions);
    for (const Transition& t : s.transitions) collectEvents(firstLine, t);
    for (const State& c : s.children) collectEvents(firstLine, c);
    for (const Region& r : s.regions) {
      collectEvents(firstLine, r.entryActions);
      collectEvents(firstLine, r.exitActions);
      for (const Transition& t : r.transitions) collectEvents(firstLine, t);
      for (const State& c : r.children) collectEvents(firstLine, c);
    }
  }

  void deriveEvents(Model& m) {
    std::map<std::string, int> firstLine;
    for (const State& s : m.topStates) collectEvents(firstLine, s);
    for (const Transition& t : m.topTransitions) collectEvents(firstLine, t);
    for (const Rule& r : m.rules) {
      if (r.triggerKind == Rule::TriggerKind::Event)
        noteEvent(firstLine, r.triggerEvent, r.line);
      collectEvents(firstLine, r.actions);
    }
    for (const auto& [name, line] : firstLine)
      m.events.push_back({name, line});
  }

  Lexer lexer_;
  std::string file_;
  Token cur_;
  int nextTransIndex_ = 0;
  int nextActionIndex_ = 0;
};

}  // namespace

Model parse_model(std::string_view text, std::string filename) {
  Parser p(text, std::move(filename));
  return p.parse();
}

Model parse_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str(), path);
}

std::string render_expr(const Expr& e) {
  auto prec = [](const Expr& x) {
    switch (x.op) {
      case Expr::Op::Or: return 1;
      case Expr::Op::And: return 2;
      case Expr::Op::Not: return 3;
      case Expr::Op::Var:
      case Expr::Op::Lit: return 5;
      default: return 4;  // comparisons
    }
  };
  std::string out;
  auto emit = [&](const Expr& x, int parentPrec, auto&& self) -> void {
    bool parens = prec(x) < parentPrec;
    if (parens) out += '(';
    switch (x.op) {
      case Expr::Op::Var: out += x.var; break;
      case Expr::Op::Lit: out += x.lit.text(); break;
      case Expr::Op::Not:
        out += '!';
        self(*x.lhs, 3, self);
        break;
      case Expr::Op::And:
        self(*x.lhs, 2, self);
        out += " && ";
        self(*x.rhs, 2, self);
        break;
      case Expr::Op::Or:
        self(*x.lhs, 1, self);
        out += " || ";
        self(*x.rhs, 1, self);
        break;
      default: {
        const char* op = "";
        switch (x.op) {
          case Expr::Op::Eq: op = " == "; break;
          case Expr::Op::Ne: op = " != "; break;
          case Expr::Op::Lt: op = " < "; break;
          case Expr::Op::Le: op = " <= "; break;
          case Expr::Op::Gt: op = " > "; break;
          case Expr::Op::Ge: op = " >= "; break;
          default: break;
        }
        self(*x.lhs, 5, self);
        out += op;
        self(*x.rhs, 5, self);
      }
    }
    if (parens) out += ')';
  };
  emit(e, 0, emit);
  return out;
}

std::vector<std::string> expr_variables(const Expr& e) {
  std::vector<std::string> out;
  auto walk = [&](const Expr& x, auto&& self) -> void {
    if (x.op == Expr::Op::Var) out.push_back(x.var);
    if (x.lhs) self(*x.lhs, self);
    if (x.rhs) self(*x.rhs, self);
  };
  walk(e, walk);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace tacit

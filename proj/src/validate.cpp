#include "tacit/validate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace tacit {

namespace {

using Errors = std::vector<StructuralError>;

void err(Errors& es, int line, std::string msg) {
  es.push_back({std::move(msg), line});
}

struct Ctx {
  const Model* model = nullptr;
  Errors* errors = nullptr;
  std::map<std::string, int> stateLines;               // first declaration
  std::map<std::string, std::vector<std::string>> regionChain;  // per state
};

const Variable* lookupVar(const Model& m, const std::string& name) {
  for (const Variable& v : m.variables)
    if (v.name == name) return &v;
  return nullptr;
}

bool literalInDomain(const Literal& l, const VarDomain& d) {
  switch (d.kind) {
    case VarDomain::Kind::Bool: return l.kind == Literal::Kind::Bool;
    case VarDomain::Kind::Int:
      return l.kind == Literal::Kind::Int && l.intValue >= d.lo &&
             l.intValue <= d.hi;
    case VarDomain::Kind::Enum:
      return l.kind == Literal::Kind::Symbol &&
             std::find(d.literals.begin(), d.literals.end(), l.symbol) !=
                 d.literals.end();
  }
  return false;
}

bool isOrdering(Expr::Op op) {
  return op == Expr::Op::Lt || op == Expr::Op::Le || op == Expr::Op::Gt ||
         op == Expr::Op::Ge;
}

// Type-checks one side of a comparison against a variable on the other side.
// Rewrites undeclared identifiers into enumeration literals when they name a
// member of the variable's enum domain.
void checkComparisonSide(Ctx& c, const Variable& var, Expr& side, Expr::Op op) {
  Errors& es = *c.errors;
  if (side.op == Expr::Op::Var) {
    if (lookupVar(*c.model, side.var)) {
      err(es, side.line, "comparison between two variables ('" + var.name +
                             "' and '" + side.var + "')");
      return;
    }
    if (var.domain.kind == VarDomain::Kind::Enum &&
        std::find(var.domain.literals.begin(), var.domain.literals.end(),
                  side.var) != var.domain.literals.end()) {
      side.op = Expr::Op::Lit;
      side.lit = Literal::ofSymbol(side.var);
      side.var.clear();
    } else {
      err(es, side.line, "unknown variable or literal '" + side.var + "'");
      return;
    }
  }
  if (!literalInDomain(side.lit, var.domain)) {
    err(es, side.line, "literal '" + side.lit.text() +
                           "' is not in the domain of variable '" + var.name +
                           "'");
    return;
  }
  if (isOrdering(op) && var.domain.kind != VarDomain::Kind::Int)
    err(es, side.line,
        "ordering comparison requires an integer variable, got '" + var.name +
            "'");
}

void checkBoolExpr(Ctx& c, Expr& e) {
  Errors& es = *c.errors;
  switch (e.op) {
    case Expr::Op::Var: {
      const Variable* v = lookupVar(*c.model, e.var);
      if (!v)
        err(es, e.line, "unknown variable '" + e.var + "'");
      else if (v->domain.kind != VarDomain::Kind::Bool)
        err(es, e.line,
            "variable '" + e.var + "' is not boolean in a boolean context");
      return;
    }
    case Expr::Op::Lit:
      if (e.lit.kind != Literal::Kind::Bool)
        err(es, e.line,
            "literal '" + e.lit.text() + "' is not boolean in a boolean context");
      return;
    case Expr::Op::Not:
      checkBoolExpr(c, *e.lhs);
      return;
    case Expr::Op::And:
    case Expr::Op::Or:
      checkBoolExpr(c, *e.lhs);
      checkBoolExpr(c, *e.rhs);
      return;
    default: {
      Expr& a = *e.lhs;
      Expr& b = *e.rhs;
      const Variable* va =
          a.op == Expr::Op::Var ? lookupVar(*c.model, a.var) : nullptr;
      const Variable* vb =
          b.op == Expr::Op::Var ? lookupVar(*c.model, b.var) : nullptr;
      if (va) {
        checkComparisonSide(c, *va, b, e.op);
      } else if (vb) {
        checkComparisonSide(c, *vb, a, e.op);
      } else {
        if (a.op == Expr::Op::Var) {
          err(es, a.line, "unknown variable '" + a.var + "'");
          return;
        }
        if (b.op == Expr::Op::Var) {
          err(es, b.line, "unknown variable '" + b.var + "'");
          return;
        }
        // literal-to-literal comparison
        if (a.lit.kind != b.lit.kind) {
          err(es, e.line, "comparison between literals of different types");
          return;
        }
        if (isOrdering(e.op) && a.lit.kind != Literal::Kind::Int)
          err(es, e.line, "ordering comparison requires integer literals");
      }
      return;
    }
  }
}

void checkActions(Ctx& c, const std::vector<Action>& actions) {
  Errors& es = *c.errors;
  for (const Action& a : actions) {
    if (a.kind != Action::Kind::Assign) continue;
    const Variable* v = lookupVar(*c.model, a.target);
    if (!v) {
      err(es, a.line, "assignment to unknown variable '" + a.target + "'");
      continue;
    }
    if (!literalInDomain(a.value, v->domain))
      err(es, a.line, "assigned literal '" + a.value.text() +
                          "' is not in the domain of variable '" + a.target +
                          "'");
  }
}

void checkTransition(Ctx& c, Transition& t) {
  Errors& es = *c.errors;
  bool endpointsKnown = true;
  for (const std::string* name : {&t.source, &t.target}) {
    if (!c.stateLines.count(*name)) {
      err(es, t.line, "unknown state '" + *name + "'");
      endpointsKnown = false;
    }
  }
  if (endpointsKnown && t.source != t.target) {
    const auto& ca = c.regionChain[t.source];
    const auto& cb = c.regionChain[t.target];
    size_t n = std::min(ca.size(), cb.size());
    bool prefix = std::equal(ca.begin(), ca.begin() + n, cb.begin());
    if (!prefix)
      err(es, t.line, "transition '" + t.source + "' -> '" + t.target +
                          "' crosses orthogonal regions");
  }
  if (t.guard) checkBoolExpr(c, *t.guard);
  checkActions(c, t.actions);
}

void collectStateNames(Ctx& c, const State& s,
                       std::vector<std::string> chain) {
  Errors& es = *c.errors;
  auto [it, fresh] = c.stateLines.emplace(s.name, s.line);
  if (!fresh)
    err(es, s.line, "duplicate state name '" + s.name + "' (first declared at line " +
                        std::to_string(it->second) + ")");
  c.regionChain[s.name] = chain;
  for (const State& child : s.children) collectStateNames(c, child, chain);
  std::set<std::string> regionNames;
  for (const Region& r : s.regions) {
    if (!regionNames.insert(r.name).second)
      err(es, r.line,
          "duplicate region name '" + r.name + "' in state '" + s.name + "'");
    auto childChain = chain;
    childChain.push_back(s.name + "." + r.name);
    for (const State& child : r.children)
      collectStateNames(c, child, childChain);
  }
}

void checkOrScope(Ctx& c, const std::string& what, const std::string& name,
                  int line, const std::vector<State>& children,
                  const std::vector<std::pair<std::string, int>>& initials) {
  Errors& es = *c.errors;
  if (children.empty()) {
    err(es, line, what + " '" + name + "' has no child states");
    return;
  }
  if (initials.empty()) {
    err(es, line, what + " '" + name + "' declares no initial child");
  } else if (initials.size() > 1) {
    err(es, initials[1].second,
        what + " '" + name + "' declares more than one initial child");
  } else {
    const auto& [initName, initLine] = initials.front();
    bool found = false;
    for (const State& child : children)
      if (child.name == initName) found = true;
    if (!found)
      err(es, initLine, "initial '" + initName + "' does not name a child of " +
                            what + " '" + name + "'");
  }
}

void checkState(Ctx& c, State& s) {
  Errors& es = *c.errors;
  switch (s.kind) {
    case StateKind::Basic:
      if (!s.regions.empty())
        err(es, s.line, "state '" + s.name +
                            "' contains regions but is not declared parallel");
      if (!s.initialDecls.empty())
        err(es, s.initialDecls.front().second,
            "basic state '" + s.name + "' cannot declare an initial child");
      break;
    case StateKind::Compound:
      if (!s.regions.empty())
        err(es, s.line, "compound state '" + s.name +
                            "' cannot contain regions (use 'parallel')");
      checkOrScope(c, "compound state", s.name, s.line, s.children,
                   s.initialDecls);
      break;
    case StateKind::Parallel:
      if (!s.children.empty())
        err(es, s.line, "parallel state '" + s.name +
                            "' must contain regions, not direct child states");
      if (s.regions.size() < 2)
        err(es, s.line,
            "parallel state '" + s.name + "' needs at least 2 regions");
      if (!s.initialDecls.empty())
        err(es, s.initialDecls.front().second,
            "parallel state '" + s.name + "' cannot declare an initial child");
      break;
  }
  checkActions(c, s.entryActions);
  checkActions(c, s.exitActions);
  for (Transition& t : s.transitions) checkTransition(c, t);
  for (State& child : s.children) checkState(c, child);
  for (Region& r : s.regions) {
    if (!r.entryActions.empty() || !r.exitActions.empty())
      err(es, r.line,
          "region '" + r.name + "' cannot declare entry or exit actions");
    checkOrScope(c, "region", r.name, r.line, r.children, r.initialDecls);
    for (Transition& t : r.transitions) checkTransition(c, t);
    for (State& child : r.children) checkState(c, child);
  }
}

void checkVariables(Ctx& c, Model& m) {
  Errors& es = *c.errors;
  std::map<std::string, int> seen;
  for (Variable& v : m.variables) {
    auto [it, fresh] = seen.emplace(v.name, v.line);
    if (!fresh)
      err(es, v.line, "duplicate variable name '" + v.name + "'");
    switch (v.domain.kind) {
      case VarDomain::Kind::Bool:
        v.initial = Literal::ofBool(false);
        break;
      case VarDomain::Kind::Enum: {
        std::set<std::string> lits;
        for (const std::string& l : v.domain.literals)
          if (!lits.insert(l).second)
            err(es, v.line, "duplicate enumeration literal '" + l +
                                "' in variable '" + v.name + "'");
        v.initial = Literal::ofSymbol(v.domain.literals.front());
        break;
      }
      case VarDomain::Kind::Int:
        if (v.domain.lo > v.domain.hi)
          err(es, v.line, "integer domain of '" + v.name +
                              "' has lower bound above upper bound");
        else if (v.domain.hi - v.domain.lo > 255)
          err(es, v.line, "integer domain of '" + v.name +
                              "' spans more than 256 values");
        v.initial = Literal::ofInt(v.domain.lo);
        break;
    }
    if (v.declaredInitial) {
      if (!literalInDomain(*v.declaredInitial, v.domain))
        err(es, v.line, "initial value '" + v.declaredInitial->text() +
                            "' is not in the domain of variable '" + v.name +
                            "'");
      else
        v.initial = *v.declaredInitial;
    }
  }
}

void checkRules(Ctx& c, Model& m) {
  Errors& es = *c.errors;
  std::map<std::string, int> seen;
  for (Rule& r : m.rules) {
    auto [it, fresh] = seen.emplace(r.name, r.line);
    if (!fresh) err(es, r.line, "duplicate rule name '" + r.name + "'");
    if (r.triggerCond) checkBoolExpr(c, *r.triggerCond);
    if (r.condition) checkBoolExpr(c, *r.condition);
    checkActions(c, r.actions);
  }
}

void checkSets(Ctx& c, Model& m) {
  Errors& es = *c.errors;
  std::map<std::string, EntitySet*> byName;
  for (EntitySet& s : m.sets) {
    auto [it, fresh] = byName.emplace(s.name, &s);
    if (!fresh) err(es, s.line, "duplicate set name '" + s.name + "'");
    std::set<std::string> members;
    for (const auto& [member, line] : s.members)
      if (!members.insert(member).second)
        err(es, line,
            "duplicate member '" + member + "' in set '" + s.name + "'");
  }
  for (EntitySet& s : m.sets) {
    for (const std::string& other : s.declaredDisjointWith) {
      if (other == s.name) {
        err(es, s.line, "set '" + s.name + "' declared disjoint with itself");
        continue;
      }
      auto it = byName.find(other);
      if (it == byName.end())
        err(es, s.line, "set '" + s.name + "' declared disjoint with unknown set '" +
                            other + "'");
    }
  }
  // Symmetrize disjointness: A disjoint B implies B disjoint A.
  for (EntitySet& s : m.sets) {
    for (const std::string& other : s.declaredDisjointWith) {
      auto it = byName.find(other);
      if (it == byName.end() || other == s.name) continue;
      auto& back = it->second->declaredDisjointWith;
      if (std::find(back.begin(), back.end(), s.name) == back.end())
        back.push_back(s.name);
    }
  }
  for (EntitySet& s : m.sets) {
    std::sort(s.declaredDisjointWith.begin(), s.declaredDisjointWith.end());
    s.declaredDisjointWith.erase(std::unique(s.declaredDisjointWith.begin(),
                                             s.declaredDisjointWith.end()),
                                 s.declaredDisjointWith.end());
  }
}

}  // namespace

std::vector<StructuralError> validate_model(Model& m) {
  Errors errors;
  Ctx c;
  c.model = &m;
  c.errors = &errors;
  for (const State& s : m.topStates) collectStateNames(c, s, {});
  checkVariables(c, m);
  for (State& s : m.topStates) checkState(c, s);
  for (Transition& t : m.topTransitions) checkTransition(c, t);
  checkRules(c, m);
  checkSets(c, m);
  std::stable_sort(errors.begin(), errors.end(),
                   [](const StructuralError& a, const StructuralError& b) {
                     return a.line < b.line;
                   });
  return errors;
}

const char* symbol_kind_name(SymbolKind k) {
  switch (k) {
    case SymbolKind::State: return "state";
    case SymbolKind::Variable: return "variable";
    case SymbolKind::Rule: return "rule";
    case SymbolKind::Set: return "set";
    case SymbolKind::Member: return "member";
    case SymbolKind::Event: return "event";
  }
  return "?";
}

namespace {

void collectStateEntries(const State& s, std::vector<SymbolEntry>& out) {
  out.push_back({s.name, SymbolKind::State, s.line});
  for (const State& child : s.children) collectStateEntries(child, out);
  for (const Region& r : s.regions)
    for (const State& child : r.children) collectStateEntries(child, out);
}

}  // namespace

IdentifierTable symbol_table(const Model& m) {
  IdentifierTable t;
  for (const State& s : m.topStates) collectStateEntries(s, t.entries);
  for (const Variable& v : m.variables)
    t.entries.push_back({v.name, SymbolKind::Variable, v.line});
  for (const Rule& r : m.rules)
    t.entries.push_back({r.name, SymbolKind::Rule, r.line});
  for (const EntitySet& s : m.sets) {
    t.entries.push_back({s.name, SymbolKind::Set, s.line});
    for (const auto& [member, line] : s.members)
      t.entries.push_back({member, SymbolKind::Member, line});
  }
  for (const EventInfo& e : m.events)
    t.entries.push_back({e.name, SymbolKind::Event, e.firstLine});
  std::stable_sort(t.entries.begin(), t.entries.end(),
                   [](const SymbolEntry& a, const SymbolEntry& b) {
                     if (a.kind != b.kind) return a.kind < b.kind;
                     if (a.name != b.name) return a.name < b.name;
                     return a.line < b.line;
                   });
  return t;
}

const Variable* find_variable(const Model& m, const std::string& name) {
  return lookupVar(m, name);
}

VarIndex::VarIndex(const Model& m) {
  for (const Variable& v : m.variables) vars.push_back(&v);
}

int VarIndex::indexOf(const std::string& name) const {
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i]->name == name) return static_cast<int>(i);
  return -1;
}

namespace {

Literal operandValue(const Expr& e, const VarIndex& idx,
                     const std::vector<Literal>& valuation) {
  if (e.op == Expr::Op::Lit) return e.lit;
  int i = idx.indexOf(e.var);
  return valuation[static_cast<size_t>(i)];
}

}  // namespace

bool eval_expr(const Expr& e, const VarIndex& idx,
               const std::vector<Literal>& valuation) {
  switch (e.op) {
    case Expr::Op::Var: {
      int i = idx.indexOf(e.var);
      return valuation[static_cast<size_t>(i)].boolValue;
    }
    case Expr::Op::Lit:
      return e.lit.boolValue;
    case Expr::Op::Not:
      return !eval_expr(*e.lhs, idx, valuation);
    case Expr::Op::And:
      return eval_expr(*e.lhs, idx, valuation) &&
             eval_expr(*e.rhs, idx, valuation);
    case Expr::Op::Or:
      return eval_expr(*e.lhs, idx, valuation) ||
             eval_expr(*e.rhs, idx, valuation);
    default: {
      Literal a = operandValue(*e.lhs, idx, valuation);
      Literal b = operandValue(*e.rhs, idx, valuation);
      switch (e.op) {
        case Expr::Op::Eq: return a == b;
        case Expr::Op::Ne: return !(a == b);
        case Expr::Op::Lt: return a.intValue < b.intValue;
        case Expr::Op::Le: return a.intValue <= b.intValue;
        case Expr::Op::Gt: return a.intValue > b.intValue;
        case Expr::Op::Ge: return a.intValue >= b.intValue;
        default: return false;
      }
    }
  }
}

}  // namespace tacit

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tacit {

/// A typed literal value: bool, integer, or enumeration symbol.
struct Literal {
  enum class Kind { Bool, Int, Symbol };

  Kind kind = Kind::Bool;
  bool boolValue = false;
  int64_t intValue = 0;
  std::string symbol;

  static Literal ofBool(bool b) {
    Literal l;
    l.kind = Kind::Bool;
    l.boolValue = b;
    return l;
  }
  static Literal ofInt(int64_t v) {
    Literal l;
    l.kind = Kind::Int;
    l.intValue = v;
    return l;
  }
  static Literal ofSymbol(std::string s) {
    Literal l;
    l.kind = Kind::Symbol;
    l.symbol = std::move(s);
    return l;
  }

  std::string text() const;

  friend bool operator==(const Literal& a, const Literal& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Kind::Bool: return a.boolValue == b.boolValue;
      case Kind::Int: return a.intValue == b.intValue;
      case Kind::Symbol: return a.symbol == b.symbol;
    }
    return false;
  }
  friend bool operator!=(const Literal& a, const Literal& b) { return !(a == b); }
  friend bool operator<(const Literal& a, const Literal& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    switch (a.kind) {
      case Kind::Bool: return a.boolValue < b.boolValue;
      case Kind::Int: return a.intValue < b.intValue;
      case Kind::Symbol: return a.symbol < b.symbol;
    }
    return false;
  }
};

/// Boolean expression tree over variables, literals and comparisons.
/// Comparison operands are always Var or Lit nodes.
struct Expr {
  enum class Op { Var, Lit, Not, And, Or, Eq, Ne, Lt, Le, Gt, Ge };

  Op op = Op::Lit;
  std::string var;  // Op::Var
  Literal lit;      // Op::Lit
  std::unique_ptr<Expr> lhs;
  std::unique_ptr<Expr> rhs;
  int line = 0;
  int col = 0;
};

using ExprPtr = std::unique_ptr<Expr>;

/// Renders an expression in canonical form (single spaces, minimal parens).
std::string render_expr(const Expr& e);

/// Collects names of all Var nodes, sorted and deduplicated.
std::vector<std::string> expr_variables(const Expr& e);

struct Action {
  enum class Kind { Assign, Emit };

  Kind kind = Kind::Assign;
  std::string target;  // variable name (Assign) or event name (Emit)
  Literal value;       // Assign only
  int line = 0;
  int docIndex = 0;  // global document order across all actions
};

struct Transition {
  std::string source;
  std::string target;
  std::optional<std::string> event;
  ExprPtr guard;  // null when absent
  std::vector<Action> actions;
  int line = 0;
  int docIndex = 0;  // global document order across all transitions
};

struct VarDomain {
  enum class Kind { Bool, Enum, Int };

  Kind kind = Kind::Bool;
  std::vector<std::string> literals;  // Enum
  int64_t lo = 0, hi = 0;             // Int

  /// Number of distinct values, used for product-space estimates.
  uint64_t size() const {
    switch (kind) {
      case Kind::Bool: return 2;
      case Kind::Enum: return literals.size();
      case Kind::Int: return hi >= lo ? static_cast<uint64_t>(hi - lo + 1) : 0;
    }
    return 0;
  }
};

struct Variable {
  std::string name;
  VarDomain domain;
  std::optional<Literal> declaredInitial;
  Literal initial;  // effective initial, resolved during validation
  int line = 0;
};

struct Region;

enum class StateKind { Basic, Compound, Parallel };

struct State {
  std::string name;
  StateKind kind = StateKind::Basic;
  std::vector<State> children;  // Compound
  std::vector<Region> regions;  // Parallel
  std::vector<std::pair<std::string, int>> initialDecls;  // (name, line)
  std::vector<Action> entryActions;
  std::vector<Action> exitActions;
  std::vector<Transition> transitions;  // owned by this state's scope
  int line = 0;
};

struct Region {
  std::string name;
  std::vector<State> children;
  std::vector<std::pair<std::string, int>> initialDecls;
  std::vector<Action> entryActions;  // grammar permits, validation rejects
  std::vector<Action> exitActions;
  std::vector<Transition> transitions;
  int line = 0;
};

struct Rule {
  enum class TriggerKind { Event, Cond };

  std::string name;
  std::optional<int64_t> priority;
  TriggerKind triggerKind = TriggerKind::Event;
  std::string triggerEvent;
  ExprPtr triggerCond;
  ExprPtr condition;  // "if" clause, null when absent
  std::vector<Action> actions;
  int line = 0;
};

struct EntitySet {
  std::string name;
  std::vector<std::pair<std::string, int>> members;  // (name, line)
  std::vector<std::string> declaredDisjointWith;
  int line = 0;
};

struct EventInfo {
  std::string name;
  int firstLine = 0;  // first occurrence in document order
};

/// Parsed model. Immutable after validation; safe to share across analyses.
struct Model {
  std::string name;
  std::vector<State> topStates;
  std::vector<Transition> topTransitions;
  std::vector<Variable> variables;
  std::vector<Rule> rules;
  std::vector<EntitySet> sets;
  std::vector<EventInfo> events;  // derived alphabet, sorted by name
  std::string sourceFile;
  int line = 1;

  Model() = default;
  Model(Model&&) = default;
  Model& operator=(Model&&) = default;
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;
};

}  // namespace tacit

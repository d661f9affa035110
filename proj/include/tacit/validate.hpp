#pragma once

#include <string>
#include <vector>

#include "tacit/ast.hpp"

namespace tacit {

struct StructuralError {
  std::string message;
  int line = 0;

  std::string format(const std::string& file) const {
    return file + ":" + std::to_string(line) + ": " + message;
  }
};

/// Checks every structural invariant and returns all violations (empty list
/// means analyses may run). As a side effect of successful validation the
/// model is normalized: set-disjointness declarations are symmetrized,
/// enumeration literals in expressions are resolved, and effective variable
/// initials are filled in.
std::vector<StructuralError> validate_model(Model& m);

enum class SymbolKind { State, Variable, Rule, Set, Member, Event };

const char* symbol_kind_name(SymbolKind k);

struct SymbolEntry {
  std::string name;
  SymbolKind kind;
  int line = 0;
};

/// Complete identifier table: every named entity exactly once, ordered by
/// (kind, name, line).
struct IdentifierTable {
  std::vector<SymbolEntry> entries;
};

IdentifierTable symbol_table(const Model& m);

/// Looks up a variable by name; null when undeclared.
const Variable* find_variable(const Model& m, const std::string& name);

/// Evaluates a resolved boolean expression over a valuation given as
/// (variable index -> literal). Expressions must have passed validation.
struct VarIndex {
  std::vector<const Variable*> vars;
  explicit VarIndex(const Model& m);
  int indexOf(const std::string& name) const;  // -1 when absent
};

bool eval_expr(const Expr& e, const VarIndex& idx,
               const std::vector<Literal>& valuation);

}  // namespace tacit

#include "tacit/lint.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <functional>
#include <map>
#include <set>

namespace tacit {

namespace {

std::string join(const std::vector<std::string>& xs, const char* sep = ", ") {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i];
  }
  return out;
}

void collectTransitions(const State& s, std::vector<const Transition*>& out) {
  for (const Transition& t : s.transitions) out.push_back(&t);
  for (const State& child : s.children) collectTransitions(child, out);
  for (const Region& r : s.regions) {
    for (const Transition& t : r.transitions) out.push_back(&t);
    for (const State& child : r.children) collectTransitions(child, out);
  }
}

std::vector<const Transition*> allTransitions(const Model& m) {
  std::vector<const Transition*> out;
  for (const Transition& t : m.topTransitions) out.push_back(&t);
  for (const State& s : m.topStates) collectTransitions(s, out);
  std::sort(out.begin(), out.end(), [](const Transition* a, const Transition* b) {
    return a->docIndex < b->docIndex;
  });
  return out;
}

std::string triggerKey(const Rule& r) {
  return r.triggerKind == Rule::TriggerKind::Event
             ? "event '" + r.triggerEvent + "'"
             : "condition '" + render_expr(*r.triggerCond) + "'";
}

}  // namespace

std::vector<Finding> lint_self_falsifying(const Model& m) {
  std::vector<Finding> out;
  for (const Rule& r : m.rules) {
    std::set<std::string> condVars;
    if (r.triggerCond)
      for (const std::string& v : expr_variables(*r.triggerCond))
        condVars.insert(v);
    if (r.condition)
      for (const std::string& v : expr_variables(*r.condition))
        condVars.insert(v);
    if (condVars.empty()) continue;
    std::vector<std::string> offending;
    for (const Action& a : r.actions)
      if (a.kind == Action::Kind::Assign && condVars.count(a.target))
        offending.push_back(a.target);
    std::sort(offending.begin(), offending.end());
    offending.erase(std::unique(offending.begin(), offending.end()),
                    offending.end());
    if (offending.empty()) continue;
    std::vector<std::string> subjects = {r.name};
    subjects.insert(subjects.end(), offending.begin(), offending.end());
    out.push_back(make_finding(
        Category::LangUnintended, Severity::Question, std::move(subjects),
        "Rule '" + r.name + "' assigns variable(s) " + join(offending) +
            " that occur in its own condition. Is the intent exactly one "
            "action per condition episode? Depending on timing, the action "
            "may fire several times before the condition turns false.",
        "condition variables assigned by own actions: " + join(offending),
        {m.sourceFile, r.line}));
  }
  return out;
}

namespace {

std::vector<Finding> sameTriggerPairs(const Model& m, bool wantFragmented) {
  std::vector<Finding> out;
  for (size_t i = 0; i < m.rules.size(); ++i) {
    for (size_t j = i + 1; j < m.rules.size(); ++j) {
      const Rule& a = m.rules[i];
      const Rule& b = m.rules[j];
      bool sameEvent = a.triggerKind == Rule::TriggerKind::Event &&
                       b.triggerKind == Rule::TriggerKind::Event &&
                       a.triggerEvent == b.triggerEvent;
      bool sameCond = a.triggerKind == Rule::TriggerKind::Cond &&
                      b.triggerKind == Rule::TriggerKind::Cond &&
                      render_expr(*a.triggerCond) == render_expr(*b.triggerCond);
      if (wantFragmented) {
        if (!(sameEvent || sameCond) || a.priority == b.priority) continue;
        out.push_back(make_finding(
            Category::LangFragmented, Severity::Question, {a.name, b.name},
            "Rules '" + a.name + "' and '" + b.name + "' share " +
                triggerKey(a) +
                " but differ in priority, which reads like a base requirement "
                "plus an override. Where is the consolidated requirement "
                "documented?",
            "priorities: " +
                (a.priority ? std::to_string(*a.priority) : "none") + " vs " +
                (b.priority ? std::to_string(*b.priority) : "none"),
            {m.sourceFile, a.line}));
      } else {
        if (!sameEvent || a.priority || b.priority) continue;
        out.push_back(make_finding(
            Category::LangUnspecified, Severity::Question, {a.name, b.name},
            "Rules '" + a.name + "' and '" + b.name + "' both react to " +
                triggerKey(a) +
                " and declare no priority. Should one run before, after, or "
                "concurrently with the other — and does it matter?",
            "same event trigger, no priorities", {m.sourceFile, a.line}));
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Finding> lint_order_unspecified(const Model& m) {
  return sameTriggerPairs(m, false);
}

std::vector<Finding> lint_fragmented(const Model& m) {
  return sameTriggerPairs(m, true);
}

std::vector<Finding> lint_silent_conditions(const Model& m) {
  std::vector<Finding> out;
  std::vector<std::pair<std::string, std::vector<const Transition*>>> groups;
  for (const Transition* t : allTransitions(m)) {
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto& g) { return g.first == t->source; });
    if (it == groups.end())
      groups.push_back({t->source, {t}});
    else
      it->second.push_back(t);
  }
  for (const auto& [source, ts] : groups) {
    if (ts.size() < 2) continue;
    std::set<std::string> guarded;
    for (const Transition* t : ts)
      if (t->guard)
        for (const std::string& v : expr_variables(*t->guard))
          guarded.insert(v);
    for (const Variable& var : m.variables) {
      if (!guarded.count(var.name)) continue;
      for (const Transition* t : ts) {
        std::vector<std::string> own;
        if (t->guard) own = expr_variables(*t->guard);
        if (std::find(own.begin(), own.end(), var.name) != own.end()) continue;
        out.push_back(make_finding(
            Category::CodeSilentCondition, Severity::Question,
            {source, var.name},
            "Transition '" + t->source + "' -> '" + t->target +
                "' does not check variable '" + var.name +
                "', while a sibling transition out of '" + source +
                "' does. Is '" + var.name +
                "' assumed always true, always false, or of no consequence "
                "on this path — or is the missing check an omission?",
            t->guard ? "guard '" + render_expr(*t->guard) + "' ignores '" +
                           var.name + "'"
                     : "transition has no guard at all",
            {m.sourceFile, t->line}));
      }
    }
  }
  return out;
}

namespace {

struct ConstOccurrence {
  int line;
  std::string desc;
  std::vector<std::string> vars;
};

// Collects non-boolean literals of one expression site, with the variables
// they are compared against.
void siteLiterals(const Expr& e, std::map<Literal, std::vector<std::string>>& out) {
  if (e.op == Expr::Op::Lit) {
    if (e.lit.kind != Literal::Kind::Bool) out[e.lit];
    return;
  }
  if (e.op == Expr::Op::Var) return;
  bool cmp = e.op != Expr::Op::Not && e.op != Expr::Op::And && e.op != Expr::Op::Or;
  if (cmp) {
    const Expr* varSide = e.lhs->op == Expr::Op::Var ? e.lhs.get()
                          : e.rhs->op == Expr::Op::Var ? e.rhs.get()
                                                       : nullptr;
    for (const Expr* side : {e.lhs.get(), e.rhs.get()}) {
      if (side->op == Expr::Op::Lit && side->lit.kind != Literal::Kind::Bool) {
        auto& vars = out[side->lit];
        if (varSide) vars.push_back(varSide->var);
      }
    }
    return;
  }
  if (e.lhs) siteLiterals(*e.lhs, out);
  if (e.rhs) siteLiterals(*e.rhs, out);
}

}  // namespace

std::vector<Finding> lint_fixed_parameters(const Model& m,
                                           const LintConfig& cfg) {
  std::map<Literal, std::vector<ConstOccurrence>> occurrences;

  auto addExprSite = [&](const Expr& e, int line, const std::string& desc) {
    std::map<Literal, std::vector<std::string>> lits;
    siteLiterals(e, lits);
    for (auto& [lit, vars] : lits) {
      std::sort(vars.begin(), vars.end());
      vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
      occurrences[lit].push_back({line, desc, vars});
    }
  };
  auto addActions = [&](const std::vector<Action>& actions,
                        const std::string& where) {
    for (const Action& a : actions) {
      if (a.kind != Action::Kind::Assign) continue;
      if (a.value.kind == Literal::Kind::Bool) continue;
      occurrences[a.value].push_back(
          {a.line, "assignment in " + where, {a.target}});
    }
  };

  for (const Transition* t : allTransitions(m)) {
    std::string desc = "trans " + t->source + " -> " + t->target;
    if (t->guard) addExprSite(*t->guard, t->line, "guard of " + desc);
    addActions(t->actions, desc);
  }
  std::function<void(const State&)> walkState = [&](const State& s) {
    addActions(s.entryActions, "entry of state " + s.name);
    addActions(s.exitActions, "exit of state " + s.name);
    for (const State& child : s.children) walkState(child);
    for (const Region& r : s.regions)
      for (const State& child : r.children) walkState(child);
  };
  for (const State& s : m.topStates) walkState(s);
  for (const Rule& r : m.rules) {
    if (r.triggerCond)
      addExprSite(*r.triggerCond, r.line, "trigger of rule " + r.name);
    if (r.condition)
      addExprSite(*r.condition, r.line, "condition of rule " + r.name);
    addActions(r.actions, "rule " + r.name);
  }

  std::vector<Finding> out;
  for (const auto& [lit, occs] : occurrences) {
    if (occs.size() < cfg.minConstantOccurrences) continue;
    std::vector<std::string> vars;
    std::vector<std::string> places;
    for (const ConstOccurrence& o : occs) {
      vars.insert(vars.end(), o.vars.begin(), o.vars.end());
      places.push_back("line " + std::to_string(o.line) + " (" + o.desc + ")");
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    out.push_back(make_finding(
        Category::CodeFixedParameter, Severity::Question, vars,
        "The constant " + lit.text() + " appears in " +
            std::to_string(occs.size()) +
            " distinct guards, conditions or assignments. Beyond the choice "
            "of value itself: is one fixed value appropriate in every place "
            "it is used?",
        join(places, "; "), {m.sourceFile, occs.front().line}));
  }
  return out;
}

double normalized_edit_distance(const std::string& a, const std::string& b) {
  std::string x = a, y = b;
  for (char& c : x) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (char& c : y) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  size_t n = x.size(), mlen = y.size();
  if (n == 0 && mlen == 0) return 0.0;
  std::vector<size_t> prev(mlen + 1), cur(mlen + 1);
  for (size_t j = 0; j <= mlen; ++j) prev[j] = j;
  for (size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= mlen; ++j) {
      size_t sub = prev[j - 1] + (x[i - 1] == y[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return static_cast<double>(prev[mlen]) /
         static_cast<double>(std::max(n, mlen));
}

std::vector<Finding> lint_similar_names(const IdentifierTable& t,
                                        const LintConfig& cfg,
                                        const Dictionary& d,
                                        const std::string& sourceFile) {
  std::vector<Finding> out;
  const auto& es = t.entries;
  std::vector<std::string> phrases(es.size());
  for (size_t i = 0; i < es.size(); ++i)
    phrases[i] = expand_identifier(es[i].name, d).phrase;

  char buf[64];
  for (size_t i = 0; i < es.size(); ++i) {
    for (size_t j = i + 1; j < es.size(); ++j) {
      const SymbolEntry& a = es[i];
      const SymbolEntry& b = es[j];
      std::string reason;
      double dist = normalized_edit_distance(a.name, b.name);
      if (dist <= cfg.similarNameMaxDistance) {
        if (dist == 0.0) {
          reason = "identical names";
        } else {
          std::snprintf(buf, sizeof buf, "%.3f", dist);
          reason = "normalized edit distance " + std::string(buf);
        }
      } else if (!phrases[i].empty() && phrases[i] == phrases[j]) {
        reason = "both expand to '" + phrases[i] + "'";
      } else {
        continue;
      }
      out.push_back(make_finding(
          Category::LangUnclear, Severity::Question, {a.name, b.name},
          "Identifiers '" + a.name + "' (" + symbol_kind_name(a.kind) +
              ") and '" + b.name + "' (" + symbol_kind_name(b.kind) +
              ") are easy to confuse: " + reason +
              ". Do they name distinct concepts on purpose?",
          reason, {sourceFile, a.line}));
    }
  }
  return out;
}

}  // namespace tacit

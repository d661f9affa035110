#include "tacit/qgen.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_map>

#include "tacit/hierarchy.hpp"

namespace tacit {

std::vector<uint64_t> sample_positions(uint64_t n, uint64_t k, uint64_t seed) {
  std::vector<uint64_t> out;
  if (n <= k) {
    out.reserve(n);
    for (uint64_t i = 0; i < n; ++i) out.push_back(i);
    return out;
  }
  // Sparse partial Fisher-Yates: only displaced slots are materialized.
  Xorshift64Star rng(seed);
  std::unordered_map<uint64_t, uint64_t> displaced;
  auto valueAt = [&](uint64_t i) {
    auto it = displaced.find(i);
    return it == displaced.end() ? i : it->second;
  };
  out.reserve(k);
  for (uint64_t i = 0; i < k; ++i) {
    uint64_t j = i + rng.next() % (n - i);
    uint64_t picked = valueAt(j);
    displaced[j] = valueAt(i);
    out.push_back(picked);
  }
  return out;
}

std::vector<std::pair<uint64_t, uint64_t>> sample_pairs(uint64_t n, uint64_t k,
                                                        uint64_t seed) {
  uint64_t total = n < 2 ? 0 : n * (n - 1) / 2;
  std::vector<std::pair<uint64_t, uint64_t>> out;
  auto unrank = [n](uint64_t t) {
    uint64_t i = 0;
    uint64_t rowLen = n - 1;
    while (t >= rowLen) {
      t -= rowLen;
      ++i;
      --rowLen;
    }
    return std::make_pair(i, i + 1 + t);
  };
  for (uint64_t pos : sample_positions(total, k, seed)) out.push_back(unrank(pos));
  return out;
}

namespace {

std::string join(const std::vector<std::string>& xs, const char* sep = ", ") {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i];
  }
  return out;
}

void collectAssignedVars(const std::vector<Action>& actions,
                         std::set<std::string>& out) {
  for (const Action& a : actions)
    if (a.kind == Action::Kind::Assign) out.insert(a.target);
}

}  // namespace

std::vector<Finding> gen_encapsulation(const Model& m, const Budget& b) {
  std::vector<Finding> out;
  Hierarchy hier(m);

  // (a) shared variables crossing region boundaries of a parallel state
  for (int pn : hier.stateNodes()) {
    const Hierarchy::Node& p = hier.node(pn);
    if (p.state->kind != StateKind::Parallel) continue;

    std::map<std::string, std::vector<int>> writers, readers;  // var -> regions
    for (int rn : p.children) {
      std::set<std::string> written, read;
      for (const auto& ref : hier.transitions()) {
        if (ref.sourceNode < 0 || !hier.isAncestorOrSelf(rn, ref.sourceNode))
          continue;
        collectAssignedVars(ref.transition->actions, written);
        if (ref.transition->guard)
          for (const std::string& v : expr_variables(*ref.transition->guard))
            read.insert(v);
      }
      for (int sn : hier.stateNodes()) {
        if (!hier.isAncestorOrSelf(rn, sn)) continue;
        collectAssignedVars(hier.node(sn).state->entryActions, written);
        collectAssignedVars(hier.node(sn).state->exitActions, written);
      }
      for (const std::string& v : written) writers[v].push_back(rn);
      for (const std::string& v : read) readers[v].push_back(rn);
    }

    for (const Variable& var : m.variables) {
      auto w = writers.find(var.name);
      auto r = readers.find(var.name);
      if (w == writers.end() || r == readers.end()) continue;
      bool crosses = false;
      for (int wr : w->second)
        for (int rd : r->second)
          if (wr != rd) crosses = true;
      if (!crosses) continue;
      std::vector<std::string> wNames, rNames;
      for (int rn : w->second) wNames.push_back(hier.node(rn).name);
      for (int rn : r->second) rNames.push_back(hier.node(rn).name);
      out.push_back(make_finding(
          Category::SpecAbstraction, Severity::Question, {var.name, p.name},
          "Variable '" + var.name + "' couples orthogonal regions of '" +
              p.name + "': it is written in region(s) " + join(wNames) +
              " and read in guard(s) in region(s) " + join(rNames) +
              ". Is this shared-variable dependency part of each region's "
              "documented interface?",
          "written in: " + join(wNames) + "; read in: " + join(rNames),
          {m.sourceFile, p.state->line}));
    }
  }

  // (b) sampled member pairs within each entity set
  uint64_t remaining = b.maxQuestionsPerCheck;
  for (const EntitySet& s : m.sets) {
    if (remaining == 0) break;
    auto pairs = sample_pairs(s.members.size(), remaining, b.seed);
    remaining -= pairs.size();
    for (const auto& [i, j] : pairs) {
      const std::string& a = s.members[i].first;
      const std::string& c = s.members[j].first;
      out.push_back(make_finding(
          Category::SpecAbstraction, Severity::Question, {a, c},
          "Members '" + a + "' and '" + c + "' of set '" + s.name +
              "' are modeled as interchangeable. Do their real-world "
              "differences require differentiated treatment anywhere?",
          "sampled member pair of set '" + s.name + "'",
          {m.sourceFile, s.line}));
    }
  }
  return out;
}

std::vector<Finding> gen_disjointness(const Model& m, const Budget& b) {
  std::vector<Finding> out;

  // (a) declared-disjoint pairs sharing members
  for (size_t i = 0; i < m.sets.size(); ++i) {
    for (size_t j = i + 1; j < m.sets.size(); ++j) {
      const EntitySet& a = m.sets[i];
      const EntitySet& c = m.sets[j];
      bool declared = std::find(a.declaredDisjointWith.begin(),
                                a.declaredDisjointWith.end(),
                                c.name) != a.declaredDisjointWith.end();
      if (!declared) continue;
      std::vector<std::string> shared;
      for (const auto& [member, line] : a.members)
        for (const auto& [other, line2] : c.members)
          if (member == other) shared.push_back(member);
      if (shared.empty()) continue;
      out.push_back(make_finding(
          Category::SpecOrthogonality, Severity::Violation, {a.name, c.name},
          "Sets '" + a.name + "' and '" + c.name +
              "' are declared disjoint but share member(s): " + join(shared) +
              ". Which set do the shared members truly belong to, or is the "
              "disjointness assumption itself wrong?",
          "shared members: " + join(shared), {m.sourceFile, a.line}));
    }
  }

  // (b) sampled pairs of sets not declared disjoint
  {
    std::vector<std::pair<size_t, size_t>> pool;
    for (size_t i = 0; i < m.sets.size(); ++i) {
      for (size_t j = i + 1; j < m.sets.size(); ++j) {
        const EntitySet& a = m.sets[i];
        bool declared = std::find(a.declaredDisjointWith.begin(),
                                  a.declaredDisjointWith.end(),
                                  m.sets[j].name) != a.declaredDisjointWith.end();
        if (!declared) pool.emplace_back(i, j);
      }
    }
    for (uint64_t pos :
         sample_positions(pool.size(), b.maxQuestionsPerCheck, b.seed)) {
      const EntitySet& a = m.sets[pool[pos].first];
      const EntitySet& c = m.sets[pool[pos].second];
      out.push_back(make_finding(
          Category::SpecOrthogonality, Severity::Question, {a.name, c.name},
          "Sets '" + a.name + "' and '" + c.name +
              "' are not declared disjoint. Could a member of one also belong "
              "to the other, and is such an overlap handled?",
          "no disjointness declared between the sets",
          {m.sourceFile, a.line}));
    }
  }

  // (c) sampled sibling-state pairs within each OR scope
  {
    Hierarchy hier(m);
    struct Scope {
      std::vector<std::string> children;
      std::string desc;
      int line;
    };
    std::vector<Scope> scopes;
    auto scopeOf = [&](int node) {
      const Hierarchy::Node& n = hier.node(node);
      Scope sc;
      for (int ch : n.children)
        if (hier.node(ch).kind == Hierarchy::NodeKind::State)
          sc.children.push_back(hier.node(ch).name);
      if (n.kind == Hierarchy::NodeKind::Root) {
        sc.desc = "the top-level scope";
        sc.line = m.line;
      } else if (n.kind == Hierarchy::NodeKind::Region) {
        sc.desc = "region '" + n.regionPath + "'";
        sc.line = n.region->line;
      } else {
        sc.desc = "compound state '" + n.name + "'";
        sc.line = n.state->line;
      }
      return sc;
    };
    scopes.push_back(scopeOf(0));
    for (int sn : hier.stateNodes())
      if (hier.node(sn).state->kind == StateKind::Compound)
        scopes.push_back(scopeOf(sn));
    for (int rn : hier.scopeRegions())
      if (rn != 0) scopes.push_back(scopeOf(rn));

    uint64_t remaining = b.maxQuestionsPerCheck;
    for (const Scope& sc : scopes) {
      if (remaining == 0) break;
      auto pairs = sample_pairs(sc.children.size(), remaining, b.seed);
      remaining -= pairs.size();
      for (const auto& [i, j] : pairs) {
        const std::string& a = sc.children[i];
        const std::string& c = sc.children[j];
        out.push_back(make_finding(
            Category::SpecOrthogonality, Severity::Question, {a, c},
            "Sibling states '" + a + "' and '" + c + "' of " + sc.desc +
                " are assumed mutually exclusive. Could the real-world "
                "conditions they model hold at the same time?",
            "sampled sibling pair in " + sc.desc, {m.sourceFile, sc.line}));
      }
    }
  }
  return out;
}

std::vector<Finding> gen_containment(const Model& m) {
  std::vector<Finding> out;
  Hierarchy hier(m);
  for (const auto& ref : hier.transitions()) {
    if (ref.sourceNode < 0) continue;
    const Hierarchy::Node& src = hier.node(ref.sourceNode);
    if (src.state->kind == StateKind::Basic) continue;
    const Transition& t = *ref.transition;
    std::string onEvent = t.event ? "on event '" + *t.event + "'"
                                  : "spontaneously";
    for (int bn : hier.basicStates()) {
      if (!hier.isAncestorOrSelf(ref.sourceNode, bn)) continue;
      const Hierarchy::Node& d = hier.node(bn);
      bool asym = !d.state->entryActions.empty() && d.state->exitActions.empty();
      std::vector<std::string> subjects = {src.name, d.name};
      if (t.event) subjects.push_back(*t.event);
      out.push_back(make_finding(
          Category::SpecContainment,
          asym ? Severity::Warning : Severity::Question, std::move(subjects),
          "Transition '" + t.source + "' -> '" + t.target + "' (" + onEvent +
              ") exits '" + src.name + "' from any of its substates. If it "
              "fires while '" + d.name + "' is active, does leaving '" +
              d.name + "' need special handling or cleanup?",
          asym ? "substate '" + d.name +
                     "' declares entry actions but no exit actions"
               : "substate of exited scope '" + src.name + "'",
          {m.sourceFile, t.line}));
    }
  }
  return out;
}

std::vector<Finding> gen_atomicity(const Model& m) {
  std::vector<Finding> out;
  Hierarchy hier(m);
  for (const auto& ref : hier.transitions()) {
    const Transition& t = *ref.transition;
    bool controlChanges = t.source != t.target;
    std::set<std::string> assigned;
    collectAssignedVars(t.actions, assigned);
    bool flagged = (controlChanges && !assigned.empty()) || assigned.size() >= 2;
    if (!flagged) continue;
    std::vector<std::string> changed;
    if (controlChanges) changed.push_back("control location");
    for (const std::string& v : assigned) changed.push_back(v);
    std::vector<std::string> subjects = {t.source, t.target};
    if (t.event) subjects.push_back(*t.event);
    out.push_back(make_finding(
        Category::SpecAtomicity, Severity::Question, std::move(subjects),
        "Transition '" + t.source + "' -> '" + t.target + "' changes " +
            std::to_string(changed.size()) +
            " state variables in one atomic step (" + join(changed) +
            "). If the step can be observed or interrupted part-way, how is "
            "a partially completed transition handled?",
        "changes: " + join(changed), {m.sourceFile, t.line}));
  }
  return out;
}

std::vector<Finding> gen_entity_relations(const Model& m, const Budget& b) {
  std::vector<Finding> out;
  for (const auto& [i, j] :
       sample_pairs(m.sets.size(), b.maxQuestionsPerCheck, b.seed)) {
    const EntitySet& a = m.sets[i];
    const EntitySet& c = m.sets[j];
    std::string exemplar;
    if (!a.members.empty() && !c.members.empty())
      exemplar = "; e.g. between members '" + a.members.front().first +
                 "' and '" + c.members.front().first + "'";
    out.push_back(make_finding(
        Category::SpecCompleteness, Severity::Question, {a.name, c.name},
        "Do sets '" + a.name + "' and '" + c.name +
            "' have a relationship that the model leaves unspecified?",
        "sampled set pair" + exemplar, {m.sourceFile, a.line}));
  }
  return out;
}

}  // namespace tacit

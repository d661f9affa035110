#include "tacit/reach.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "tacit/hierarchy.hpp"
#include "tacit/validate.hpp"

namespace tacit {

namespace {

constexpr uint64_t kSat = UINT64_MAX;
constexpr size_t kMaxQueueDepth = 16;

uint64_t satMul(uint64_t a, uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSat / b) return kSat;
  return a * b;
}

uint64_t satAdd(uint64_t a, uint64_t b) {
  return a > kSat - b ? kSat : a + b;
}

uint64_t controlCount(const State& s);

uint64_t regionCount(const Region& r) {
  uint64_t sum = 0;
  for (const State& child : r.children) sum = satAdd(sum, controlCount(child));
  return sum == 0 ? 1 : sum;
}

uint64_t controlCount(const State& s) {
  switch (s.kind) {
    case StateKind::Basic: return 1;
    case StateKind::Compound: {
      uint64_t sum = 0;
      for (const State& child : s.children)
        sum = satAdd(sum, controlCount(child));
      return sum == 0 ? 1 : sum;
    }
    case StateKind::Parallel: {
      uint64_t prod = 1;
      for (const Region& r : s.regions) prod = satMul(prod, regionCount(r));
      return prod;
    }
  }
  return 1;
}

// Compact encoding: bools 0/1, enums by literal index, ints by value.
struct Domains {
  explicit Domains(const Model& m) {
    for (const Variable& v : m.variables) vars.push_back(&v);
  }

  int64_t encode(size_t var, const Literal& l) const {
    const VarDomain& d = vars[var]->domain;
    switch (d.kind) {
      case VarDomain::Kind::Bool: return l.boolValue ? 1 : 0;
      case VarDomain::Kind::Int: return l.intValue;
      case VarDomain::Kind::Enum: {
        auto it = std::find(d.literals.begin(), d.literals.end(), l.symbol);
        return it - d.literals.begin();
      }
    }
    return 0;
  }

  std::string decode(size_t var, int64_t value) const {
    const VarDomain& d = vars[var]->domain;
    switch (d.kind) {
      case VarDomain::Kind::Bool: return value ? "true" : "false";
      case VarDomain::Kind::Int: return std::to_string(value);
      case VarDomain::Kind::Enum: return d.literals[static_cast<size_t>(value)];
    }
    return "";
  }

  int indexOf(const std::string& name) const {
    for (size_t i = 0; i < vars.size(); ++i)
      if (vars[i]->name == name) return static_cast<int>(i);
    return -1;
  }

  std::vector<const Variable*> vars;
};

using Valuation = std::vector<int64_t>;

int64_t operandCompact(const Expr& e, const Domains& doms, const Valuation& v,
                       int varHint) {
  if (e.op == Expr::Op::Var) return v[static_cast<size_t>(doms.indexOf(e.var))];
  // Literal: encode against the variable on the other side when enum-typed.
  switch (e.lit.kind) {
    case Literal::Kind::Bool: return e.lit.boolValue ? 1 : 0;
    case Literal::Kind::Int: return e.lit.intValue;
    case Literal::Kind::Symbol: {
      const VarDomain& d = doms.vars[static_cast<size_t>(varHint)]->domain;
      auto it = std::find(d.literals.begin(), d.literals.end(), e.lit.symbol);
      return it - d.literals.begin();
    }
  }
  return 0;
}

bool evalCompact(const Expr& e, const Domains& doms, const Valuation& v) {
  switch (e.op) {
    case Expr::Op::Var:
      return v[static_cast<size_t>(doms.indexOf(e.var))] != 0;
    case Expr::Op::Lit:
      return e.lit.boolValue;
    case Expr::Op::Not:
      return !evalCompact(*e.lhs, doms, v);
    case Expr::Op::And:
      return evalCompact(*e.lhs, doms, v) && evalCompact(*e.rhs, doms, v);
    case Expr::Op::Or:
      return evalCompact(*e.lhs, doms, v) || evalCompact(*e.rhs, doms, v);
    default: {
      int hint = -1;
      if (e.lhs->op == Expr::Op::Var) hint = doms.indexOf(e.lhs->var);
      if (hint < 0 && e.rhs->op == Expr::Op::Var) hint = doms.indexOf(e.rhs->var);
      int64_t a = operandCompact(*e.lhs, doms, v, hint);
      int64_t b = operandCompact(*e.rhs, doms, v, hint);
      switch (e.op) {
        case Expr::Op::Eq: return a == b;
        case Expr::Op::Ne: return a != b;
        case Expr::Op::Lt: return a < b;
        case Expr::Op::Le: return a <= b;
        case Expr::Op::Gt: return a > b;
        case Expr::Op::Ge: return a >= b;
        default: return false;
      }
    }
  }
}

struct Node {
  std::vector<int> leaves;  // sorted basic-state hierarchy nodes
  Valuation vals;
  std::vector<int> queue;  // pending emitted events (alphabet indices)

  friend bool operator==(const Node& a, const Node& b) {
    return a.leaves == b.leaves && a.vals == b.vals && a.queue == b.queue;
  }
};

struct NodeHash {
  size_t operator()(const Node& n) const {
    uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](uint64_t x) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    for (int l : n.leaves) mix(static_cast<uint64_t>(l));
    mix(0xffffffffULL);
    for (int64_t v : n.vals) mix(static_cast<uint64_t>(v));
    mix(0xfffffffeULL);
    for (int e : n.queue) mix(static_cast<uint64_t>(e));
    return static_cast<size_t>(h);
  }
};

struct ProjHash {
  size_t operator()(const std::pair<std::vector<int>, Valuation>& p) const {
    Node n;
    n.leaves = p.first;
    n.vals = p.second;
    return NodeHash{}(n);
  }
};

class Explorer {
 public:
  Explorer(const Model& m, const ExploreLimits& limits)
      : model_(m), limits_(limits), hier_(m), doms_(m) {
    for (size_t i = 0; i < m.events.size(); ++i)
      eventIndex_.emplace(m.events[i].name, static_cast<int>(i));
  }

  ReachSet run() {
    ReachSet out;
    Node init;
    completeEnter(rootInitial(), init.leaves, nullptr);
    std::sort(init.leaves.begin(), init.leaves.end());
    for (size_t i = 0; i < doms_.vars.size(); ++i)
      init.vals.push_back(doms_.encode(i, doms_.vars[i]->initial));

    std::unordered_set<Node, NodeHash> visited;
    std::unordered_set<std::pair<std::vector<int>, Valuation>, ProjHash> configs;
    std::deque<Node> frontier;
    visited.insert(init);
    configs.insert({init.leaves, init.vals});
    frontier.push_back(init);

    uint64_t steps = 0;
    bool exhausted = true;
    while (!frontier.empty()) {
      Node cur = frontier.front();
      frontier.pop_front();

      std::vector<int> stimuli;  // -1 denotes the spontaneous step
      if (!cur.queue.empty()) {
        stimuli.push_back(cur.queue.front());
      } else {
        stimuli.push_back(-1);
        for (size_t i = 0; i < model_.events.size(); ++i)
          stimuli.push_back(static_cast<int>(i));
      }

      for (int stim : stimuli) {
        if (steps >= limits_.maxSteps) {
          exhausted = false;
          frontier.clear();
          break;
        }
        ++steps;
        Node next = macroStep(cur, stim, out.firedTransitions);
        if (next.queue.size() > kMaxQueueDepth) {
          exhausted = false;  // run-to-completion queue overflow
          continue;
        }
        if (!visited.insert(next).second) continue;
        if (!configs.count({next.leaves, next.vals})) {
          if (configs.size() >= limits_.maxConfigurations) {
            exhausted = false;
            frontier.clear();
            break;
          }
          configs.insert({next.leaves, next.vals});
        }
        frontier.push_back(std::move(next));
      }
    }

    out.exhausted = exhausted;
    for (const auto& [leaves, vals] : configs)
      out.configurations.push_back(render(leaves, vals));
    std::sort(out.configurations.begin(), out.configurations.end());
    return out;
  }

 private:
  int rootInitial() const { return hier_.node(0).initialChild; }

  // Activates a state and its mandatory descendants (initial children of
  // compound states, all regions of parallel states).
  void completeEnter(int node, std::vector<int>& leaves,
                     std::vector<int>* entered) {
    if (node < 0) return;
    const Hierarchy::Node& n = hier_.node(node);
    if (entered) entered->push_back(node);
    switch (n.state->kind) {
      case StateKind::Basic:
        leaves.push_back(node);
        break;
      case StateKind::Compound:
        completeEnter(n.initialChild, leaves, entered);
        break;
      case StateKind::Parallel:
        for (int r : n.children)
          completeEnter(hier_.node(r).initialChild, leaves, entered);
        break;
    }
  }

  Node macroStep(const Node& cur, int stim, std::set<int>& fired) {
    // Active set: leaves plus every ancestor state.
    std::vector<char> active(hier_.nodes().size(), 0);
    for (int leaf : cur.leaves)
      for (int n = leaf; n >= 0; n = hier_.node(n).parent) active[static_cast<size_t>(n)] = 1;

    struct Candidate {
      const Hierarchy::TransitionRef* ref;
      int mainSrc;
      int depth;
    };
    std::vector<Candidate> candidates;
    for (const auto& ref : hier_.transitions()) {
      if (ref.sourceNode < 0 || ref.targetNode < 0) continue;
      if (!active[static_cast<size_t>(ref.sourceNode)]) continue;
      const Transition& t = *ref.transition;
      if (t.event) {
        if (stim < 0 || model_.events[static_cast<size_t>(stim)].name != *t.event)
          continue;
      } else if (stim >= 0) {
        continue;  // eventless transitions fire only on the spontaneous step
      }
      if (t.guard && !evalCompact(*t.guard, doms_, cur.vals)) continue;
      candidates.push_back(
          {&ref, mainSource(ref.sourceNode, ref.targetNode),
           hier_.node(ref.sourceNode).depth});
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) {
                if (a.depth != b.depth) return a.depth > b.depth;
                return a.ref->docIndex < b.ref->docIndex;
              });

    std::vector<Candidate> selected;
    for (const Candidate& c : candidates) {
      const auto& cn = hier_.node(c.mainSrc);
      bool conflict = false;
      for (const Candidate& s : selected) {
        const auto& sn = hier_.node(s.mainSrc);
        if (cn.tin < sn.tout && sn.tin < cn.tout) {
          conflict = true;
          break;
        }
      }
      if (!conflict) selected.push_back(c);
    }

    Node next;
    next.vals = cur.vals;

    std::vector<int> exitedStates;
    std::vector<int> enteredStates;
    std::vector<int> newLeaves;
    for (int leaf : cur.leaves) {
      bool exited = false;
      for (const Candidate& s : selected) {
        if (hier_.isAncestorOrSelf(s.mainSrc, leaf)) {
          exited = true;
          break;
        }
      }
      if (!exited) newLeaves.push_back(leaf);
    }
    for (const Candidate& s : selected) {
      for (int n : hier_.stateNodes())
        if (active[static_cast<size_t>(n)] && hier_.isAncestorOrSelf(s.mainSrc, n))
          exitedStates.push_back(n);
      enterTarget(s, newLeaves, enteredStates);
      fired.insert(s.ref->docIndex);
    }
    std::sort(newLeaves.begin(), newLeaves.end());
    newLeaves.erase(std::unique(newLeaves.begin(), newLeaves.end()),
                    newLeaves.end());
    next.leaves = std::move(newLeaves);

    // All assignments and emits apply after all fires, in document order.
    std::vector<const Action*> actions;
    for (int n : exitedStates)
      for (const Action& a : hier_.node(n).state->exitActions)
        actions.push_back(&a);
    for (const Candidate& s : selected)
      for (const Action& a : s.ref->transition->actions) actions.push_back(&a);
    for (int n : enteredStates)
      for (const Action& a : hier_.node(n).state->entryActions)
        actions.push_back(&a);
    std::sort(actions.begin(), actions.end(),
              [](const Action* a, const Action* b) {
                return a->docIndex < b->docIndex;
              });

    next.queue.assign(cur.queue.begin() + (cur.queue.empty() ? 0 : 1),
                      cur.queue.end());
    for (const Action* a : actions) {
      if (a->kind == Action::Kind::Assign) {
        int vi = doms_.indexOf(a->target);
        if (vi >= 0)
          next.vals[static_cast<size_t>(vi)] =
              doms_.encode(static_cast<size_t>(vi), a->value);
      } else {
        auto it = eventIndex_.find(a->target);
        if (it != eventIndex_.end()) next.queue.push_back(it->second);
      }
    }
    return next;
  }

  int mainSource(int src, int tgt) const {
    if (src == tgt) return src;
    int l = hier_.lowestCommonAncestor(src, tgt);
    if (l == src) return src;
    if (l == tgt) return tgt;
    int x = src;
    while (hier_.node(x).parent != l) x = hier_.node(x).parent;
    return x;
  }

  void enterTarget(const auto& sel, std::vector<int>& leaves,
                   std::vector<int>& entered) {
    int tgt = sel.ref->targetNode;
    int scope = hier_.node(sel.mainSrc).parent;
    // Path from the re-entry scope (exclusive) down to the target.
    std::vector<int> path;
    for (int n = tgt; n != scope && n >= 0; n = hier_.node(n).parent)
      path.push_back(n);
    std::reverse(path.begin(), path.end());
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      const Hierarchy::Node& n = hier_.node(path[i]);
      if (n.kind == Hierarchy::NodeKind::State) {
        entered.push_back(path[i]);
        if (n.state->kind == StateKind::Parallel) {
          // Regions off the target path enter through their initial child.
          for (int r : n.children)
            if (r != path[i + 1])
              completeEnter(hier_.node(r).initialChild, leaves, &entered);
        }
      }
    }
    completeEnter(path.empty() ? tgt : path.back(), leaves, &entered);
  }

  Configuration render(const std::vector<int>& leaves,
                       const Valuation& vals) const {
    Configuration c;
    for (int leaf : leaves) {
      int region = hier_.enclosingRegion(leaf);
      c.controls[hier_.node(region).regionPath] = hier_.node(leaf).name;
    }
    for (size_t i = 0; i < vals.size(); ++i)
      c.valuation[doms_.vars[i]->name] = doms_.decode(i, vals[i]);
    return c;
  }

  const Model& model_;
  ExploreLimits limits_;
  Hierarchy hier_;
  Domains doms_;
  std::unordered_map<std::string, int> eventIndex_;
};

}  // namespace

uint64_t product_space_bound(const Model& m) {
  uint64_t control = 0;
  for (const State& s : m.topStates) control = satAdd(control, controlCount(s));
  if (control == 0) control = 1;
  uint64_t total = control;
  for (const Variable& v : m.variables) total = satMul(total, v.domain.size());
  return total;
}

ReachSet explore(const Model& m, const ExploreLimits& limits) {
  uint64_t bound = product_space_bound(m);
  if (bound > limits.maxConfigurations)
    throw ProductTooLarge(bound, limits.maxConfigurations);
  Explorer e(m, limits);
  return e.run();
}

namespace {

std::string joinNames(const std::vector<std::string>& names) {
  std::string out;
  for (size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  return out;
}

std::string exploreEvidence(const ReachSet& r) {
  return "explored " + std::to_string(r.configurations.size()) +
         (r.exhausted ? " configurations (exhaustive)"
                      : " configurations (exploration stopped at a limit)");
}

}  // namespace

std::vector<Finding> unreachable_composites(const Model& m, const ReachSet& r) {
  std::vector<Finding> out;
  Hierarchy hier(m);
  for (int pn : hier.stateNodes()) {
    const Hierarchy::Node& p = hier.node(pn);
    if (p.state->kind != StateKind::Parallel) continue;

    const std::vector<int>& regionNodes = p.children;
    std::set<std::vector<std::string>> reached;
    for (const Configuration& c : r.configurations) {
      std::vector<int> leafNodes;
      bool activeHere = false;
      for (const auto& [path, leafName] : c.controls) {
        int ln = hier.stateNode(leafName);
        leafNodes.push_back(ln);
        if (hier.isAncestorOrSelf(pn, ln)) activeHere = true;
      }
      if (!activeHere) continue;
      std::vector<std::string> combo;
      for (int rn : regionNodes) {
        for (int ln : leafNodes) {
          if (!hier.isAncestorOrSelf(rn, ln)) continue;
          int x = ln;
          while (hier.node(x).parent != rn) x = hier.node(x).parent;
          combo.push_back(hier.node(x).name);
          break;
        }
      }
      reached.insert(combo);
    }

    // Enumerate the product of direct region children in declaration order.
    std::vector<size_t> odo(regionNodes.size(), 0);
    bool done = regionNodes.empty();
    while (!done) {
      std::vector<std::string> combo;
      for (size_t i = 0; i < regionNodes.size(); ++i) {
        const auto& rchildren = hier.node(regionNodes[i]).children;
        if (odo[i] >= rchildren.size()) {
          combo.clear();
          break;
        }
        combo.push_back(hier.node(rchildren[odo[i]]).name);
      }
      if (!combo.empty() && !reached.count(combo)) {
        out.push_back(make_finding(
            Category::SpecOrthogonality,
            r.exhausted ? Severity::Warning : Severity::Question, combo,
            "Composite state (" + joinNames(combo) + ") of parallel state '" +
                p.name +
                "' was never reached. Is it intended to be unreachable, and "
                "is that expectation documented, or does it reflect a hidden "
                "assumption?",
            exploreEvidence(r), {m.sourceFile, p.state->line}));
      }
      // advance odometer
      size_t i = 0;
      for (; i < regionNodes.size(); ++i) {
        const auto& rchildren = hier.node(regionNodes[i]).children;
        if (++odo[i] < rchildren.size()) break;
        odo[i] = 0;
      }
      done = i == regionNodes.size();
    }
  }
  return out;
}

std::vector<Finding> completeness_anomalies(const Model& m, const ReachSet& r) {
  std::vector<Finding> out;
  Hierarchy hier(m);

  std::set<std::string> activeLeaves;
  for (const Configuration& c : r.configurations)
    for (const auto& [path, leafName] : c.controls) activeLeaves.insert(leafName);

  for (int bn : hier.basicStates()) {
    const Hierarchy::Node& b = hier.node(bn);
    if (activeLeaves.count(b.name)) continue;
    out.push_back(make_finding(
        Category::SpecCompleteness,
        r.exhausted ? Severity::Warning : Severity::Question, {b.name},
        "State '" + b.name +
            "' is never active in any explored configuration. Can the system "
            "actually reach it, or is its unreachability an undocumented "
            "assumption?",
        exploreEvidence(r), {m.sourceFile, b.state->line}));
  }

  std::set<int> sourceNodes;
  for (const auto& ref : hier.transitions())
    if (ref.sourceNode >= 0) sourceNodes.insert(ref.sourceNode);
  for (int sn : hier.stateNodes()) {
    bool escapable = false;
    for (int src : sourceNodes) {
      if (hier.isAncestorOrSelf(src, sn)) {
        escapable = true;
        break;
      }
    }
    if (escapable) continue;
    const Hierarchy::Node& s = hier.node(sn);
    out.push_back(make_finding(
        Category::SpecCompleteness, Severity::Question, {s.name},
        "State '" + s.name +
            "' has no outgoing transition in its own scope or any enclosing "
            "one. Does the condition it models truly have no exit, or are "
            "exits missing?",
        "no transition leaves this state or an ancestor",
        {m.sourceFile, s.state->line}));
  }

  std::set<std::string> firedEvents;
  for (int docIdx : r.firedTransitions) {
    for (const auto& ref : hier.transitions()) {
      if (ref.docIndex == docIdx && ref.transition->event)
        firedEvents.insert(*ref.transition->event);
    }
  }
  for (const EventInfo& e : m.events) {
    if (firedEvents.count(e.name)) continue;
    out.push_back(make_finding(
        Category::SpecCompleteness,
        r.exhausted ? Severity::Warning : Severity::Question, {e.name},
        "Event '" + e.name +
            "' never labels a transition fired during exploration. Is the "
            "event vestigial, is its consumer missing, or is it meant for "
            "the environment only?",
        exploreEvidence(r), {m.sourceFile, e.firstLine}));
  }
  return out;
}

}  // namespace tacit

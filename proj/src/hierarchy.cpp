#include "tacit/hierarchy.hpp"

#include <algorithm>

namespace tacit {

Hierarchy::Hierarchy(const Model& m) {
  Node root;
  root.kind = NodeKind::Root;
  root.regionPath = "";
  addNode(root);
  regionNodes_.push_back(0);
  for (const State& s : m.topStates) addState(s, 0);
  if (!m.topStates.empty())
    nodes_[0].initialChild = stateNode(m.topStates.front().name);

  auto addTransitions = [&](const std::vector<Transition>& ts) {
    for (const Transition& t : ts) {
      TransitionRef ref;
      ref.transition = &t;
      ref.sourceNode = stateNode(t.source);
      ref.targetNode = stateNode(t.target);
      ref.docIndex = t.docIndex;
      transitions_.push_back(ref);
    }
  };
  // Gather transitions from every scope, then restore document order.
  addTransitions(m.topTransitions);
  for (int i : stateNodes_) {
    addTransitions(nodes_[i].state->transitions);
    for (const Region& r : nodes_[i].state->regions) addTransitions(r.transitions);
  }
  std::sort(transitions_.begin(), transitions_.end(),
            [](const TransitionRef& a, const TransitionRef& b) {
              return a.docIndex < b.docIndex;
            });

  int clock = 0;
  finishIntervals(0, clock);
}

int Hierarchy::addNode(Node n) {
  int idx = static_cast<int>(nodes_.size());
  if (n.parent >= 0) {
    n.depth = nodes_[n.parent].depth + 1;
    nodes_[n.parent].children.push_back(idx);
  }
  nodes_.push_back(std::move(n));
  return idx;
}

void Hierarchy::addState(const State& s, int parent) {
  Node n;
  n.kind = NodeKind::State;
  n.name = s.name;
  n.parent = parent;
  n.state = &s;
  int idx = addNode(std::move(n));
  stateIndex_.emplace(s.name, idx);
  stateNodes_.push_back(idx);
  if (s.kind == StateKind::Basic) basicStates_.push_back(idx);
  for (const State& child : s.children) addState(child, idx);
  if (s.kind == StateKind::Compound && !s.initialDecls.empty())
    nodes_[idx].initialChild = stateNode(s.initialDecls.front().first);
  for (const Region& r : s.regions) addRegion(r, idx, s.name);
}

void Hierarchy::addRegion(const Region& r, int parent,
                          const std::string& parallelName) {
  Node n;
  n.kind = NodeKind::Region;
  n.name = r.name;
  n.parent = parent;
  n.region = &r;
  const std::string& parentPath = nodes_[enclosingRegionOfNode(parent)].regionPath;
  n.regionPath = (parentPath.empty() ? "" : parentPath + "/") + parallelName +
                 "." + r.name;
  int idx = addNode(std::move(n));
  regionNodes_.push_back(idx);
  for (const State& child : r.children) addState(child, idx);
  if (!r.initialDecls.empty())
    nodes_[idx].initialChild = stateNode(r.initialDecls.front().first);
}

void Hierarchy::finishIntervals(int node, int& clock) {
  nodes_[node].tin = clock++;
  for (int child : nodes_[node].children) finishIntervals(child, clock);
  nodes_[node].tout = clock++;
}

int Hierarchy::stateNode(const std::string& name) const {
  auto it = stateIndex_.find(name);
  return it == stateIndex_.end() ? -1 : it->second;
}

int Hierarchy::lowestCommonAncestor(int a, int b) const {
  while (nodes_[a].depth > nodes_[b].depth) a = nodes_[a].parent;
  while (nodes_[b].depth > nodes_[a].depth) b = nodes_[b].parent;
  while (a != b) {
    a = nodes_[a].parent;
    b = nodes_[b].parent;
  }
  return a;
}

int Hierarchy::enclosingRegion(int stateNode) const {
  int n = nodes_[stateNode].parent;
  while (n >= 0 && nodes_[n].kind == NodeKind::State) n = nodes_[n].parent;
  return n < 0 ? 0 : n;
}

int Hierarchy::enclosingRegionOfNode(int node) const {
  while (node >= 0 && nodes_[node].kind == NodeKind::State)
    node = nodes_[node].parent;
  return node < 0 ? 0 : node;
}

}  // namespace tacit

#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "tacit/ast.hpp"

namespace tacit {

/// Flattened view of the state tree. Node 0 is the implicit root scope (an
/// OR composition whose initial child is the first top-level state). States
/// and regions become nodes; parent/depth and Euler-tour intervals support
/// O(1) ancestor tests. Requires a validated model.
class Hierarchy {
 public:
  enum class NodeKind { Root, State, Region };

  struct Node {
    NodeKind kind = NodeKind::Root;
    std::string name;
    int parent = -1;
    int depth = 0;
    const State* state = nullptr;    // NodeKind::State
    const Region* region = nullptr;  // NodeKind::Region
    std::vector<int> children;       // child nodes in declaration order
    int initialChild = -1;           // OR scopes (root, compound, region)
    std::string regionPath;          // root/region nodes: canonical path
    int tin = 0, tout = 0;           // Euler interval, [tin, tout)
  };

  struct TransitionRef {
    const Transition* transition = nullptr;
    int sourceNode = -1;  // -1 when the source name is unknown
    int targetNode = -1;
    int docIndex = 0;
  };

  explicit Hierarchy(const Model& m);

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(int i) const { return nodes_[i]; }

  /// State node index by name; -1 when absent.
  int stateNode(const std::string& name) const;

  /// All transitions in document order, with resolved endpoints.
  const std::vector<TransitionRef>& transitions() const { return transitions_; }

  /// Root and region nodes in document order.
  const std::vector<int>& scopeRegions() const { return regionNodes_; }

  /// Basic-state nodes in document order.
  const std::vector<int>& basicStates() const { return basicStates_; }

  /// All state nodes in document order.
  const std::vector<int>& stateNodes() const { return stateNodes_; }

  bool isAncestorOrSelf(int a, int b) const {
    return nodes_[a].tin <= nodes_[b].tin && nodes_[b].tout <= nodes_[a].tout;
  }

  int lowestCommonAncestor(int a, int b) const;

  /// Innermost enclosing region (or root) node of a state node.
  int enclosingRegion(int stateNode) const;

  /// Innermost region (or root) containing the given node itself.
  int enclosingRegionOfNode(int node) const;

 private:
  int addNode(Node n);
  void addState(const State& s, int parent);
  void addRegion(const Region& r, int parent, const std::string& parallelName);
  void finishIntervals(int node, int& clock);

  std::vector<Node> nodes_;
  std::unordered_map<std::string, int> stateIndex_;
  std::vector<TransitionRef> transitions_;
  std::vector<int> regionNodes_;
  std::vector<int> basicStates_;
  std::vector<int> stateNodes_;
};

}  // namespace tacit

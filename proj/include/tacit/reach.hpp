#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tacit/ast.hpp"
#include "tacit/errors.hpp"
#include "tacit/finding.hpp"

namespace tacit {

/// A global system snapshot: the active basic state of every active region
/// (keyed by canonical region path, "" for the root scope) plus a full
/// variable valuation rendered as literal text.
struct Configuration {
  std::map<std::string, std::string> controls;
  std::map<std::string, std::string> valuation;

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.controls == b.controls && a.valuation == b.valuation;
  }
  friend bool operator<(const Configuration& a, const Configuration& b) {
    if (a.controls != b.controls) return a.controls < b.controls;
    return a.valuation < b.valuation;
  }
};

struct ExploreLimits {
  uint64_t maxConfigurations = 1'000'000;
  uint64_t maxSteps = 10'000'000;
};

struct ReachSet {
  std::vector<Configuration> configurations;  // canonical sorted order
  std::set<int> firedTransitions;             // docIndex of fired transitions
  bool exhausted = true;                      // false when a limit stopped us
};

/// Saturating static bound on |control states| x |valuations|.
uint64_t product_space_bound(const Model& m);

/// Breadth-first fixed point from the initial configuration under macro-step
/// semantics: the environment may offer any alphabet event (or a spontaneous
/// step enabling only eventless transitions); per macro-step at most one
/// enabled transition fires per orthogonal region, innermost source first
/// then document order, and all regions with an enabled transition fire
/// synchronously; assignments apply after all fires in document order;
/// emitted events queue up (depth 16) and are consumed before fresh
/// environment events. Deterministic. Throws ProductTooLarge when the static
/// bound exceeds limits.maxConfigurations; returns exhausted=false when a
/// limit interrupts exploration.
ReachSet explore(const Model& m, const ExploreLimits& limits = {});

/// For each parallel state, one SPEC_ORTHOGONALITY finding per combination
/// of direct region children that was never reached.
std::vector<Finding> unreachable_composites(const Model& m, const ReachSet& r);

/// SPEC_COMPLETENESS findings: never-active basic states, sink states with
/// no outgoing transition in scope, and alphabet events that never label a
/// fired transition.
std::vector<Finding> completeness_anomalies(const Model& m, const ReachSet& r);

}  // namespace tacit

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tacit/ast.hpp"
#include "tacit/finding.hpp"

namespace tacit {

/// Normative PRNG for sampling budgets, pinned for cross-implementation
/// determinism. Seed 0 is replaced by 0x9E3779B97F4A7C15.
class Xorshift64Star {
 public:
  explicit Xorshift64Star(uint64_t seed)
      : s_(seed ? seed : 0x9E3779B97F4A7C15ULL) {}

  uint64_t next() {
    s_ ^= s_ >> 12;
    s_ ^= s_ << 25;
    s_ ^= s_ >> 27;
    return s_ * 0x2545F4914F6CDD1DULL;
  }

 private:
  uint64_t s_;
};

struct Budget {
  uint64_t maxQuestionsPerCheck = 100;
  uint64_t seed = 0;
};

/// All C(n,2) index pairs in canonical order (i<j, lexicographic) when they
/// fit the budget k; otherwise exactly k distinct pairs chosen by a partial
/// Fisher-Yates over the canonical pair list, in selection order.
std::vector<std::pair<uint64_t, uint64_t>> sample_pairs(uint64_t n, uint64_t k,
                                                        uint64_t seed);

/// Selects positions 0..n-1 under the same partial Fisher-Yates scheme.
std::vector<uint64_t> sample_positions(uint64_t n, uint64_t k, uint64_t seed);

/// SPEC_ABSTRACTION: variables coupling orthogonal regions (written in one,
/// read in a sibling) and sampled within-set member pairs.
std::vector<Finding> gen_encapsulation(const Model& m, const Budget& b);

/// SPEC_ORTHOGONALITY: declared-disjoint sets sharing members (violation),
/// sampled not-declared-disjoint set pairs, and sampled sibling-state pairs.
std::vector<Finding> gen_disjointness(const Model& m, const Budget& b);

/// SPEC_CONTAINMENT: for each transition leaving a compound/parallel state,
/// one question per descendant basic substate it may interrupt.
std::vector<Finding> gen_containment(const Model& m);

/// SPEC_ATOMICITY: transitions changing two or more state variables, where
/// the control location of a region counts as a state variable.
std::vector<Finding> gen_atomicity(const Model& m);

/// SPEC_COMPLETENESS: sampled entity-set pairs asked for unspecified
/// relationships.
std::vector<Finding> gen_entity_relations(const Model& m, const Budget& b);

}  // namespace tacit

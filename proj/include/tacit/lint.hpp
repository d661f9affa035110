#pragma once

#include <string>
#include <vector>

#include "tacit/ast.hpp"
#include "tacit/finding.hpp"
#include "tacit/lexicon.hpp"
#include "tacit/validate.hpp"

namespace tacit {

struct LintConfig {
  double similarNameMaxDistance = 0.2;  // normalized edit distance, in [0,1]
  uint64_t minConstantOccurrences = 2;
};

/// LANG_UNINTENDED: rules whose actions assign a variable occurring in their
/// own condition, so the action may fire repeatedly while the condition is
/// being falsified. Syntactic over-approximation.
std::vector<Finding> lint_self_falsifying(const Model& m);

/// LANG_UNSPECIFIED: pairs of rules on the same event trigger where neither
/// declares a priority.
std::vector<Finding> lint_order_unspecified(const Model& m);

/// LANG_FRAGMENTED: pairs of rules with the same trigger but differing
/// priorities (a base rule plus an override).
std::vector<Finding> lint_fragmented(const Model& m);

/// CODE_SILENT_CONDITION: sibling transitions out of one state where some
/// guard checks a variable another sibling ignores.
std::vector<Finding> lint_silent_conditions(const Model& m);

/// CODE_FIXED_PARAMETER: non-boolean literal constants recurring across
/// distinct guards, conditions or assignments.
std::vector<Finding> lint_fixed_parameters(const Model& m,
                                           const LintConfig& cfg = {});

/// LANG_UNCLEAR: identifier pairs within the similarity threshold by
/// normalized Levenshtein distance, or with identical lexicon expansions.
std::vector<Finding> lint_similar_names(const IdentifierTable& t,
                                        const LintConfig& cfg,
                                        const Dictionary& d,
                                        const std::string& sourceFile);

/// Case-insensitive edit distance divided by the longer length.
double normalized_edit_distance(const std::string& a, const std::string& b);

}  // namespace tacit

#pragma once

#include <string>
#include <vector>

#include "tacit/ast.hpp"
#include "tacit/errors.hpp"
#include "tacit/finding.hpp"
#include "tacit/lexicon.hpp"

namespace tacit {

/// Externally supplied list of domain terms a system in the domain is
/// expected to address. One phrase per line, '#' comments.
struct Checklist {
  struct Term {
    std::string text;  // lowercase, whitespace-collapsed
    int line = 0;
  };
  std::vector<Term> terms;  // file order, deduplicated
  std::string sourceFile;
};

Checklist load_checklist(const std::string& path);
Checklist make_checklist(const std::vector<std::string>& terms,
                         std::string sourceFile = "<memory>");

/// Lowercases, collapses whitespace and folds light plurals: each word of
/// length >= 4 drops a trailing "es" after a sibilant stem (s, x, z, ch, sh)
/// or otherwise a trailing "s".
std::string normalize_term(const std::string& phrase);

enum class MatchKind { Exact, Plural, Expansion, Oracle };

const char* match_kind_name(MatchKind k);

struct GapMatch {
  std::string term;        // checklist term
  std::string identifier;  // model identifier
  MatchKind kind = MatchKind::Exact;
};

/// Two-direction diff between a checklist and the model's identifiers.
/// matched and missingInModel partition the checklist; oracleMatches is a
/// purely additive augmentation that never alters the deterministic lists.
struct GapReport {
  std::vector<std::string> missingInModel;      // sorted checklist terms
  std::vector<std::string> missingInChecklist;  // sorted model identifiers
  std::vector<GapMatch> matched;                // sorted by term
  std::vector<GapMatch> oracleMatches;
};

GapReport diff_checklist(const Checklist& c, const Model& m,
                         const Dictionary& d);

/// Renders a gap report as findings: one DOMAIN_GAP question per term
/// missing from the model, one informational DOMAIN_GAP per identifier
/// missing from the checklist, and oracle-tagged infos for oracle matches.
std::vector<Finding> gap_findings(const Checklist& c, const GapReport& gaps,
                                  const Model& m);

}  // namespace tacit

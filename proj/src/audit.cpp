#include "tacit/audit.hpp"

#include <algorithm>
#include <set>

#include "tacit/lexicon.hpp"
#include "tacit/lint.hpp"
#include "tacit/ontology.hpp"
#include "tacit/oracle.hpp"
#include "tacit/parser.hpp"
#include "tacit/qgen.hpp"
#include "tacit/reach.hpp"

namespace tacit {

const std::vector<std::string>& all_check_names() {
  static const std::vector<std::string> names = {
      "unreachable-composites",
      "completeness",
      "encapsulation",
      "disjointness",
      "containment",
      "atomicity",
      "entity-relations",
      "self-falsifying",
      "order-unspecified",
      "fragmented",
      "silent-conditions",
      "fixed-parameters",
      "similar-names",
      "checklist-gap",
  };
  return names;
}

namespace {

void append(std::vector<Finding>& all, std::vector<Finding> more) {
  for (Finding& f : more) all.push_back(std::move(f));
}

// Reports carry relative paths only, so output stays byte-reproducible
// across machines; absolute inputs are reduced to their file name.
std::string displayPath(const std::string& path) {
  if (path.empty() || path.front() != '/') return path;
  auto slash = path.find_last_of('/');
  return path.substr(slash + 1);
}

// Oracle augmentation for the checklist diff: consult the oracle for terms
// the deterministic matcher left unmatched. Purely additive; deterministic
// results are never removed.
void augmentWithOracle(OracleClient& oracle, const Model& m,
                       const Dictionary& dict, GapReport& gaps) {
  std::set<std::string> modelNorms;
  std::vector<std::pair<std::string, std::string>> normToIdent;  // norm, ident
  std::set<std::string> seen;
  for (const SymbolEntry& e : symbol_table(m).entries) {
    if (!seen.insert(e.name).second) continue;
    std::vector<std::string> tokens = tokenize_identifier(e.name);
    std::string surface;
    for (size_t i = 0; i < tokens.size(); ++i) {
      if (i) surface += ' ';
      surface += tokens[i];
    }
    normToIdent.emplace_back(normalize_term(surface), e.name);
    Expansion exp = expand_identifier(e.name, dict);
    normToIdent.emplace_back(normalize_term(exp.phrase), e.name);
  }

  for (const std::string& term : gaps.missingInModel) {
    OracleRequest req;
    req.kind = OracleKind::Synonyms;
    req.payload = {{"term", term}};
    auto res = oracle.ask(req);
    if (!res) continue;
    for (const OracleCandidate& cand : res->candidates) {
      if (cand.confidence < 0.5) continue;  // recorded nowhere: too weak
      std::string norm = normalize_term(cand.text);
      auto hit = std::find_if(normToIdent.begin(), normToIdent.end(),
                              [&](const auto& p) { return p.first == norm; });
      if (hit == normToIdent.end()) continue;
      gaps.oracleMatches.push_back({term, hit->second, MatchKind::Oracle});
      break;
    }
  }
}

}  // namespace

AuditOutcome run_audit(const AuditOptions& opts) {
  AuditOutcome out;

  std::vector<std::string> selected;
  if (opts.checks) {
    std::set<std::string> wanted;
    for (const std::string& c : *opts.checks) {
      if (std::find(all_check_names().begin(), all_check_names().end(), c) ==
          all_check_names().end())
        throw ConfigError("unknown check name: " + c);
      wanted.insert(c);
    }
    for (const std::string& c : all_check_names())
      if (wanted.count(c)) selected.push_back(c);
  } else {
    selected = all_check_names();
  }
  auto isSelected = [&](const char* name) {
    return std::find(selected.begin(), selected.end(), name) != selected.end();
  };

  Model m = parse_model_file(opts.modelPath);
  m.sourceFile = displayPath(opts.modelPath);
  out.validationErrors = validate_model(m);
  if (!out.validationErrors.empty()) return out;

  Dictionary dict;
  if (opts.dictionaryPath) dict = load_dictionary(*opts.dictionaryPath);
  std::optional<Checklist> checklist;
  if (opts.checklistPath) {
    checklist = load_checklist(*opts.checklistPath);
    checklist->sourceFile = displayPath(*opts.checklistPath);
  }

  Budget budget{opts.budget, opts.seed};
  LintConfig lintCfg;
  std::vector<std::string> checksRun = {"validate"};
  std::vector<Finding> findings;

  bool needReach = isSelected("unreachable-composites") || isSelected("completeness");
  std::optional<ReachSet> reach;
  if (needReach) {
    ExploreLimits limits;
    limits.maxConfigurations = opts.maxConfigs;
    try {
      reach = explore(m, limits);
      checksRun.push_back("explore");
      if (!reach->exhausted) {
        out.partial = true;
        out.partialReason = "exploration stopped at a limit";
      }
    } catch (const ProductTooLarge& e) {
      out.partial = true;
      out.partialReason = e.what();
    }
  }

  if (reach && isSelected("unreachable-composites")) {
    checksRun.push_back("unreachable-composites");
    append(findings, unreachable_composites(m, *reach));
  }
  if (reach && isSelected("completeness")) {
    checksRun.push_back("completeness");
    append(findings, completeness_anomalies(m, *reach));
  }
  if (isSelected("encapsulation")) {
    checksRun.push_back("encapsulation");
    append(findings, gen_encapsulation(m, budget));
  }
  if (isSelected("disjointness")) {
    checksRun.push_back("disjointness");
    append(findings, gen_disjointness(m, budget));
  }
  if (isSelected("containment")) {
    checksRun.push_back("containment");
    append(findings, gen_containment(m));
  }
  if (isSelected("atomicity")) {
    checksRun.push_back("atomicity");
    append(findings, gen_atomicity(m));
  }
  if (isSelected("entity-relations")) {
    checksRun.push_back("entity-relations");
    append(findings, gen_entity_relations(m, budget));
  }
  if (isSelected("self-falsifying")) {
    checksRun.push_back("self-falsifying");
    append(findings, lint_self_falsifying(m));
  }
  if (isSelected("order-unspecified")) {
    checksRun.push_back("order-unspecified");
    append(findings, lint_order_unspecified(m));
  }
  if (isSelected("fragmented")) {
    checksRun.push_back("fragmented");
    append(findings, lint_fragmented(m));
  }
  if (isSelected("silent-conditions")) {
    checksRun.push_back("silent-conditions");
    append(findings, lint_silent_conditions(m));
  }
  if (isSelected("fixed-parameters")) {
    checksRun.push_back("fixed-parameters");
    append(findings, lint_fixed_parameters(m, lintCfg));
  }
  if (isSelected("similar-names")) {
    checksRun.push_back("similar-names");
    append(findings,
           lint_similar_names(symbol_table(m), lintCfg, dict, m.sourceFile));
  }
  if (checklist && isSelected("checklist-gap")) {
    checksRun.push_back("checklist-gap");
    GapReport gaps = diff_checklist(*checklist, m, dict);
    if (opts.oracleUrl && !opts.oracleUrl->empty()) {
      OracleClient oracle(*opts.oracleUrl, opts.oracleTimeoutMs,
                          opts.oracleMaxCalls);
      augmentWithOracle(oracle, m, dict, gaps);
    }
    append(findings, gap_findings(*checklist, gaps, m));
  }

  out.report = collect(m.name, opts.seed, opts.budget, std::move(checksRun),
                       std::move(findings));
  return out;
}

}  // namespace tacit

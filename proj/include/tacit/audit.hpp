#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tacit/report.hpp"
#include "tacit/validate.hpp"

namespace tacit {

/// Canonical check names in the fixed execution order.
const std::vector<std::string>& all_check_names();

struct AuditOptions {
  std::string modelPath;
  std::optional<std::string> dictionaryPath;
  std::optional<std::string> checklistPath;
  std::optional<std::string> oracleUrl;
  uint64_t budget = 100;
  uint64_t seed = 0;
  uint64_t maxConfigs = 1'000'000;
  std::optional<std::vector<std::string>> checks;  // subset filter, any order
  int oracleTimeoutMs = 5000;
  int oracleMaxCalls = 50;
};

struct AuditOutcome {
  Report report;
  std::vector<StructuralError> validationErrors;  // nonempty: no analyses ran
  bool partial = false;          // a limit interrupted reachability analysis
  std::string partialReason;
};

/// Parses, validates, runs the selected checks in the fixed order and
/// aggregates a deterministic report. Throws ParseError, IoError,
/// FormatError or ConfigError; unknown check names throw ConfigError.
AuditOutcome run_audit(const AuditOptions& opts);

}  // namespace tacit

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tacit/audit.hpp"
#include "tacit/errors.hpp"
#include "tacit/version.hpp"

namespace {

constexpr int kExitClean = 0;
constexpr int kExitFindings = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPartial = 3;

std::vector<std::string> splitList(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int severityRank(const std::string& s) {
  if (s == "info") return 0;
  if (s == "question") return 1;
  if (s == "warning") return 2;
  if (s == "violation") return 3;
  return -1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tacit-audit: static review of statechart/rule models for "
               "candidate hidden assumptions"};
  app.set_version_flag("--version", tacit::kToolVersion);

  std::string modelPath;
  std::string dictionary, checklist, checksCsv, format = "json", outPath;
  std::string failOn = "violation", oracleUrl;
  uint64_t budget = 100, seed = 0, maxConfigs = 1'000'000;
  bool allowPartial = false;

  app.add_option("model", modelPath, "model file (DSL source)")->required();
  app.add_option("--dictionary", dictionary, "domain word list file");
  app.add_option("--checklist", checklist, "domain checklist file");
  app.add_option("--budget", budget, "max sampled questions per check")
      ->capture_default_str();
  app.add_option("--seed", seed, "sampling seed")->capture_default_str();
  app.add_option("--max-configs", maxConfigs,
                 "reachability configuration limit")
      ->capture_default_str();
  app.add_option("--checks", checksCsv,
                 "comma-separated subset of checks (order is irrelevant)");
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--out", outPath, "write the report to a file");
  app.add_option("--fail-on", failOn, "exit 1 at or above this severity")
      ->check(CLI::IsMember({"info", "question", "warning", "violation"}))
      ->capture_default_str();
  app.add_flag("--allow-partial", allowPartial,
               "exit by findings even when limits truncated exploration");
  app.add_option("--oracle-url", oracleUrl,
                 "optional semantic oracle endpoint (or TACIT_ORACLE_URL)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitClean : kExitUsage;
  }

  tacit::AuditOptions opts;
  opts.modelPath = modelPath;
  if (!dictionary.empty()) opts.dictionaryPath = dictionary;
  if (!checklist.empty()) opts.checklistPath = checklist;
  opts.budget = budget;
  opts.seed = seed;
  opts.maxConfigs = maxConfigs;
  if (!checksCsv.empty()) opts.checks = splitList(checksCsv);
  if (oracleUrl.empty())
    if (const char* env = std::getenv("TACIT_ORACLE_URL")) oracleUrl = env;
  if (!oracleUrl.empty()) opts.oracleUrl = oracleUrl;

  tacit::AuditOutcome outcome;
  try {
    outcome = tacit::run_audit(opts);
  } catch (const tacit::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (!outcome.validationErrors.empty()) {
    for (const tacit::StructuralError& err : outcome.validationErrors)
      std::cerr << "validation error: " << err.format(opts.modelPath) << "\n";
    return kExitUsage;
  }

  std::string rendered = format == "json" ? tacit::render_json(outcome.report)
                                          : tacit::render_text(outcome.report);
  if (!outPath.empty()) {
    std::ofstream out(outPath, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << outPath << "\n";
      return kExitUsage;
    }
    out << rendered;
  } else {
    std::cout << rendered;
  }

  if (outcome.partial) {
    std::cerr << "warning: partial results: " << outcome.partialReason << "\n";
    if (!allowPartial) return kExitPartial;
  }

  int threshold = severityRank(failOn);
  for (const tacit::Finding& f : outcome.report.findings)
    if (severityRank(tacit::severity_name(f.severity)) >= threshold)
      return kExitFindings;
  return kExitClean;
}

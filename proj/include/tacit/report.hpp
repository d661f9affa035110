#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tacit/finding.hpp"

namespace tacit {

/// Deterministic, taxonomy-tagged collection of findings. No timestamps, no
/// absolute paths: renders are byte-reproducible.
struct Report {
  std::string toolVersion;
  std::string modelName;
  uint64_t seed = 0;
  uint64_t budget = 0;
  std::vector<std::string> checksRun;
  std::vector<Finding> findings;  // sorted by (file, line, category, id)
  std::map<std::string, uint64_t> statsByCategory;
  std::vector<std::pair<std::string, uint64_t>> statsBySeverity;  // ladder order
};

/// Deduplicates identical ids, sorts canonically, computes stats.
Report collect(std::string modelName, uint64_t seed, uint64_t budget,
               std::vector<std::string> checksRun,
               std::vector<Finding> findings);

std::string render_json(const Report& r);
std::string render_text(const Report& r);

}  // namespace tacit

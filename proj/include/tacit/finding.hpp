#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tacit {

/// Closed finding taxonomy.
enum class Category {
  SpecAbstraction,
  SpecOrthogonality,
  SpecAtomicity,
  SpecContainment,
  SpecCompleteness,
  LangUnclear,
  LangUnintended,
  LangUnspecified,
  LangFragmented,
  CodeSilentCondition,
  CodeFixedParameter,
  DomainGap,
};

inline constexpr int kCategoryCount = 12;

const char* category_name(Category c);

enum class Severity { Info, Question, Warning, Violation };

const char* severity_name(Severity s);

struct SourceLoc {
  std::string file;
  int line = 0;
};

uint64_t fnv1a64(const std::string& data);

/// One candidate hidden assumption. The id is a stable FNV-1a-64 hash of
/// category, subjects and location, so reports are diffable across runs and
/// check orderings.
struct Finding {
  std::string id;  // 16 lowercase hex digits
  Category category = Category::SpecAbstraction;
  Severity severity = Severity::Question;
  std::vector<std::string> subjects;
  std::string question;
  std::string evidence;
  SourceLoc location;
};

Finding make_finding(Category category, Severity severity,
                     std::vector<std::string> subjects, std::string question,
                     std::string evidence, SourceLoc location);

/// The id recipe: FNV-1a-64 over category '\0' subjects-joined-by-',' '\0'
/// file ':' line, rendered as zero-padded lowercase hex.
std::string finding_id(Category category,
                       const std::vector<std::string>& subjects,
                       const SourceLoc& location);

}  // namespace tacit

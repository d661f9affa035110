#include "tacit/finding.hpp"

namespace tacit {

const char* category_name(Category c) {
  switch (c) {
    case Category::SpecAbstraction: return "SPEC_ABSTRACTION";
    case Category::SpecOrthogonality: return "SPEC_ORTHOGONALITY";
    case Category::SpecAtomicity: return "SPEC_ATOMICITY";
    case Category::SpecContainment: return "SPEC_CONTAINMENT";
    case Category::SpecCompleteness: return "SPEC_COMPLETENESS";
    case Category::LangUnclear: return "LANG_UNCLEAR";
    case Category::LangUnintended: return "LANG_UNINTENDED";
    case Category::LangUnspecified: return "LANG_UNSPECIFIED";
    case Category::LangFragmented: return "LANG_FRAGMENTED";
    case Category::CodeSilentCondition: return "CODE_SILENT_CONDITION";
    case Category::CodeFixedParameter: return "CODE_FIXED_PARAMETER";
    case Category::DomainGap: return "DOMAIN_GAP";
  }
  return "?";
}

const char* severity_name(Severity s) {
  switch (s) {
    case Severity::Info: return "info";
    case Severity::Question: return "question";
    case Severity::Warning: return "warning";
    case Severity::Violation: return "violation";
  }
  return "?";
}

uint64_t fnv1a64(const std::string& data) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string finding_id(Category category,
                       const std::vector<std::string>& subjects,
                       const SourceLoc& location) {
  std::string data = category_name(category);
  data += '\0';
  for (size_t i = 0; i < subjects.size(); ++i) {
    if (i) data += ',';
    data += subjects[i];
  }
  data += '\0';
  data += location.file;
  data += ':';
  data += std::to_string(location.line);
  uint64_t h = fnv1a64(data);
  static const char hex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

Finding make_finding(Category category, Severity severity,
                     std::vector<std::string> subjects, std::string question,
                     std::string evidence, SourceLoc location) {
  Finding f;
  f.category = category;
  f.severity = severity;
  f.subjects = std::move(subjects);
  f.question = std::move(question);
  f.evidence = std::move(evidence);
  f.location = std::move(location);
  f.id = finding_id(f.category, f.subjects, f.location);
  return f;
}

}  // namespace tacit

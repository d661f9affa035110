#include "tacit/report.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <sstream>

#include <json.hpp>

#include "tacit/version.hpp"

namespace tacit {

Report collect(std::string modelName, uint64_t seed, uint64_t budget,
               std::vector<std::string> checksRun,
               std::vector<Finding> findings) {
  Report r;
  r.toolVersion = kToolVersion;
  r.modelName = std::move(modelName);
  r.seed = seed;
  r.budget = budget;
  r.checksRun = std::move(checksRun);

  std::sort(findings.begin(), findings.end(),
            [](const Finding& a, const Finding& b) {
              if (a.location.file != b.location.file)
                return a.location.file < b.location.file;
              if (a.location.line != b.location.line)
                return a.location.line < b.location.line;
              int c = std::strcmp(category_name(a.category),
                                  category_name(b.category));
              if (c != 0) return c < 0;
              return a.id < b.id;
            });
  findings.erase(std::unique(findings.begin(), findings.end(),
                             [](const Finding& a, const Finding& b) {
                               return a.id == b.id;
                             }),
                 findings.end());
  r.findings = std::move(findings);

  std::map<Severity, uint64_t> bySev;
  for (const Finding& f : r.findings) {
    ++r.statsByCategory[category_name(f.category)];
    ++bySev[f.severity];
  }
  for (Severity s : {Severity::Info, Severity::Question, Severity::Warning,
                     Severity::Violation}) {
    auto it = bySev.find(s);
    if (it != bySev.end())
      r.statsBySeverity.emplace_back(severity_name(s), it->second);
  }
  return r;
}

std::string render_json(const Report& r) {
  nlohmann::ordered_json j;
  j["toolVersion"] = r.toolVersion;
  j["modelName"] = r.modelName;
  j["seed"] = r.seed;
  j["budget"] = r.budget;
  j["checksRun"] = r.checksRun;
  j["findings"] = nlohmann::ordered_json::array();
  for (const Finding& f : r.findings) {
    nlohmann::ordered_json jf;
    jf["id"] = f.id;
    jf["category"] = category_name(f.category);
    jf["severity"] = severity_name(f.severity);
    jf["subjects"] = f.subjects;
    jf["question"] = f.question;
    jf["evidence"] = f.evidence;
    jf["location"] = {{"file", f.location.file}, {"line", f.location.line}};
    j["findings"].push_back(std::move(jf));
  }
  nlohmann::ordered_json stats;
  stats["byCategory"] = nlohmann::ordered_json::object();
  for (const auto& [cat, count] : r.statsByCategory)
    stats["byCategory"][cat] = count;
  stats["bySeverity"] = nlohmann::ordered_json::object();
  for (const auto& [sev, count] : r.statsBySeverity)
    stats["bySeverity"][sev] = count;
  j["stats"] = std::move(stats);
  return j.dump(2) + "\n";
}

std::string render_text(const Report& r) {
  std::ostringstream out;
  out << "tacit-audit " << r.toolVersion << " report\n";
  out << "model: " << r.modelName << "\n";
  out << "seed: " << r.seed << "  budget: " << r.budget << "\n";
  out << "checks:";
  for (const std::string& c : r.checksRun) out << ' ' << c;
  out << "\n\n";
  for (const Finding& f : r.findings) {
    std::string sev = severity_name(f.severity);
    for (char& c : sev) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    out << sev << ' ' << category_name(f.category) << ' ' << f.location.file
        << ':' << f.location.line;
    if (!f.subjects.empty()) {
      out << " [";
      for (size_t i = 0; i < f.subjects.size(); ++i) {
        if (i) out << ", ";
        out << f.subjects[i];
      }
      out << ']';
    }
    out << "\n  " << f.question << "\n  evidence: " << f.evidence
        << "\n  id: " << f.id << "\n";
  }
  out << "\nfindings: " << r.findings.size();
  if (!r.statsBySeverity.empty()) {
    out << " (";
    for (size_t i = 0; i < r.statsBySeverity.size(); ++i) {
      if (i) out << ", ";
      out << r.statsBySeverity[i].first << ' ' << r.statsBySeverity[i].second;
    }
    out << ')';
  }
  out << "\n";
  return out.str();
}

}  // namespace tacit

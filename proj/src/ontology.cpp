#include "tacit/ontology.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "tacit/validate.hpp"

namespace tacit {

namespace {

std::string collapse(const std::string& raw) {
  std::string out;
  bool pendingSpace = false;
  for (char c : raw) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pendingSpace = !out.empty();
      continue;
    }
    if (pendingSpace) {
      out += ' ';
      pendingSpace = false;
    }
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

// Light plural folding. "es" is stripped only after stems that demand it
// (tax/taxes, church/churches, glass/glasses); a single-s stem keeps the
// plain 's' strip so house/houses still meet ("hous" would not).
std::string foldWord(const std::string& w) {
  if (w.size() < 4 || w.back() != 's') return w;
  if (w.size() >= 5 && w[w.size() - 2] == 'e') {
    std::string stem = w.substr(0, w.size() - 2);
    auto endsWith = [&stem](const char* suffix) {
      size_t n = std::char_traits<char>::length(suffix);
      return stem.size() >= n && stem.compare(stem.size() - n, n, suffix) == 0;
    };
    bool sibilant = endsWith("x") || endsWith("z") || endsWith("ch") ||
                    endsWith("sh") || endsWith("ss");
    if (sibilant) return stem;
  }
  return w.substr(0, w.size() - 1);
}

std::vector<std::string> splitWords(const std::string& phrase) {
  std::vector<std::string> words;
  std::istringstream in(phrase);
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

}  // namespace

std::string normalize_term(const std::string& phrase) {
  std::string out;
  for (const std::string& w : splitWords(collapse(phrase))) {
    if (!out.empty()) out += ' ';
    out += foldWord(w);
  }
  return out;
}

const char* match_kind_name(MatchKind k) {
  switch (k) {
    case MatchKind::Exact: return "exact";
    case MatchKind::Plural: return "plural";
    case MatchKind::Expansion: return "expansion";
    case MatchKind::Oracle: return "oracle";
  }
  return "?";
}

Checklist make_checklist(const std::vector<std::string>& terms,
                         std::string sourceFile) {
  Checklist c;
  c.sourceFile = std::move(sourceFile);
  std::set<std::string> seen;
  int line = 0;
  for (const std::string& raw : terms) {
    ++line;
    std::string t = collapse(raw);
    if (t.empty()) continue;
    if (seen.insert(t).second) c.terms.push_back({t, line});
  }
  return c;
}

Checklist load_checklist(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open checklist file: " + path);
  Checklist c;
  c.sourceFile = path;
  std::set<std::string> seen;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    for (char ch : line) {
      bool ok = std::isalnum(static_cast<unsigned char>(ch)) ||
                std::isspace(static_cast<unsigned char>(ch)) || ch == '-' ||
                ch == '_';
      if (!ok)
        throw FormatError(path, lineNo,
                          std::string("unexpected character '") + ch + "'");
    }
    std::string t = collapse(line);
    if (t.empty()) continue;
    if (seen.insert(t).second) c.terms.push_back({t, lineNo});
  }
  return c;
}

namespace {

struct IdentifierForms {
  std::string text;      // original identifier
  int line = 0;
  std::string surface;   // tokens joined by spaces (lowercase)
  std::string normSurface;
  std::string normPhrase;                 // normalized expansion phrase
  std::vector<std::string> phraseWords;   // normalized expansion words
};

}  // namespace

GapReport diff_checklist(const Checklist& c, const Model& m,
                         const Dictionary& d) {
  // Identifier texts deduplicated in table order; each carries its surface
  // form and lexicon expansion.
  std::vector<IdentifierForms> idents;
  {
    std::set<std::string> seen;
    for (const SymbolEntry& e : symbol_table(m).entries) {
      if (!seen.insert(e.name).second) continue;
      IdentifierForms f;
      f.text = e.name;
      f.line = e.line;
      std::vector<std::string> tokens = tokenize_identifier(e.name);
      for (size_t i = 0; i < tokens.size(); ++i) {
        if (i) f.surface += ' ';
        f.surface += tokens[i];
      }
      f.normSurface = normalize_term(f.surface);
      Expansion exp = expand_identifier(e.name, d);
      f.normPhrase = normalize_term(exp.phrase);
      for (const std::string& w : splitWords(exp.phrase))
        f.phraseWords.push_back(normalize_term(w));
      idents.push_back(std::move(f));
    }
  }

  GapReport out;
  std::set<std::string> matchedIdents;
  for (const Checklist::Term& term : c.terms) {
    const std::string& raw = term.text;  // already lowercase + collapsed
    std::string norm = normalize_term(raw);
    const IdentifierForms* hit = nullptr;
    MatchKind kind = MatchKind::Exact;
    for (const IdentifierForms& f : idents) {
      if (f.surface == raw) {
        hit = &f;
        kind = MatchKind::Exact;
        break;
      }
    }
    if (!hit) {
      for (const IdentifierForms& f : idents) {
        if (f.normSurface == norm) {
          hit = &f;
          kind = MatchKind::Plural;
          break;
        }
      }
    }
    if (!hit) {
      for (const IdentifierForms& f : idents) {
        bool wordHit = std::find(f.phraseWords.begin(), f.phraseWords.end(),
                                 norm) != f.phraseWords.end();
        if (f.normPhrase == norm || wordHit) {
          hit = &f;
          kind = MatchKind::Expansion;
          break;
        }
      }
    }
    if (hit) {
      out.matched.push_back({raw, hit->text, kind});
      matchedIdents.insert(hit->text);
    } else {
      out.missingInModel.push_back(raw);
    }
  }
  for (const IdentifierForms& f : idents)
    if (!matchedIdents.count(f.text)) out.missingInChecklist.push_back(f.text);

  std::sort(out.missingInModel.begin(), out.missingInModel.end());
  std::sort(out.missingInChecklist.begin(), out.missingInChecklist.end());
  std::sort(out.matched.begin(), out.matched.end(),
            [](const GapMatch& a, const GapMatch& b) { return a.term < b.term; });
  return out;
}

std::vector<Finding> gap_findings(const Checklist& c, const GapReport& gaps,
                                  const Model& m) {
  std::vector<Finding> out;
  std::map<std::string, int> termLine;
  for (const Checklist::Term& t : c.terms) termLine[t.text] = t.line;
  std::map<std::string, int> identLine;
  for (const SymbolEntry& e : symbol_table(m).entries)
    identLine.emplace(e.name, e.line);

  for (const std::string& term : gaps.missingInModel) {
    out.push_back(make_finding(
        Category::DomainGap, Severity::Question, {},
        "Domain checklist term '" + term +
            "' has no counterpart among the model's identifiers. Is this "
            "concern handled elsewhere, or is it out of scope on purpose?",
        "no identifier matches '" + term + "' directly, by plural folding, or "
            "via dictionary expansion",
        {c.sourceFile, termLine[term]}));
  }
  for (const std::string& ident : gaps.missingInChecklist) {
    out.push_back(make_finding(
        Category::DomainGap, Severity::Info, {ident},
        "Model identifier '" + ident +
            "' has no counterpart in the domain checklist. Should the "
            "checklist be extended to cover it?",
        "reverse direction of the checklist diff",
        {m.sourceFile, identLine[ident]}));
  }
  for (const GapMatch& gm : gaps.oracleMatches) {
    out.push_back(make_finding(
        Category::DomainGap, Severity::Info, {gm.identifier},
        "Checklist term '" + gm.term + "' may be covered by identifier '" +
            gm.identifier + "' according to the semantic oracle. Confirm?",
        "oracle: suggested match for '" + gm.term + "'",
        {c.sourceFile, termLine[gm.term]}));
  }
  return out;
}

}  // namespace tacit

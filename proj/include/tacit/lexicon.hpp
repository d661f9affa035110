#pragma once

#include <string>
#include <vector>

#include "tacit/errors.hpp"

namespace tacit {

/// Domain word list. Words are lowercase ASCII letters; multiword phrases
/// are kept separately. Immutable after load.
struct Dictionary {
  std::vector<std::string> words;    // sorted, deduplicated
  std::vector<std::string> phrases;  // sorted, deduplicated
  std::string sourceFile;

  bool containsWord(const std::string& w) const;
};

/// One word/phrase per line, '#' comments, lowercased, deduplicated, sorted.
/// Throws IoError when unreadable, FormatError on non-letter content.
Dictionary load_dictionary(const std::string& path);

/// Builds a dictionary from in-memory entries (normalized the same way).
Dictionary make_dictionary(const std::vector<std::string>& entries);

struct TokenCandidate {
  std::string text;
  double score = 0.0;  // in [0, 1]; 0 marks a verbatim fallback
};

/// Splits an identifier on case transitions (lower->upper), underscores,
/// hyphens and digit boundaries; tokens are lowercased.
std::vector<std::string> tokenize_identifier(const std::string& name);

/// Ranks dictionary words for an abbreviated token. A word is a candidate
/// iff the token is a subsequence of it and they share the first letter.
/// Score classes, descending: exact 1.0, consonant skeleton 0.9, prefix
/// 0.8*|token|/|word|, other subsequence 0.6*|token|/|word|; ties broken
/// alphabetically. No candidate: the token itself with score 0.
std::vector<TokenCandidate> expand_token(const std::string& token,
                                         const Dictionary& d);

struct Expansion {
  std::string identifier;
  std::vector<std::string> tokens;
  std::string phrase;  // top-ranked token candidates joined by spaces
  double score = 0.0;  // mean of token scores
  std::vector<std::pair<std::string, double>> alternatives;  // next best, <=3
};

Expansion expand_identifier(const std::string& name, const Dictionary& d);

}  // namespace tacit

#include "tacit/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <queue>
#include <set>

namespace tacit {

namespace {

bool isVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

std::string skeleton(const std::string& w) {
  std::string out;
  for (char c : w)
    if (!isVowel(c)) out += c;
  return out;
}

bool isSubsequence(const std::string& needle, const std::string& hay) {
  size_t i = 0;
  for (char c : hay) {
    if (i < needle.size() && needle[i] == c) ++i;
  }
  return i == needle.size();
}

std::string toLower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

bool Dictionary::containsWord(const std::string& w) const {
  return std::binary_search(words.begin(), words.end(), w);
}

Dictionary make_dictionary(const std::vector<std::string>& entries) {
  Dictionary d;
  for (const std::string& raw : entries) {
    std::string e = toLower(raw);
    if (e.empty()) continue;
    if (e.find(' ') == std::string::npos)
      d.words.push_back(e);
    else
      d.phrases.push_back(e);
  }
  std::sort(d.words.begin(), d.words.end());
  d.words.erase(std::unique(d.words.begin(), d.words.end()), d.words.end());
  std::sort(d.phrases.begin(), d.phrases.end());
  d.phrases.erase(std::unique(d.phrases.begin(), d.phrases.end()),
                  d.phrases.end());
  return d;
}

Dictionary load_dictionary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dictionary file: " + path);
  std::vector<std::string> entries;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    // trim and collapse inner whitespace
    std::string cleaned;
    bool pendingSpace = false;
    for (char c : line) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        pendingSpace = !cleaned.empty();
        continue;
      }
      if (!std::isalpha(static_cast<unsigned char>(c)))
        throw FormatError(path, lineNo,
                          std::string("non-letter content '") + c + "'");
      if (pendingSpace) {
        cleaned += ' ';
        pendingSpace = false;
      }
      cleaned += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (!cleaned.empty()) entries.push_back(cleaned);
  }
  Dictionary d = make_dictionary(entries);
  d.sourceFile = path;
  return d;
}

std::vector<std::string> tokenize_identifier(const std::string& name) {
  std::vector<std::string> tokens;
  std::string cur;
  char prev = '\0';
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(cur);
    cur.clear();
  };
  for (char c : name) {
    unsigned char uc = static_cast<unsigned char>(c);
    if (!std::isalnum(uc)) {
      flush();
      prev = '\0';
      continue;
    }
    if (!cur.empty()) {
      unsigned char up = static_cast<unsigned char>(prev);
      bool caseSplit = std::islower(up) && std::isupper(uc);
      bool digitSplit = (std::isalpha(up) && std::isdigit(uc)) ||
                        (std::isdigit(up) && std::isalpha(uc));
      if (caseSplit || digitSplit) flush();
    }
    cur += static_cast<char>(std::tolower(uc));
    prev = c;
  }
  flush();
  return tokens;
}

std::vector<TokenCandidate> expand_token(const std::string& token,
                                         const Dictionary& d) {
  std::vector<TokenCandidate> out;
  for (const std::string& w : d.words) {
    if (w.empty() || token.empty()) continue;
    if (w[0] != token[0]) continue;
    if (!isSubsequence(token, w)) continue;
    double score;
    if (token == w)
      score = 1.0;
    else if (token == skeleton(w))
      score = 0.9;
    else if (w.size() > token.size() && w.compare(0, token.size(), token) == 0)
      score = 0.8 * static_cast<double>(token.size()) /
              static_cast<double>(w.size());
    else
      score = 0.6 * static_cast<double>(token.size()) /
              static_cast<double>(w.size());
    out.push_back({w, score});
  }
  std::sort(out.begin(), out.end(),
            [](const TokenCandidate& a, const TokenCandidate& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.text < b.text;
            });
  if (out.empty()) out.push_back({token, 0.0});
  return out;
}

Expansion expand_identifier(const std::string& name, const Dictionary& d) {
  Expansion e;
  e.identifier = name;
  e.tokens = tokenize_identifier(name);
  if (e.tokens.empty()) return e;

  std::vector<std::vector<TokenCandidate>> perToken;
  for (const std::string& t : e.tokens) perToken.push_back(expand_token(t, d));

  // Lazy k-best enumeration over per-token candidate choices.
  struct Combo {
    double sum;
    std::string phrase;
    std::vector<size_t> pick;
  };
  auto build = [&](const std::vector<size_t>& pick) {
    Combo c;
    c.sum = 0;
    c.pick = pick;
    for (size_t i = 0; i < pick.size(); ++i) {
      const TokenCandidate& tc = perToken[i][pick[i]];
      c.sum += tc.score;
      if (i) c.phrase += ' ';
      c.phrase += tc.text;
    }
    return c;
  };
  auto worse = [](const Combo& a, const Combo& b) {
    if (a.sum != b.sum) return a.sum < b.sum;
    return a.phrase > b.phrase;
  };
  std::priority_queue<Combo, std::vector<Combo>, decltype(worse)> heap(worse);
  std::set<std::vector<size_t>> seen;
  std::vector<size_t> first(e.tokens.size(), 0);
  heap.push(build(first));
  seen.insert(first);

  const size_t wanted = 4;  // top expansion plus up to 3 alternatives
  size_t produced = 0;
  while (!heap.empty() && produced < wanted) {
    Combo c = heap.top();
    heap.pop();
    double mean = c.sum / static_cast<double>(e.tokens.size());
    if (produced == 0) {
      e.phrase = c.phrase;
      e.score = mean;
    } else {
      e.alternatives.emplace_back(c.phrase, mean);
    }
    ++produced;
    for (size_t i = 0; i < c.pick.size(); ++i) {
      if (c.pick[i] + 1 >= perToken[i].size()) continue;
      std::vector<size_t> next = c.pick;
      ++next[i];
      if (seen.insert(next).second) heap.push(build(next));
    }
  }
  return e;
}

}  // namespace tacit

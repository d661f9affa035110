#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "helpers.hpp"
#include "tacit/lexicon.hpp"

using namespace tacit;

namespace {

Dictionary financeDict() {
  return make_dictionary({"sales", "tax", "balance", "refund", "tentative",
                          "amount", "final", "payment"});
}

// Test-side re-statement of the candidate predicate, used to re-check
// implementation outputs independently.
bool subsequenceWithFirstLetter(const std::string& token, const std::string& w) {
  if (token.empty() || w.empty() || token[0] != w[0]) return false;
  size_t i = 0;
  for (char c : w)
    if (i < token.size() && token[i] == c) ++i;
  return i == token.size();
}

}  // namespace

TEST_CASE("tokenize_identifier splits camel case, separators and digits") {
  CHECK(tokenize_identifier("SlsTx") == std::vector<std::string>{"sls", "tx"});
  CHECK(tokenize_identifier("finPayment") ==
        std::vector<std::string>{"fin", "payment"});
  CHECK(tokenize_identifier("x1") == std::vector<std::string>{"x", "1"});
  CHECK(tokenize_identifier("belt_speed-now") ==
        std::vector<std::string>{"belt", "speed", "now"});
  CHECK(tokenize_identifier("HTTPServer") ==
        std::vector<std::string>{"httpserver"});  // only lower->upper splits
  CHECK(tokenize_identifier("a2b") == std::vector<std::string>{"a", "2", "b"});
}

TEST_CASE("expand_token ranks by score class") {
  Dictionary d = financeDict();
  SUBCASE("consonant skeleton") {
    auto c = expand_token("tx", d);
    REQUIRE(!c.empty());
    CHECK(c[0].text == "tax");
    CHECK(c[0].score == doctest::Approx(0.9));
  }
  SUBCASE("exact match") {
    auto c = expand_token("balance", d);
    CHECK(c[0].text == "balance");
    CHECK(c[0].score == doctest::Approx(1.0));
  }
  SUBCASE("subsequence with first letter") {
    auto c = expand_token("refnd", d);
    CHECK(c[0].text == "refund");
    CHECK(c[0].score == doctest::Approx(0.6 * 5.0 / 6.0));
  }
  SUBCASE("prefix") {
    auto c = expand_token("bal", d);
    CHECK(c[0].text == "balance");
    CHECK(c[0].score == doctest::Approx(0.8 * 3.0 / 7.0));
  }
  SUBCASE("verbatim fallback") {
    auto c = expand_token("zzq", d);
    REQUIRE(c.size() == 1);
    CHECK(c[0].text == "zzq");
    CHECK(c[0].score == 0.0);
  }
  SUBCASE("first letter must agree") {
    // "x" is a subsequence of "tax" but shares no first letter
    auto c = expand_token("x", d);
    CHECK(c[0].text == "x");
    CHECK(c[0].score == 0.0);
  }
}

TEST_CASE("expand_identifier reproduces the finance examples") {
  Dictionary d = financeDict();
  CHECK(expand_identifier("SlsTx", d).phrase == "sales tax");
  CHECK(expand_identifier("Bal", d).phrase == "balance");
  CHECK(expand_identifier("Refnd", d).phrase == "refund");
  CHECK(expand_identifier("tntvAmt", d).phrase == "tentative amount");
  CHECK(expand_identifier("finPayment", d).phrase == "final payment");
  CHECK(expand_identifier("fPayment", d).phrase == "final payment");
  CHECK(expand_identifier("FinPmt", d).phrase == "final payment");

  Expansion e = expand_identifier("zzq", d);
  CHECK(e.phrase == "zzq");
  CHECK(e.score == 0.0);
}

TEST_CASE("expansion score is the mean of token scores") {
  Dictionary d = financeDict();
  Expansion e = expand_identifier("SlsTx", d);
  CHECK(e.score == doctest::Approx(0.9));
  Expansion mixed = expand_identifier("BalZzq", d);
  CHECK(mixed.phrase == "balance zzq");
  CHECK(mixed.score == doctest::Approx((0.8 * 3.0 / 7.0) / 2.0));
}

TEST_CASE("alternatives are ranked and capped at three") {
  Dictionary d = make_dictionary({"ta", "tab", "tag", "tan", "tap", "tar"});
  Expansion e = expand_identifier("ta", d);
  CHECK(e.phrase == "ta");  // exact beats prefixes
  REQUIRE(e.alternatives.size() == 3);
  CHECK(e.alternatives[0].first == "tab");  // prefix ties break alphabetically
  CHECK(e.alternatives[1].first == "tag");
  CHECK(e.alternatives[2].first == "tan");
  CHECK(e.alternatives[0].second < e.score);
}

TEST_CASE("identity: dictionary words expand to themselves at 1.0") {
  Dictionary d = financeDict();
  for (const std::string& w : d.words) {
    Expansion e = expand_identifier(w, d);
    CHECK(e.phrase == w);
    CHECK(e.score == doctest::Approx(1.0));
  }
}

TEST_CASE("soundness: non-verbatim candidates satisfy the predicate") {
  Dictionary d = financeDict();
  // deterministic token soup, including junk
  std::vector<std::string> tokens = {"sls", "tx",  "bal", "refnd", "tntv",
                                     "amt", "fin", "pmt", "q",     "slstx",
                                     "aa",  "ba",  "ff",  "pp",    "tt"};
  for (const std::string& t : tokens) {
    for (const TokenCandidate& c : expand_token(t, d)) {
      if (c.score == 0.0) {
        CHECK(c.text == t);  // verbatim fallback only
      } else {
        CHECK(subsequenceWithFirstLetter(t, c.text));
        CHECK(c.score <= 1.0);
        CHECK(c.score > 0.0);
      }
    }
  }
}

TEST_CASE("determinism: identical inputs give identical expansions") {
  Dictionary d = financeDict();
  Expansion a = expand_identifier("tntvAmt", d);
  Expansion b = expand_identifier("tntvAmt", d);
  CHECK(a.phrase == b.phrase);
  CHECK(a.score == b.score);
  CHECK(a.alternatives == b.alternatives);
}

TEST_CASE("monotone dictionary growth never demotes the top candidate") {
  std::vector<std::string> words = {"sales", "tax"};
  Dictionary small = make_dictionary(words);
  double before = expand_identifier("SlsTx", small).score;
  words.insert(words.end(), {"salmon", "taxi", "table", "sale"});
  Dictionary grown = make_dictionary(words);
  double after = expand_identifier("SlsTx", grown).score;
  CHECK(after >= before);
}

TEST_CASE("load_dictionary normalizes, deduplicates and validates") {
  std::string path = "/tmp/tacit_dict_test.txt";
  {
    std::ofstream out(path);
    out << "Sales\n" << "tax\n" << "tax\n" << "# comment\n" << "\n"
        << "sales tax  # a phrase\n";
  }
  Dictionary d = load_dictionary(path);
  CHECK(d.words == std::vector<std::string>{"sales", "tax"});
  CHECK(d.phrases == std::vector<std::string>{"sales tax"});
  std::remove(path.c_str());

  SUBCASE("empty file is a valid empty dictionary") {
    std::ofstream(path) << "";
    Dictionary e = load_dictionary(path);
    CHECK(e.words.empty());
    CHECK(expand_identifier("SlsTx", e).phrase == "sls tx");  // verbatim
    CHECK(expand_identifier("SlsTx", e).score == 0.0);
    std::remove(path.c_str());
  }
  SUBCASE("non-letter content is a FormatError with its line") {
    std::ofstream(path) << "tax\nt@x\n";
    try {
      load_dictionary(path);
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(e.line() == 2);
    }
    std::remove(path.c_str());
  }
  SUBCASE("missing file is an IoError") {
    CHECK_THROWS_AS(load_dictionary("/nonexistent/dict"), IoError);
  }
}

TEST_CASE("the shipped finance dictionary matches the fixture") {
  Dictionary d = load_dictionary(test::dataDir() + "/finance.dict");
  CHECK(d.words == financeDict().words);
}

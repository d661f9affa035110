#include <doctest.h>

#include "helpers.hpp"
#include "tacit/lint.hpp"

using namespace tacit;

namespace {

Model fixture(const std::string& name) {
  return test::parseValid(test::readFile(test::fixtureDir() + "/" + name),
                          name);
}

}  // namespace

TEST_CASE("self-falsifying rule is flagged") {
  Model m = fixture("self_falsifying.dsl");
  auto fs = lint_self_falsifying(m);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].category == Category::LangUnintended);
  CHECK(fs[0].subjects == std::vector<std::string>{"Disarm", "armed"});
}

TEST_CASE("emit-only and event-triggered rules are not self-falsifying") {
  CHECK(lint_self_falsifying(fixture("self_falsifying_neg.dsl")).empty());
  Model m = test::parseValid(
      "model M\nvar armed: bool\nrule R: when event e do set armed = false");
  CHECK(lint_self_falsifying(m).empty());
}

TEST_CASE("if-clause variables count for self-falsification") {
  Model m = test::parseValid(
      "model M\nvar armed: bool\nvar hot: bool\n"
      "rule R: when event e if hot do set hot = false\n");
  REQUIRE(lint_self_falsifying(m).size() == 1);
}

TEST_CASE("self-falsifying never flags rules that leave condition variables alone") {
  Model m = test::parseValid(test::readFile(test::fixtureDir() + "/kitchen_sink.dsl"));
  for (const Finding& f : lint_self_falsifying(m)) {
    REQUIRE(f.subjects.size() >= 2);
    // every reported rule assigns at least one of its condition variables
    const Rule* rule = nullptr;
    for (const Rule& r : m.rules)
      if (r.name == f.subjects[0]) rule = &r;
    REQUIRE(rule != nullptr);
    bool assignsCondVar = false;
    for (const Action& a : rule->actions) {
      if (a.kind != Action::Kind::Assign) continue;
      std::vector<std::string> vars;
      if (rule->triggerCond) vars = expr_variables(*rule->triggerCond);
      if (rule->condition) {
        auto more = expr_variables(*rule->condition);
        vars.insert(vars.end(), more.begin(), more.end());
      }
      if (std::find(vars.begin(), vars.end(), a.target) != vars.end())
        assignsCondVar = true;
    }
    CHECK(assignsCondVar);
  }
}

TEST_CASE("order-unspecified: two rules on one event, no priorities") {
  Model m = fixture("order_unspecified.dsl");
  auto fs = lint_order_unspecified(m);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].category == Category::LangUnspecified);
  CHECK(fs[0].subjects == std::vector<std::string>{"First", "Second"});
}

TEST_CASE("order-unspecified: a priority moves the pair to fragmented") {
  Model m = fixture("order_unspecified_neg.dsl");
  CHECK(lint_order_unspecified(m).empty());
  CHECK(lint_fragmented(m).size() == 1);
}

TEST_CASE("order-unspecified: three rules on one event give three pairs") {
  Model m = test::parseValid(
      "model M\nrule R1: when event E do emit a\n"
      "rule R2: when event E do emit b\n"
      "rule R3: when event E do emit c\n");
  CHECK(lint_order_unspecified(m).size() == 3);
}

TEST_CASE("fragmented: base plus override on the same event") {
  Model m = fixture("fragmented.dsl");
  auto fs = lint_fragmented(m);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].category == Category::LangFragmented);
  CHECK(fs[0].subjects == std::vector<std::string>{"Base", "Override"});
  CHECK(lint_order_unspecified(m).empty());
}

TEST_CASE("fragmented: equal priorities are quiet") {
  Model m = fixture("fragmented_neg.dsl");
  CHECK(lint_fragmented(m).empty());
  CHECK(lint_order_unspecified(m).empty());  // both declare priorities
}

TEST_CASE("fragmented: different events are unrelated") {
  Model m = test::parseValid(
      "model M\nrule R1: when event E do emit a\n"
      "rule R2 priority 2: when event F do emit b\n");
  CHECK(lint_fragmented(m).empty());
}

TEST_CASE("fragmented: syntactically identical condition triggers") {
  Model m = test::parseValid(
      "model M\nvar x: bool\n"
      "rule R1: when cond x == true do emit a\n"
      "rule R2 priority 9: when cond x  ==  true do emit b\n");
  CHECK(lint_fragmented(m).size() == 1);
}

TEST_CASE("order and fragmented partition same-trigger pairs") {
  for (const char* fx : {"order_unspecified.dsl", "order_unspecified_neg.dsl",
                         "fragmented.dsl", "fragmented_neg.dsl",
                         "kitchen_sink.dsl"}) {
    Model m = fixture(fx);
    auto order = lint_order_unspecified(m);
    auto frag = lint_fragmented(m);
    for (const Finding& a : order)
      for (const Finding& b : frag) CHECK(a.subjects != b.subjects);
  }
}

TEST_CASE("silent conditions: unguarded sibling is questioned") {
  Model m = test::parseValid(
      "model M\nvar engineOn: bool\nstate S\nstate A\nstate B\n"
      "trans S -> A on e when engineOn\n"
      "trans S -> B on f\n");
  auto fs = lint_silent_conditions(m);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].category == Category::CodeSilentCondition);
  CHECK(fs[0].subjects == std::vector<std::string>{"S", "engineOn"});
  CHECK(fs[0].location.line == 7);
}

TEST_CASE("silent conditions: both siblings guarded is quiet") {
  Model m = test::parseValid(
      "model M\nvar engineOn: bool\nstate S\nstate A\nstate B\n"
      "trans S -> A on e when engineOn\n"
      "trans S -> B on f when !engineOn\n");
  CHECK(lint_silent_conditions(m).empty());
}

TEST_CASE("silent conditions: single outgoing transition is quiet") {
  Model m = test::parseValid(
      "model M\nvar engineOn: bool\nstate S\nstate A\n"
      "trans S -> A on e when engineOn\n");
  CHECK(lint_silent_conditions(m).empty());
}

TEST_CASE("fixed parameters: recurring literal across two guards") {
  Model m = test::parseValid(
      "model M\nvar speed: int [0..99]\nstate S\nstate A\n"
      "trans S -> A on e when speed < 50\n"
      "trans A -> S on f when speed >= 50\n");
  auto fs = lint_fixed_parameters(m);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].category == Category::CodeFixedParameter);
  CHECK(fs[0].subjects == std::vector<std::string>{"speed"});
  CHECK(fs[0].question.find("50") != std::string::npos);
  CHECK(fs[0].evidence.find("line 5") != std::string::npos);
  CHECK(fs[0].evidence.find("line 6") != std::string::npos);
}

TEST_CASE("fixed parameters: single occurrence is below threshold") {
  Model m = test::parseValid(
      "model M\nvar speed: int [0..99]\nstate S\n"
      "trans S -> S on e when speed < 50\n");
  CHECK(lint_fixed_parameters(m).empty());
}

TEST_CASE("fixed parameters: boolean literals are excluded") {
  Model m = test::parseValid(
      "model M\nvar a: bool\nvar b: bool\nstate S\n"
      "trans S -> S on e when a == true\n"
      "trans S -> S on f when b == true\n"
      "trans S -> S on g do set a = true, set b = true\n");
  CHECK(lint_fixed_parameters(m).empty());
}

TEST_CASE("fixed parameters: one guard mentioning a literal twice is one site") {
  Model m = test::parseValid(
      "model M\nvar i: int [0..99]\nvar j: int [0..99]\nstate S\n"
      "trans S -> S on e when i < 50 || j < 50\n");
  CHECK(lint_fixed_parameters(m).empty());  // one distinct site only
}

TEST_CASE("fixed parameters: enumeration literals count, initials do not") {
  Model m = test::parseValid(
      "model M\nvar d: enum {open, closed} = closed\nstate S\nstate T\n"
      "trans S -> T on e when d == closed\n"
      "trans T -> S on f do set d = closed\n");
  auto fs = lint_fixed_parameters(m);
  REQUIRE(fs.size() == 1);  // 'closed' in a guard and an assignment
  CHECK(fs[0].question.find("closed") != std::string::npos);
}

TEST_CASE("similar names: edit distance within threshold") {
  Model m = test::parseValid("model M\nvar finPayment: bool\nvar finPayments: bool");
  auto fs = lint_similar_names(symbol_table(m), {}, Dictionary{}, "t.dsl");
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].category == Category::LangUnclear);
  CHECK(fs[0].subjects ==
        std::vector<std::string>{"finPayment", "finPayments"});
  CHECK(normalized_edit_distance("finPayment", "finPayments") ==
        doctest::Approx(1.0 / 11.0));
}

TEST_CASE("similar names: identical expansions catch alias families") {
  Model m = test::parseValid("model M\nvar finPmt: bool\nvar fPayment: bool");
  Dictionary d = make_dictionary({"final", "payment"});
  auto fs = lint_similar_names(symbol_table(m), {}, d, "t.dsl");
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].evidence.find("final payment") != std::string::npos);
}

TEST_CASE("similar names: distant names with distinct expansions are quiet") {
  Model m = test::parseValid("model M\nvar engine: bool\nvar wheel: bool");
  auto fs = lint_similar_names(symbol_table(m), {}, Dictionary{}, "t.dsl");
  CHECK(fs.empty());
}

TEST_CASE("similar names: same text in different namespaces is flagged") {
  Model m = test::parseValid(
      "model M\nvar engine: bool\nstate engineState\ntrans engineState -> engineState on engine");
  auto fs = lint_similar_names(symbol_table(m), {}, Dictionary{}, "t.dsl");
  REQUIRE(fs.size() == 1);  // variable 'engine' vs event 'engine'
  CHECK(fs[0].evidence == "identical names");
}

TEST_CASE("similar names: threshold is configurable") {
  Model m = test::parseValid("model M\nvar alpha: bool\nvar alphb: bool");
  LintConfig strict;
  strict.similarNameMaxDistance = 0.0;
  CHECK(lint_similar_names(symbol_table(m), strict, Dictionary{}, "t").empty());
  LintConfig loose;
  loose.similarNameMaxDistance = 0.2;
  CHECK(lint_similar_names(symbol_table(m), loose, Dictionary{}, "t").size() == 1);
}

TEST_CASE("pair lints emit at most C(n,2) findings and no self-pairs") {
  Model m = fixture("kitchen_sink.dsl");
  auto table = symbol_table(m);
  size_t n = table.entries.size();
  auto fs = lint_similar_names(table, {}, Dictionary{}, "k.dsl");
  CHECK(fs.size() <= n * (n - 1) / 2);
  for (const auto& f : fs) REQUIRE(f.subjects.size() == 2);
  size_t rules = m.rules.size();
  CHECK(lint_order_unspecified(m).size() <= rules * (rules - 1) / 2);
  CHECK(lint_fragmented(m).size() <= rules * (rules - 1) / 2);
}

TEST_CASE("lints are pure: two runs of every lint agree") {
  Model m = fixture("kitchen_sink.dsl");
  auto ids = [](const std::vector<Finding>& fs) {
    std::vector<std::string> out;
    for (const auto& f : fs) out.push_back(f.id);
    return out;
  };
  CHECK(ids(lint_self_falsifying(m)) == ids(lint_self_falsifying(m)));
  CHECK(ids(lint_order_unspecified(m)) == ids(lint_order_unspecified(m)));
  CHECK(ids(lint_fragmented(m)) == ids(lint_fragmented(m)));
  CHECK(ids(lint_silent_conditions(m)) == ids(lint_silent_conditions(m)));
  CHECK(ids(lint_fixed_parameters(m)) == ids(lint_fixed_parameters(m)));
  auto t = symbol_table(m);
  CHECK(ids(lint_similar_names(t, {}, Dictionary{}, "k.dsl")) ==
        ids(lint_similar_names(t, {}, Dictionary{}, "k.dsl")));
}

#include <gtest/gtest.h>

#include "cover2/audit.hpp"

using namespace cover2;

#ifndef COVER2_DATA_DIR
#define COVER2_DATA_DIR "data"
#endif

namespace {

const ScenarioCatalog& shipped() {
  static const ScenarioCatalog cat = load_scenarios(std::string(COVER2_DATA_DIR) + "/scenarios.txt");
  return cat;
}

BigInt ev(const std::string& src, std::initializer_list<std::pair<const char*, long long>> vars = {}) {
  Env env;
  for (auto [k, v] : vars) env.set(k, BigInt(v));
  return eval(parse_expr(src), env).integer();
}

std::string parse_error(const std::string& text) {
  try {
    parse_scenarios(text);
  } catch (const ScenarioParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Expr, Arithmetic) {
  EXPECT_EQ(ev("2 + 3 * 4"), 14);
  EXPECT_EQ(ev("2^10 - 1"), 1023);
  EXPECT_EQ(ev("-7 % 3"), 2);
  EXPECT_EQ(ev("gcd(q^3 + 1, q + 1)", {{"q", 5}}), 6);
  EXPECT_EQ(ev("lcm(4, 6, 10)"), 60);
  EXPECT_EQ(ev("floordiv(7, 2)"), 3);
  EXPECT_THROW(ev("7 / 2"), ExprError);
  EXPECT_THROW(ev("1 / 0"), ExprError);
  EXPECT_THROW(ev("x + 1"), ExprError);
  EXPECT_THROW(parse_expr("(1 + 2"), ExprError);
}

TEST(Expr, GroupFunctions) {
  EXPECT_EQ(ev("order(Sp(2, 2))"), 720);
  EXPECT_EQ(ev("singer(Sp(5, 2))"), 33);
  EXPECT_EQ(ev("bertrand(Sp(5, 3))"), 140);
  EXPECT_EQ(ev("sub(FieldExtSubgroup, Sp(5, 2), 5)"), 163680);
  EXPECT_THROW(ev("order(Sp(2, 6))"), ExprError);
}

TEST(Expr, LetDefinitionsAreLazy) {
  Env env;
  env.set("q", 3);
  env.define("y", parse_expr("q^2 + 1"));
  EXPECT_EQ(eval(parse_expr("y * 2"), env).integer(), 20);
}

TEST(Parser, ReportsLineNumbers) {
  EXPECT_NE(parse_error("version: 1\nscenario: a\napplies: n >= 1\nbogus: 1\nend\n").find("line 4"), std::string::npos);
  EXPECT_NE(parse_error("version: 1\nscenario: a\nend\n").find("line 3"), std::string::npos);
  EXPECT_NE(parse_error("version: 1\nscenario: a\napplies: n >= 1\ncheck: DIVIDES(1 +, 2)\nend\n").find("line 4"),
            std::string::npos);
  EXPECT_NE(parse_error("version: 1\nscenario: a\napplies: n >= 1\n").find("not closed"), std::string::npos);
  EXPECT_NE(parse_error("version: 2\n").find("version"), std::string::npos);
  EXPECT_NE(parse_error("version: 1\nscenario: a\napplies: 1 == 1\nend\nscenario: a\napplies: 1 == 1\nend\n")
                .find("duplicate"),
            std::string::npos);
}

TEST(Parser, MinimalScenarioRuns) {
  auto cat = parse_scenarios(
      "version: 1\n"
      "scenario: toy\n"
      "applies: n >= 2\n"
      "let: a = q^n - 1\n"
      "check: DIVIDES(q - 1, a)\n"
      "check: forall k in 1..n: DIVIDES(q^k - 1, a * (q^k - 1))\n"
      "check: when n % 2 == 0: DIVIDES(q + 1, a)\n"
      "manual: a step done by hand\n"
      "end\n");
  auto r = run_scenario(cat, "toy", 3, 4);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.checks.size(), 4u);
  EXPECT_EQ(r.skipped, 1u);
  EXPECT_EQ(r.manual.size(), 1u);
  EXPECT_THROW(run_scenario(cat, "toy", 1, 4), ScenarioInapplicable);
  EXPECT_THROW(run_scenario(cat, "nope", 3, 4), std::invalid_argument);
}

TEST(Parser, FailingCheckIsReported) {
  auto cat = parse_scenarios("version: 1\nscenario: bad\napplies: 1 == 1\ncheck: DIVIDES(7, q^2 - 1)\nend\n");
  auto r = run_scenario(cat, "bad", 1, 5);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.failures, 1u);
  EXPECT_EQ(r.checks[0].lhs, "7");
  EXPECT_EQ(r.checks[0].rhs, "24");
}

TEST(Shipped, ListingIsComplete) {
  auto infos = list_scenarios(shipped());
  EXPECT_GE(infos.size(), 15u);
  for (const auto& s : infos) {
    EXPECT_FALSE(s.citation.empty()) << s.id;
    EXPECT_FALSE(s.applies.empty()) << s.id;
    EXPECT_GT(s.checks + s.manual, 0u) << s.id;
  }
  for (const char* id : {"sp-odd-q", "sp-even-q", "sp10-2", "su5-4", "omega-odd", "omega-plus", "omega-minus",
                         "omega2-minus-action"})
    EXPECT_NE(shipped().find(id), nullptr) << id;
}

TEST(Shipped, SymplecticOddFirstCheck) {
  auto r = run_scenario(shipped(), "sp-odd-q", 5, 3);
  EXPECT_TRUE(r.pass);
  ASSERT_FALSE(r.checks.empty());
  EXPECT_EQ(r.checks[0].type, CheckType::TorusExists);
  EXPECT_EQ(r.checks[0].lhs, "164");
  EXPECT_THROW(run_scenario(shipped(), "sp-odd-q", 5, 4), ScenarioInapplicable);
}

TEST(Shipped, GridHasNoFailures) {
  auto sum = run_grid(shipped(), all_ids(shipped()), 5, 9, {2, 3, 4, 5});
  EXPECT_EQ(sum.failed, 0u);
  EXPECT_GT(sum.passed, 0u);
  auto again = run_grid(shipped(), all_ids(shipped()), 5, 9, {2, 3, 4, 5}, 1);
  ASSERT_EQ(again.cells.size(), sum.cells.size());
  for (std::size_t i = 0; i < sum.cells.size(); ++i) EXPECT_EQ(again.cells[i].status, sum.cells[i].status);
}

TEST(Shipped, BertrandOverride) {
  AuditOverrides ov;
  ov.t = 4;
  auto r = run_scenario(shipped(), "sp10-2", 5, 2, ov);
  EXPECT_EQ(r.t, 4u);
}

#ifdef COVER2_HAVE_EMBEDDED_SCENARIOS
TEST(Shipped, EmbeddedCopyMatchesDataFile) {
  EXPECT_EQ(all_ids(builtin_scenarios()), all_ids(shipped()));
}
#endif

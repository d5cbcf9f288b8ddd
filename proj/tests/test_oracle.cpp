#include "support.hpp"

#include "ltlfuc/oracle.hpp"
#include "ltlfuc/parser.hpp"

#include <doctest.h>

using namespace ltlfuc;

TEST_CASE("oracle: small verdicts") {
  CHECK_FALSE(oracle_sat(parse_formula("a & !a")).satisfiable);

  Verdict v = oracle_sat(parse_formula("X a"));
  REQUIRE(v.satisfiable);
  CHECK(v.witness->length() == 2);
  // Enumeration: no length-1 model, some length-2 model.
  CHECK_FALSE(testing::enumerate_model(parse_formula("X a"), {"a"}, 1));
  CHECK(testing::enumerate_model(parse_formula("X a"), {"a"}, 2));

  CHECK_FALSE(oracle_sat(parse_formula("G a & F !a")).satisfiable);
  CHECK_FALSE(testing::enumerate_model(parse_formula("G a & F !a"), {"a"}, 6));

  CHECK(oracle_sat(top()).satisfiable);
  CHECK_FALSE(oracle_sat(bottom()).satisfiable);
  CHECK(oracle_sat(parse_formula("N false")).satisfiable);
  CHECK_FALSE(oracle_sat(parse_formula("X true & N false")).satisfiable);
  CHECK_FALSE(oracle_sat(parse_formula("G X true")).satisfiable);
}

TEST_CASE("oracle: long shortest witness") {
  Verdict v = oracle_sat(parse_formula("X X X X X a & G(a -> X b)"));
  REQUIRE(v.satisfiable);
  CHECK(v.witness->length() == 7);
}

TEST_CASE("oracle: budgets raise instead of guessing") {
  OracleOptions o;
  o.max_len = 3;
  CHECK_THROWS_AS(oracle_sat(parse_formula("X X X X a"), o), OracleBudgetExceeded);
  o = {};
  o.max_states = 2;
  CHECK_THROWS_AS(oracle_sat(parse_formula("X X X X a"), o), OracleBudgetExceeded);
}

TEST_CASE("oracle: minimal unsatisfiable subsets") {
  CHECK(oracle_all_min_ucs(parse_spec("a & !a & b")) == std::vector<LabelSet>{{"c1", "c2"}});
  CHECK(oracle_all_min_ucs(parse_spec("a")).empty());
  // G a & G(a -> X b) has no finite model either: X b fails at the last state.
  CHECK_FALSE(testing::enumerate_model(parse_formula("G a & G(a -> X b)"), {"a", "b"}, 5));
  CHECK(oracle_all_min_ucs(parse_spec("G a & F !a & G(a -> X b)")) ==
        std::vector<LabelSet>{{"c1", "c2"}, {"c1", "c3"}});
  auto ucs = oracle_all_min_ucs(parse_spec("a & !a & G b & F !b"));
  CHECK(ucs.size() == 2);
}

TEST_CASE("oracle: witnesses satisfy the formula") {
  std::mt19937_64 rng(101);
  testing::GenOptions o;
  for (int i = 0; i < 400; ++i) {
    Formula f = testing::random_formula(rng, o);
    Verdict v = oracle_sat(f);
    if (v.satisfiable)
      REQUIRE_MESSAGE(holds(f, *v.witness), print(f));
  }
}

TEST_CASE("oracle agrees with trace enumeration up to length 4") {
  std::mt19937_64 rng(202);
  testing::GenOptions o;
  o.vars = {"a", "b"};
  for (int i = 0; i < 400; ++i) {
    Formula f = testing::random_formula(rng, o);
    auto model = testing::enumerate_model(f, {"a", "b"}, 4);
    Verdict v = oracle_sat(f, {"a", "b"});
    if (model) {
      REQUIRE_MESSAGE(v.satisfiable, print(f));
      CHECK_MESSAGE(v.witness->length() == model->length(), print(f));
    } else if (v.satisfiable) {
      CHECK_MESSAGE(v.witness->length() > 4, print(f));
    }
  }
}

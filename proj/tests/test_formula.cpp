#include "support.hpp"

#include "ltlfuc/parser.hpp"

#include <doctest.h>

using namespace ltlfuc;

TEST_CASE("parse: implication under globally") {
  Formula f = parse_formula("G (a -> (X b))");
  CHECK(f == globally(implies(var("a"), next(var("b")))));
  CHECK(parse_formula("a") == var("a"));
}

TEST_CASE("parse: top-level conjuncts become labelled spec entries") {
  Spec s = parse_spec("(G a) & (F (! a))");
  REQUIRE(s.conjuncts.size() == 2);
  CHECK(s.conjuncts[0].label == "c1");
  CHECK(s.conjuncts[0].formula == globally(var("a")));
  CHECK(s.conjuncts[1].label == "c2");
  CHECK(s.conjuncts[1].formula == eventually(neg(var("a"))));
  CHECK(s.alphabet.names() == std::vector<std::string>{"a"});
}

TEST_CASE("parse: precedence and associativity") {
  CHECK(parse_formula("a | b & c") == disj(var("a"), conj(var("b"), var("c"))));
  CHECK(parse_formula("a -> b -> c") == implies(var("a"), implies(var("b"), var("c"))));
  CHECK(parse_formula("a U b U c") == until(var("a"), until(var("b"), var("c"))));
  CHECK(parse_formula("a & b U c") == conj(var("a"), until(var("b"), var("c"))));
  CHECK(parse_formula("G a U b") == until(globally(var("a")), var("b")));
  CHECK(parse_formula("!a <-> b") == iff(neg(var("a")), var("b")));
  CHECK(parse_formula("X X a") == next(next(var("a"))));
  CHECK(parse_formula("Z a S Y b") == since(wyesterday(var("a")), yesterday(var("b"))));
  CHECK(parse_formula("true & false") == conj(top(), bottom()));
  CHECK(parse_formula("a # trailing comment\n& b") == conj(var("a"), var("b")));
  CHECK(parse_formula("Xa") == var("Xa"));
}

TEST_CASE("parse: spec splits nested conjunctions left to right") {
  Spec s = parse_spec("a & (b & c) & d");
  REQUIRE(s.conjuncts.size() == 4);
  CHECK(s.conjuncts[3].formula == var("d"));
  CHECK(s.labels() == std::vector<std::string>{"c1", "c2", "c3", "c4"});
}

TEST_CASE("parse: errors carry positions") {
  try {
    parse_formula("a &\n  (b | )");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 8);
  }
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("a b"), ParseError);
  CHECK_THROWS_AS(parse_formula("a $ b"), ParseError);
  CHECK_THROWS_AS(parse_formula("(a"), ParseError);
}

TEST_CASE("parse: reserved identifiers") {
  CHECK_THROWS_AS(parse_formula("G end"), ReservedIdentifierError);
  CHECK_THROWS_AS(parse_formula("_act_1 | a"), ReservedIdentifierError);
  CHECK_THROWS_AS(parse_formula("_past_3"), ReservedIdentifierError);
  try {
    parse_formula("a & end");
  } catch (const ReservedIdentifierError& e) {
    CHECK(e.identifier() == "end");
    CHECK(e.column() == 5);
  }
  ParseOptions opts;
  opts.allow_reserved = true;
  CHECK(parse_formula("end -> X end", opts) == implies(var("end"), next(var("end"))));
  CHECK(parse_formula("ending") == var("ending"));
}

TEST_CASE("print: fully parenthesized") {
  CHECK(print(globally(var("a"))) == "(G a)");
  CHECK(print(since(var("a"), var("b"))) == "(a S b)");
  CHECK(print(neg(yesterday(var("a")))) == "(! (Y a))");
  CHECK(print(top()) == "true");
}

TEST_CASE("print/parse round trip on random formulas") {
  std::mt19937_64 rng(7);
  testing::GenOptions o;
  o.vars = {"a", "b", "c", "d"};
  o.temporal_depth = 3;
  o.boolean_depth = 2;
  for (int i = 0; i < 500; ++i) {
    Formula f = testing::random_formula(rng, o);
    Formula g = parse_formula(print(f));
    REQUIRE_MESSAGE(g == f, print(f));
    CHECK(free_vars(g) == free_vars(f));
  }
}

TEST_CASE("free_vars") {
  CHECK(free_vars(parse_formula("G(a -> X b)")) == std::set<std::string>{"a", "b"});
  CHECK(free_vars(top()).empty());
  CHECK(free_vars(parse_formula("(a S b) & Y a")) == std::set<std::string>{"a", "b"});
  CHECK(free_vars_ordered(parse_formula("b & a & b & c")) ==
        std::vector<std::string>{"b", "a", "c"});
}

TEST_CASE("structural equality, hashing and ordering") {
  Formula f = parse_formula("a U (b & X c)");
  Formula g = parse_formula("a U (b & X c)");
  CHECK(f == g);
  CHECK(f.hash() == g.hash());
  CHECK_FALSE(f < g);
  CHECK_FALSE(g < f);
  CHECK(parse_formula("a U b") != parse_formula("a R b"));
  FormulaMap<int> m;
  m[f] = 1;
  CHECK(m.at(g) == 1);
  CHECK(f.size() == 6);
  CHECK(temporal_depth(f) == 2);
  CHECK(has_past(parse_formula("F (Y a)")));
  CHECK_FALSE(has_past(f));
}

TEST_CASE("conj_all and disj_all") {
  CHECK(conj_all({}) == top());
  CHECK(disj_all({}) == bottom());
  CHECK(conj_all({var("a"), var("b"), var("c")}) ==
        conj(var("a"), conj(var("b"), var("c"))));
}

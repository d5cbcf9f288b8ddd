#include "support.hpp"

#include "ltlfuc/native.hpp"
#include "ltlfuc/oracle.hpp"
#include "ltlfuc/parser.hpp"
#include "ltlfuc/translations.hpp"

#include <doctest.h>

using namespace ltlfuc;

namespace {

bool final_state(const char* text) {
  Formula f = to_nnf(parse_formula(text));
  ConflictSearch cs(f, {});
  return cs.is_final({f});
}

} // namespace

TEST_CASE("native: final states") {
  CHECK(final_state("a U b"));
  CHECK_FALSE(final_state("X a"));
  CHECK(final_state("N a"));
  CHECK(final_state("N false"));
  CHECK(final_state("G a"));
  CHECK_FALSE(final_state("a & !a"));
  CHECK_FALSE(final_state("F X a"));
}

TEST_CASE("algorithm 3: worked examples") {
  UcResult r = algorithm3_uc(parse_spec("a & !a"));
  CHECK(r.status == Status::Unsat);
  CHECK(r.core == LabelSet{"c1", "c2"});
  CHECK(r.algorithm == "native");

  r = algorithm3_uc(parse_spec("X a"));
  REQUIRE(r.status == Status::Sat);
  CHECK(r.witness->length() == 2);
  CHECK(holds(parse_formula("X a"), *r.witness));

  r = algorithm3_uc(parse_spec("G a & F !a & b"));
  CHECK(r.status == Status::Unsat);
  CHECK(r.core == LabelSet{"c1", "c2"});

  r = algorithm3_uc(parse_spec("F (b & Y a) & G !a"));
  CHECK(r.status == Status::Unsat);
  r = algorithm3_uc(parse_spec("F (b & O a) & G (a -> X X !b)"));
  REQUIRE(r.status == Status::Sat);
  CHECK(holds(parse_formula("F (b & O a) & G (a -> X X !b)"), *r.witness));
}

TEST_CASE("native: frames never hold states that reach a final state early") {
  std::mt19937_64 rng(11);
  testing::GenOptions o;
  o.vars = {"a", "b"};
  o.past = false;
  int checked = 0;
  for (int n = 0; n < 200; ++n) {
    Formula f = to_nnf(testing::random_formula(rng, o));
    ConflictSearch cs(f, {});
    cs.run();
    const auto& frames = cs.frames();
    // A state containing c that lies in frames 0..i has no model of length <= i+1.
    for (std::size_t i = 0; i < frames.size(); ++i) {
      for (const auto& c : frames[i]) {
        bool everywhere = true;
        for (std::size_t j = 0; j < i && everywhere; ++j) {
          bool in = false;
          for (const auto& d : frames[j])
            in = in || std::includes(c.begin(), c.end(), d.begin(), d.end());
          everywhere = in;
        }
        if (!everywhere)
          continue;
        auto model = testing::enumerate_model(conj_all(c), {"a", "b"}, i + 1);
        CHECK_MESSAGE(!model, print(conj_all(c)));
        ++checked;
      }
    }
  }
  CHECK(checked > 60);
}

TEST_CASE("algorithm 3: agreement with the oracle on random specs") {
  std::mt19937_64 rng(91);
  testing::GenOptions o;
  int unsat = 0;
  for (int i = 0; i < 120; ++i) {
    Spec s = testing::random_spec(rng, 4, o);
    bool expect = oracle_sat(s.conjunction()).satisfiable;
    UcResult r = algorithm3_uc(s);
    REQUIRE_MESSAGE(r.status != Status::Unknown, print(s.conjunction()));
    CHECK_MESSAGE((r.status == Status::Sat) == expect, print(s.conjunction()));
    if (r.status == Status::Sat) {
      CHECK(holds(s.conjunction(), *r.witness));
    } else {
      ++unsat;
      CHECK_FALSE(oracle_sat(s.conjunction_of({r.core->begin(), r.core->end()})).satisfiable);
    }
  }
  CHECK(unsat > 10);
}

TEST_CASE("algorithm 3: limits give unknown") {
  Alg3Options o;
  o.deadline = Deadline::after(0);
  CHECK(algorithm3_uc(parse_spec("G a & F !a"), o).status == Status::Unknown);
  o = {};
  o.max_frames = 1;
  UcResult r = algorithm3_uc(parse_spec("G (a -> X b) & G (b -> X c) & a & F !c & G !c"), o);
  CHECK(r.status == Status::Unknown);
}

#include "support.hpp"

#include "ltlfuc/oracle.hpp"
#include "ltlfuc/parser.hpp"
#include "ltlfuc/symbolic.hpp"
#include "ltlfuc/translations.hpp"
#include "ltlfuc/trp_bridge.hpp"

#include <doctest.h>

#include <chrono>
#include <cstdlib>

using namespace ltlfuc;

namespace {

std::string fixture(const char* name) { return testing::fixture_dir() + "/" + name; }

ProverConfig stub_config() {
  ProverConfig c;
  c.executable = LTLFUC_BIN;
  c.args = {"stub-prover", "{input}", "--timeout", "20"};
  c.timeout = 30;
  return c;
}

ProverConfig echo_config(const char* reply) {
  setenv("PROVER_REPLY", reply, 1);
  ProverConfig c;
  c.executable = fixture("echo_prover.sh");
  c.timeout = 10;
  return c;
}

bool has_line(const std::vector<ExportLine>& lines, const Formula& f) {
  for (const auto& l : lines)
    if (l.formula == f)
      return true;
  return false;
}

} // namespace

TEST_CASE("trp: exported lines") {
  auto lines = export_lines(parse_spec("a"));
  CHECK(has_line(lines, parse_formula("F end", {true})));
  CHECK(has_line(lines, parse_formula("G (end -> X end)", {true})));
  CHECK(has_line(lines, parse_formula("_act_1 -> a", {true})));
  CHECK(has_line(lines, parse_formula("_act_1", {true})));

  Spec empty;
  lines = export_lines(empty);
  CHECK(has_line(lines, top()));
  for (const auto& ax : end_axioms())
    CHECK(has_line(lines, ax));

  lines = export_lines(parse_spec("F (b & Y a) & (a S b)"));
  for (const auto& l : lines)
    CHECK_MESSAGE(!has_past(l.formula), print(l.formula));
  CHECK(has_line(lines, parse_formula("_act_2", {true})));

  // strong next is translated
  lines = export_lines(parse_spec("X a"));
  CHECK(has_line(lines, parse_formula("_act_1 -> X (a & !end)", {true})));
}

TEST_CASE("trp: export round trip") {
  std::mt19937_64 rng(3);
  testing::GenOptions o;
  for (int i = 0; i < 50; ++i) {
    Spec s = testing::random_spec(rng, 4, o);
    auto back = parse_export(export_tr(s));
    auto lines = export_lines(s);
    REQUIRE(back.size() == lines.size());
    for (std::size_t k = 0; k < lines.size(); ++k) {
      CHECK(back[k].label == lines[k].label);
      CHECK(back[k].formula == lines[k].formula);
    }
  }
  CHECK_THROWS_AS(parse_export("g1 a & b"), ParseError);
  CHECK_THROWS_AS(parse_export("g1: a &"), ParseError);
  CHECK_THROWS_AS(export_tr(parse_spec("a"), "snf"), ProverError);
}

TEST_CASE("trp: inverse translation") {
  std::mt19937_64 rng(8);
  testing::GenOptions o;
  o.past = true;
  for (int i = 0; i < 500; ++i) {
    Formula f = testing::random_formula(rng, o);
    CHECK(ltl_to_ltlf(ftol(f)) == f);
  }
  CHECK_THROWS_AS(ltl_to_ltlf(parse_formula("X end", {true})), std::invalid_argument);
  CHECK_THROWS_AS(ltl_to_ltlf(parse_formula("F a", {true})), std::invalid_argument);
}

TEST_CASE("trp: exported text is equisatisfiable with the spec") {
  std::mt19937_64 rng(19);
  testing::GenOptions o;
  o.vars = {"a", "b"};
  for (int i = 0; i < 40; ++i) {
    Spec s = testing::random_spec(rng, 3, o);
    std::vector<Formula> parts;
    for (const auto& l : parse_export(export_tr(s)))
      parts.push_back(l.formula);
    bool expect = oracle_sat(s.conjunction()).satisfiable;
    CHECK_MESSAGE(ltl_satisfiable(conj_all(parts)) == expect, print(s.conjunction()));
  }
}

TEST_CASE("trp: prover output") {
  auto v = parse_prover_output("unsat\ncore: _act_1 _act_2\n");
  CHECK(v.status == Status::Unsat);
  CHECK(v.core_names == std::vector<std::string>{"_act_1", "_act_2"});
  v = parse_prover_output("unsat core: _act_1, _act_3");
  CHECK(v.core_names == std::vector<std::string>{"_act_1", "_act_3"});
  v = parse_prover_output("UNSAT\n");
  CHECK(v.status == Status::Unsat);
  CHECK_FALSE(v.core_names);
  CHECK(parse_prover_output("sat\n").status == Status::Sat);
  CHECK(parse_prover_output("unknown").status == Status::Unknown);
  CHECK(parse_prover_output("Input formula simplified to False").status == Status::ReducedToFalse);
  try {
    parse_prover_output("resolution graph exhausted");
    FAIL("expected a ProverError");
  } catch (const ProverError& e) {
    CHECK(e.raw() == "resolution graph exhausted");
  }
}

TEST_CASE("trp: process handling") {
  ProverConfig none;
  CHECK(run_prover(none, "x").kind == ProverRun::Kind::Unavailable);

  ProverConfig missing;
  missing.executable = "/nonexistent/prover";
  CHECK(run_prover(missing, "x").kind == ProverRun::Kind::Unavailable);

  ProverConfig silent;
  silent.executable = fixture("silent_prover.sh");
  silent.timeout = 0;
  CHECK(run_prover(silent, "x").kind == ProverRun::Kind::Timeout);
  silent.timeout = 0.3;
  auto start = std::chrono::steady_clock::now();
  CHECK(run_prover(silent, "x").kind == ProverRun::Kind::Timeout);
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(5));

  ProverConfig failing;
  failing.executable = fixture("failing_prover.sh");
  CHECK_THROWS_AS(run_prover(failing, "x"), ProverError);

  // the input file reaches the prover
  ProverConfig cat;
  cat.executable = "cat";
  ProverRun r = run_prover(cat, "g1: a\n");
  CHECK(r.kind == ProverRun::Kind::Finished);
  CHECK(r.output == "g1: a\n");
}

TEST_CASE("algorithm 4: verdict mapping") {
  Spec s = parse_spec("a & b & !a");
  UcResult r = algorithm4_uc(s, echo_config("unsat core: _act_1 _act_3"));
  CHECK(r.status == Status::Unsat);
  CHECK(r.core == LabelSet{"c1", "c3"});
  CHECK(r.algorithm == "trp");

  r = algorithm4_uc(s, echo_config("unsat"));
  CHECK(r.core == LabelSet{"c1", "c2", "c3"});

  r = algorithm4_uc(s, echo_config("sat"));
  CHECK(r.status == Status::Sat);
  CHECK_FALSE(r.witness);
  CHECK_FALSE(r.core);

  ProverConfig reduced;
  reduced.executable = fixture("reduced_prover.sh");
  r = algorithm4_uc(s, reduced);
  CHECK(r.status == Status::ReducedToFalse);
  CHECK_FALSE(r.core);

  ProverConfig garbled;
  garbled.executable = fixture("garbled_prover.sh");
  CHECK_THROWS_AS(algorithm4_uc(s, garbled), ProverError);

  r = algorithm4_uc(s, ProverConfig{});
  CHECK(r.status == Status::Unknown);
  CHECK(r.reason == "prover unavailable");

  ProverConfig zero = echo_config("sat");
  zero.timeout = 0;
  CHECK(algorithm4_uc(s, zero).status == Status::Unknown);
}

TEST_CASE("algorithm 4: stub prover") {
  CHECK(stub_prover(export_tr(parse_spec("a")), 10) == "sat\n");
  std::string out = stub_prover(export_tr(parse_spec("G a & F !a & b")), 10);
  CHECK(out.rfind("unsat\ncore:", 0) == 0);
  CHECK_THROWS_AS(stub_prover("g1: a\n", 10), std::invalid_argument);

  UcResult r = algorithm4_uc(parse_spec("G a & F !a & b"), stub_config());
  REQUIRE(r.status == Status::Unsat);
  CHECK(r.core->count("c1"));
  CHECK(r.core->count("c2"));
  CHECK_FALSE(oracle_sat(parse_spec("G a & F !a & b").conjunction_of({r.core->begin(), r.core->end()}))
                  .satisfiable);

  r = algorithm4_uc(parse_spec("F (b & O a) & G (a -> X X !b)"), stub_config());
  CHECK(r.status == Status::Sat);
}

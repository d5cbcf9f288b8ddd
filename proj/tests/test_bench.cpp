#include "support.hpp"

#include "ltlfuc/bench.hpp"
#include "ltlfuc/parser.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace ltlfuc;
namespace fs = std::filesystem;

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

CommandResult run(const std::string& args) {
  std::string cmd = std::string(LTLFUC_BIN) + " " + args + " 2>&1";
  CommandResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;)
    r.output.append(buf.data(), n);
  int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const std::string& name) { return testing::fixture_dir() + "/" + name; }

fs::path scratch_dir(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("ltlfuc-test-" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ','))
      cells.push_back(cell);
    if (!line.empty() && line.back() == ',')
      cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

} // namespace

TEST_CASE("bench: suite loading") {
  auto problems = load_suite(fixture("crosscheck"));
  REQUIRE(problems.size() == 4);
  CHECK(problems[0].id == "next.ltlf");
  CHECK(problems[0].family == "-");
  CHECK(problems[0].spec->conjuncts.size() == 3);

  fs::path d = scratch_dir("load");
  write_file(d / "ok.ltlf", "a & b\n");
  write_file(d / "bad.ltlf", "a & end\n");
  write_file(d / "families.tsv", "ok.ltlf\tfamily one\n");
  problems = load_suite(d);
  REQUIRE(problems.size() == 2);
  CHECK_FALSE(problems[0].spec);
  CHECK(problems[1].family == "family one");
  auto records = run_bench(problems, {"bdd"}, {});
  CHECK(records[0].status == "ERROR");
  CHECK(records[1].status == "SAT");
  CHECK_THROWS(load_suite(d / "missing"));
  CHECK_THROWS_AS(run_algorithm("resolution", *problems[1].spec, {}), std::invalid_argument);
}

TEST_CASE("bench: records and csv") {
  fs::path d = scratch_dir("csv");
  write_file(d / "p1.ltlf", "a & !a\n");
  write_file(d / "p2.ltlf", "G a & F !a\n");
  write_file(d / "p3.ltlf", "X a\n");
  RunConfig cfg;
  cfg.timeout = 10;
  auto records = run_bench(load_suite(d), {"bdd", "native"}, cfg, 2);
  REQUIRE(records.size() == 6);
  std::ostringstream out;
  write_csv(out, records);
  auto rows = csv_rows(out.str());
  REQUIRE(rows.size() == 7);
  CHECK(out.str().rfind(csv_header() + "\n", 0) == 0);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 11);
    CHECK((rows[i][5] == "UNSAT") == !rows[i][6].empty());
    CHECK(std::stod(rows[i][7]) >= 0);
    bool unsat_problem = rows[i][0] != "p3.ltlf";
    CHECK(rows[i][9].empty() != unsat_problem);
  }
  // the virtual best never exceeds an UNSAT row of its problem
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i][5] == "UNSAT")
      CHECK(std::stod(rows[i][10]) <= std::stod(rows[i][7]));

  fs::path sat = scratch_dir("allsat");
  write_file(sat / "s.ltlf", "F a\n");
  std::ostringstream sat_out;
  write_csv(sat_out, run_bench(load_suite(sat), {"bdd", "bmc"}, cfg));
  for (const auto& row : csv_rows(sat_out.str()))
    if (row[0] == "s.ltlf")
      CHECK((row[9].empty() && row[10].empty()));
}

TEST_CASE("crosscheck: consistent suite and injected fault") {
  CrossOptions o;
  o.run.timeout = 10;
  auto problems = load_suite(fixture("crosscheck"));
  CrossReport rep = crosscheck(problems, o);
  CHECK(rep.issues.empty());
  CHECK(rep.oracle_decided == problems.size());
  CHECK(rep.records.size() == problems.size() * 3);

  o.tamper = [](const Problem& p, UcResult& r) {
    if (p.id == "until.ltlf" && r.core)
      r.core->erase("c1");
  };
  rep = crosscheck(problems, o);
  REQUIRE(rep.issues.size() == 3);
  for (const auto& i : rep.issues)
    CHECK(i.problem == "until.ltlf");

  o.tamper = [](const Problem& p, UcResult& r) {
    if (p.id == "sat.ltlf")
      r.status = Status::Unsat, r.core = LabelSet{"c1"};
  };
  rep = crosscheck(problems, o);
  CHECK(rep.issues.size() >= 3);
}

TEST_CASE("cli: check") {
  auto r = run("check --algo bdd --format json " + fixture("contradiction.ltlf"));
  CHECK(r.exit_code == 10);
  CHECK(r.output.find("\"core\": [\n    \"c1\",\n    \"c2\"\n  ]") != std::string::npos);

  r = run("check --algo bmc " + fixture("sat.ltlf"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("witness:") != std::string::npos);

  r = run("check --algo native --format json " + fixture("sat.ltlf"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"witness\"") != std::string::npos);

  r = run("check --algo trp " + fixture("sat.ltlf"));
  CHECK(r.exit_code == 20);
  CHECK(r.output.find("prover unavailable") != std::string::npos);

  r = run("check --algo trp --trp-exe " + fixture("reduced_prover.sh") + " " +
          fixture("contradiction.ltlf"));
  CHECK(r.exit_code == 30);

  r = run("check --algo trp --trp-exe " + fixture("garbled_prover.sh") + " " +
          fixture("contradiction.ltlf"));
  CHECK(r.exit_code == 2);

  r = run("check --algo bmc --k-max 0 " + fixture("crosscheck/until.ltlf"));
  CHECK(r.exit_code == 20);

  fs::path d = scratch_dir("cli");
  write_file(d / "bad.ltlf", "a & (b\n");
  r = run("check " + (d / "bad.ltlf").string());
  CHECK(r.exit_code == 2);
  r = run("check --algo nope " + fixture("sat.ltlf"));
  CHECK(r.exit_code == 2);
  r = run("check /nonexistent.ltlf");
  CHECK(r.exit_code == 2);
}

TEST_CASE("cli: oracle, bench, crosscheck, random") {
  auto r = run("oracle --all-ucs " + fixture("crosscheck/until.ltlf"));
  CHECK(r.exit_code == 10);
  CHECK(r.output.find("minimal core: c1 c2") != std::string::npos);

  fs::path d = scratch_dir("clibench");
  r = run("bench " + fixture("crosscheck") + " --algo bdd,native --timeout 10 --out " +
          (d / "out.csv").string());
  CHECK(r.exit_code == 0);
  std::ifstream in(d / "out.csv");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(csv_rows(ss.str()).size() == 9);

  r = run("crosscheck " + fixture("crosscheck") + " --timeout 10");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("0 inconsistencies") != std::string::npos);

  r = run("crosscheck " + fixture("crosscheck") + " --timeout 10 --inject-fault until.ltlf");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("INCONSISTENT until.ltlf") != std::string::npos);

  auto a = run("random --seed 5");
  auto b = run("random --seed 5");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  write_file(d / "r.ltlf", a.output);
  CHECK_NOTHROW(load_spec(d / "r.ltlf"));
}

// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if
// any criterion fails.

#include "support.hpp"

#include "ltlfuc/activation.hpp"
#include "ltlfuc/bench.hpp"
#include "ltlfuc/bmc.hpp"
#include "ltlfuc/native.hpp"
#include "ltlfuc/oracle.hpp"
#include "ltlfuc/parser.hpp"
#include "ltlfuc/sat.hpp"
#include "ltlfuc/symbolic.hpp"
#include "ltlfuc/translations.hpp"
#include "ltlfuc/trp_bridge.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <sys/wait.h>

using namespace ltlfuc;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;
int reported = 0;
constexpr int kCriteria = 9;

void report(bool ok, const std::string& name, const std::string& detail) {
  ++reported;
  failures += ok ? 0 : 1;
  std::cout << (ok ? "PASS" : "FAIL") << " [" << reported << "/" << kCriteria << "] " << name
            << ": " << detail << std::endl;
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt(double v, int prec = 2) {
  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(prec);
  o << v;
  return o.str();
}

std::optional<bool> oracle_verdict(const Formula& f) {
  try {
    return oracle_sat(f).satisfiable;
  } catch (const OracleBudgetExceeded&) {
    return std::nullopt;
  }
}

void trace_semantics() {
  auto start = Clock::now();
  Trace p1 = parse_trace("a=0;b=1\na=1;b=0\na=1;b=1\na=1;b=1\n");
  Trace p2 = parse_trace("a=0;b=1\na=1;b=0\na=1;b=1\na=1;b=0\n");
  Formula weak = parse_formula("G (a -> N b)");
  Formula strong = parse_formula("G (a -> X b)");
  bool ok = holds(weak, p1) && !holds(weak, p2) && !holds(strong, p1) && !holds(strong, p2);
  double ms = seconds_since(start) * 1000;
  report(ok && ms < 1.0, "trace semantics",
         std::string(ok ? "all four verdicts match" : "verdict mismatch") + ", " + fmt(ms, 3) +
             " ms");
}

// Criteria 2 and 3 share one run over the random suite.
void oracle_agreement_and_cores() {
  auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  GenOptions o; // three variables, temporal depth 2, past allowed
  std::map<std::string, int> disagree, unknown, decided, cores, bad_cores;
  int undecided_by_oracle = 0, unsat_specs = 0;
  std::vector<std::string> notes;

  for (int i = 0; i < 300; ++i) {
    Spec s = random_spec(rng, 4, o);
    auto expect = oracle_verdict(s.conjunction());
    if (!expect) {
      ++undecided_by_oracle;
      continue;
    }
    unsat_specs += *expect ? 0 : 1;
    Alg1Options o1;
    o1.deadline = Deadline::after(20);
    Alg2Options o2;
    o2.deadline = Deadline::after(1.0);
    Alg3Options o3;
    o3.deadline = Deadline::after(20);
    std::vector<UcResult> results{algorithm1_uc(s, o1), algorithm2_uc(s, o2), algorithm3_uc(s, o3)};
    auto labels = s.labels();
    for (const auto& r : results) {
      if (r.status == Status::Unknown) {
        ++unknown[r.algorithm];
        continue;
      }
      ++decided[r.algorithm];
      if ((r.status == Status::Sat) != *expect) {
        ++disagree[r.algorithm];
        notes.push_back(r.algorithm + " on " + print(s.conjunction()));
      }
      if (r.status == Status::Sat && r.witness && !holds(s.conjunction(), *r.witness)) {
        ++disagree[r.algorithm];
        notes.push_back(r.algorithm + " witness on " + print(s.conjunction()));
      }
      if (r.status != Status::Unsat)
        continue;
      ++cores[r.algorithm];
      bool subset = r.core && std::all_of(r.core->begin(), r.core->end(), [&](const std::string& l) {
                      return std::find(labels.begin(), labels.end(), l) != labels.end();
                    });
      bool unsat = false;
      if (subset) {
        auto v = oracle_verdict(s.conjunction_of({r.core->begin(), r.core->end()}));
        unsat = v && !*v;
      }
      if (!subset || !unsat) {
        ++bad_cores[r.algorithm];
        notes.push_back(r.algorithm + " core on " + print(s.conjunction()));
      }
    }
  }
  double elapsed = seconds_since(start);
  int total_disagree = 0, total_bad = 0, total_cores = 0;
  std::string per;
  for (const char* a : {"bdd", "bmc", "native"}) {
    total_disagree += disagree[a];
    total_bad += bad_cores[a];
    total_cores += cores[a];
    per += std::string(per.empty() ? "" : ", ") + a + " " + std::to_string(decided[a]) +
           " decided/" + std::to_string(unknown[a]) + " unknown";
  }
  for (const auto& n : notes)
    std::cout << "  note: " << n << "\n";
  report(total_disagree == 0 && elapsed < 600 && undecided_by_oracle < 300, "oracle agreement",
         std::to_string(300 - undecided_by_oracle) + " specs decided by the oracle (" +
             std::to_string(unsat_specs) + " unsat); " + per + "; " +
             std::to_string(total_disagree) + " disagreements; " + fmt(elapsed, 1) + " s");
  report(total_bad == 0 && total_cores > 0, "core validity",
         std::to_string(total_cores) + " cores checked, " + std::to_string(total_bad) +
             " violations");
}

void bdd_completeness() {
  std::mt19937_64 rng(777);
  GenOptions o;
  int mismatched = 0, min_mismatch = 0, unsat = 0;
  for (int i = 0; i < 100; ++i) {
    Spec s = random_spec(rng, 4, o);
    std::vector<bool> sat = oracle_subset_sat(s);
    std::vector<std::uint64_t> expect;
    for (std::uint64_t m = 0; m < sat.size(); ++m)
      if (!sat[m])
        expect.push_back(m);
    Alg1Options all;
    all.mode = CoreMode::All;
    Alg1Output out = algorithm1(s, all);
    if (out.result.status == Status::Unknown || out.unsat_assignments != expect)
      ++mismatched;
    if (expect.empty())
      continue;
    ++unsat;
    std::size_t smallest = s.conjuncts.size();
    for (const auto& uc : oracle_all_min_ucs(s))
      smallest = std::min(smallest, uc.size());
    Alg1Options mn;
    mn.mode = CoreMode::Minimum;
    UcResult r = algorithm1_uc(s, mn);
    if (r.status != Status::Unsat || r.core->size() != smallest)
      ++min_mismatch;
  }
  report(mismatched == 0 && min_mismatch == 0 && unsat > 0, "bdd completeness",
         "100 specs (" + std::to_string(unsat) + " unsat): " + std::to_string(mismatched) +
             " activation-set mismatches, " + std::to_string(min_mismatch) +
             " minimum-size mismatches");
}

void translation_equisatisfiability() {
  std::mt19937_64 rng(4242);
  GenOptions o;
  int checked[3] = {0, 0, 0}, wrong[3] = {0, 0, 0};
  for (int i = 0; i < 500; ++i) {
    // LTLf to LTL, decided through the tableau automaton
    Formula f = random_formula(rng, o);
    if (auto v = oracle_verdict(f)) {
      ++checked[0];
      wrong[0] += ltl_satisfiable(ltlf_to_ltl(f)) != *v;
    }
    // past removal
    Formula g = random_formula(rng, o);
    if (auto v = oracle_verdict(g)) {
      auto w = oracle_verdict(remove_past(g).combined());
      if (w) {
        ++checked[1];
        wrong[1] += *w != *v;
      }
    }
    // activation
    Spec s = random_spec(rng, 4, o);
    if (auto v = oracle_verdict(s.conjunction())) {
      ActivatedSpec act = activate(s);
      auto w = oracle_verdict(conj(act.psi, act.all_active()));
      if (w) {
        ++checked[2];
        wrong[2] += *w != *v;
      }
    }
  }
  bool ok = wrong[0] + wrong[1] + wrong[2] == 0 && checked[0] > 450 && checked[1] > 450 &&
            checked[2] > 450;
  report(ok, "translation equisatisfiability",
         "end encoding " + std::to_string(checked[0] - wrong[0]) + "/" +
             std::to_string(checked[0]) + ", past removal " +
             std::to_string(checked[1] - wrong[1]) + "/" + std::to_string(checked[1]) +
             ", activation " + std::to_string(checked[2] - wrong[2]) + "/" +
             std::to_string(checked[2]));
}

void sat_engine() {
  std::mt19937_64 rng(99);
  int wrong = 0, failed_bad = 0, unsat = 0;
  for (int i = 0; i < 1000; ++i) {
    int n = std::uniform_int_distribution<int>(1, 10)(rng);
    int m = std::uniform_int_distribution<int>(1, 45)(rng);
    CnfFormula f;
    f.num_vars = n;
    for (int c = 0; c < m; ++c) {
      int w = std::uniform_int_distribution<int>(1, 3)(rng);
      std::vector<int> clause;
      for (int k = 0; k < w; ++k) {
        int v = std::uniform_int_distribution<int>(1, n)(rng);
        clause.push_back(std::bernoulli_distribution(0.5)(rng) ? v : -v);
      }
      f.add_clause(clause);
    }
    std::vector<int> assume;
    for (int v = 1; v <= n; ++v)
      if (std::bernoulli_distribution(0.2)(rng))
        assume.push_back(std::bernoulli_distribution(0.5)(rng) ? v : -v);
    auto with_units = [&](const std::vector<int>& units) {
      auto cls = f.clauses;
      for (int u : units)
        cls.push_back({u});
      return testing::truth_table_sat(n, cls);
    };
    bool expect = with_units(assume);
    SatOutcome r = solve_assuming(f, assume);
    if ((r.status == SatStatus::Sat) != expect) {
      ++wrong;
      continue;
    }
    if (r.status == SatStatus::Sat) {
      for (const auto& c : f.clauses) {
        bool any = false;
        for (int l : c)
          any = any || (l > 0 ? (*r.model)[l] : !(*r.model)[-l]);
        wrong += any ? 0 : 1;
      }
      for (int a : assume)
        wrong += (a > 0 ? (*r.model)[a] : !(*r.model)[-a]) ? 0 : 1;
      continue;
    }
    ++unsat;
    const auto& failed = *r.failed_assumptions;
    bool within = std::all_of(failed.begin(), failed.end(), [&](int l) {
      return std::find(assume.begin(), assume.end(), l) != assume.end();
    });
    if (!within || with_units(failed))
      ++failed_bad;
  }
  report(wrong == 0 && failed_bad == 0 && unsat > 100, "sat engine",
         "1000 CNFs (" + std::to_string(unsat) + " unsat): " + std::to_string(wrong) +
             " disagreements, " + std::to_string(failed_bad) + " failed-assumption violations");
}

void bmc_bound() {
  Spec s = parse_spec("G a & F !a");
  Alg2Options zero;
  zero.k_max = 0;
  UcResult a = algorithm2_uc(s, zero);
  UcResult b = algorithm2_uc(s);
  bool ok = a.status == Status::Unknown && b.status == Status::Unsat &&
            b.core == LabelSet{"c1", "c2"};
  std::string core;
  if (b.core)
    for (const auto& l : *b.core)
      core += (core.empty() ? "" : ",") + l;
  report(ok, "bmc bound",
         "k_max=0 gives " + to_string(a.status) + "; default gives " + to_string(b.status) +
             " {" + core + "} at k=" + (b.k_reached ? std::to_string(*b.k_reached) : "-"));
}

void prover_bridge() {
  ProverConfig stub;
  stub.executable = LTLFUC_STUB;
  stub.timeout = 30;
  setenv("LTLFUC_BIN", LTLFUC_BIN, 1);
  std::mt19937_64 rng(2025);
  GenOptions o;
  int unsat = 0, sat = 0, unknown = 0, wrong = 0, bad = 0;
  int tried = 0;
  while (unsat + sat + unknown < 20 && tried < 200) {
    ++tried;
    Spec s = random_spec(rng, 4, o);
    auto expect = oracle_verdict(s.conjunction());
    if (!expect)
      continue;
    // keep the sample balanced between the two verdicts
    if (*expect ? sat >= 10 : unsat + unknown >= 10)
      continue;
    UcResult r;
    try {
      r = algorithm4_uc(s, stub);
    } catch (const std::exception& e) {
      std::cout << "  note: " << e.what() << "\n";
      ++wrong;
      ++sat;
      continue;
    }
    if (r.status == Status::Unknown) {
      ++unknown;
      continue;
    }
    if ((r.status == Status::Sat) != *expect)
      ++wrong;
    if (r.status == Status::Sat) {
      ++sat;
      continue;
    }
    ++unsat;
    auto v = oracle_verdict(s.conjunction_of({r.core->begin(), r.core->end()}));
    if (!v || *v)
      ++bad;
  }
  ProverConfig reduced;
  reduced.executable = std::string(LTLFUC_FIXTURE_DIR) + "/reduced_prover.sh";
  UcResult red = algorithm4_uc(parse_spec("a & !a"), reduced);
  bool red_ok = red.status == Status::ReducedToFalse && !red.core;
  report(wrong == 0 && bad == 0 && unsat > 0 && unsat + sat + unknown == 20 && red_ok,
         "prover bridge",
         "20 specs through the stub prover: " + std::to_string(unsat) + " unsat with " +
             std::to_string(bad) + " invalid cores, " + std::to_string(sat) + " sat, " +
             std::to_string(unknown) + " unknown, " + std::to_string(wrong) +
             " wrong verdicts; reduced-to-false fixture gives " + to_string(red.status));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (char c : line) {
    if (c == '"')
      quoted = !quoted;
    else if (c == ',' && !quoted) {
      cells.push_back(cell);
      cell.clear();
    } else
      cell += c;
  }
  cells.push_back(cell);
  return cells;
}

bool is_number(const std::string& s) {
  if (s.empty())
    return false;
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return end && *end == '\0';
}

void bench_harness() {
  std::string csv_path = std::string(LTLFUC_BUILD_DIR) + "/mini_suite.csv";
  std::string cmd = std::string(LTLFUC_BIN) + " bench " + LTLFUC_SOURCE_DIR +
                    "/bench/mini --algo bdd,bmc,native --timeout 10 --out " + csv_path +
                    " 2>&1";
  auto start = Clock::now();
  int status = std::system(cmd.c_str());
  double elapsed = seconds_since(start);
  bool ran = WIFEXITED(status) && WEXITSTATUS(status) == 0;

  std::ifstream in(csv_path);
  std::string header;
  std::getline(in, header);
  std::vector<std::string> problems_err;
  bool schema = header ==
                "problem,family,n_conjuncts,n_vars,algorithm,status,core_size,elapsed,k_reached,"
                "vbest_algorithm,vbest_elapsed";
  struct Row {
    std::vector<std::string> c;
  };
  std::map<std::string, std::vector<Row>> by_problem;
  int rows = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.empty())
      continue;
    ++rows;
    auto c = split_csv_line(line);
    if (c.size() != 11) {
      schema = false;
      continue;
    }
    static const std::set<std::string> statuses{"SAT", "UNSAT", "UNKNOWN", "REDUCED_TO_FALSE",
                                                "ERROR"};
    schema = schema && statuses.count(c[5]) && is_number(c[2]) && is_number(c[3]) &&
             is_number(c[7]) && std::stod(c[7]) >= 0 && (c[5] == "UNSAT") == !c[6].empty() &&
             (c[8].empty() || is_number(c[8])) && c[5] != "ERROR";
    by_problem[c[0]].push_back({c});
  }
  bool vbest = true;
  int solved = 0;
  for (const auto& [p, rs] : by_problem) {
    double best = 1e300;
    for (const auto& r : rs)
      if (r.c[5] == "UNSAT")
        best = std::min(best, std::stod(r.c[7]));
    bool any = best < 1e300;
    solved += any ? 1 : 0;
    for (const auto& r : rs) {
      if (!any) {
        vbest = vbest && r.c[9].empty() && r.c[10].empty();
        continue;
      }
      vbest = vbest && is_number(r.c[10]) && std::stod(r.c[10]) == best;
      for (const auto& o : rs)
        if (o.c[5] == "UNSAT")
          vbest = vbest && std::stod(r.c[10]) <= std::stod(o.c[7]);
    }
  }
  bool ok = ran && schema && vbest && rows == 90 && by_problem.size() == 30 && elapsed < 300;
  report(ok, "bench harness",
         std::to_string(by_problem.size()) + " problems x 3 algorithms = " +
             std::to_string(rows) + " rows in " + fmt(elapsed, 1) + " s; schema " +
             (schema ? "valid" : "INVALID") + "; virtual best " + (vbest ? "correct" : "WRONG") +
             " on " + std::to_string(solved) + " unsat problems; csv at " + csv_path);
}

} // namespace

int main() {
  auto start = Clock::now();
  trace_semantics();
  oracle_agreement_and_cores();
  bdd_completeness();
  translation_equisatisfiability();
  sat_engine();
  bmc_bound();
  prover_bridge();
  bench_harness();
  std::cout << (kCriteria - failures) << "/" << kCriteria << " criteria passed in "
            << fmt(seconds_since(start), 1) << " s" << std::endl;
  return failures == 0 ? 0 : 1;
}

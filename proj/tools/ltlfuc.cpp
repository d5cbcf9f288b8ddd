#include "ltlfuc/bench.hpp"
#include "ltlfuc/generate.hpp"
#include "ltlfuc/oracle.hpp"
#include "ltlfuc/parser.hpp"
#include "ltlfuc/symbolic.hpp"
#include "ltlfuc/trp_bridge.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace ltlfuc;
using json = nlohmann::json;

namespace {

enum Exit { kSat = 0, kError = 2, kUnsat = 10, kUnknown = 20, kReduced = 30 };

int exit_code(Status s) {
  switch (s) {
  case Status::Sat: return kSat;
  case Status::Unsat: return kUnsat;
  case Status::Unknown: return kUnknown;
  case Status::ReducedToFalse: return kReduced;
  }
  return kError;
}

json trace_json(const Trace& t) {
  json states = json::array();
  for (std::size_t i = 0; i < t.length(); ++i) {
    json st = json::object();
    for (const auto& v : t.vars)
      st[v] = t.value(i, v);
    states.push_back(st);
  }
  return states;
}

json result_json(const std::string& problem, const UcResult& r) {
  json j;
  j["problem"] = problem;
  j["algorithm"] = r.algorithm;
  j["status"] = to_string(r.status);
  j["elapsed"] = r.elapsed;
  if (r.core)
    j["core"] = std::vector<std::string>(r.core->begin(), r.core->end());
  if (r.witness)
    j["witness"] = trace_json(*r.witness);
  if (r.k_reached)
    j["k_reached"] = *r.k_reached;
  if (!r.reason.empty())
    j["reason"] = r.reason;
  return j;
}

void print_text(std::ostream& out, const UcResult& r) {
  out << "status: " << to_string(r.status) << "\n";
  if (!r.algorithm.empty())
    out << "algorithm: " << r.algorithm << "\n";
  if (r.core) {
    out << "core:";
    for (const auto& l : *r.core)
      out << " " << l;
    out << "\n";
  }
  if (r.k_reached)
    out << "k_reached: " << *r.k_reached << "\n";
  if (!r.reason.empty())
    out << "reason: " << r.reason << "\n";
  out << "elapsed: " << format_elapsed(r.elapsed) << "\n";
  if (r.witness)
    out << "witness:\n" << format_trace(*r.witness);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty())
      out.push_back(item);
  return out;
}

CoreMode parse_mode(const std::string& m) {
  if (m == "pick")
    return CoreMode::PickOne;
  if (m == "all")
    return CoreMode::All;
  if (m == "minimum")
    return CoreMode::Minimum;
  throw std::invalid_argument("unknown core mode: " + m);
}

struct Common {
  std::string algo = "bdd";
  int k_max = 50;
  double timeout = 60.0;
  std::string trp_exe;
  double trp_timeout = 60.0;
  std::string format = "text";
  std::string core_mode = "pick";
  unsigned jobs = 1;

  RunConfig config() const {
    RunConfig c;
    c.timeout = timeout;
    c.k_max = k_max;
    c.core_mode = parse_mode(core_mode);
    c.prover.executable = trp_exe;
    c.prover.timeout = trp_timeout;
    return c;
  }
};

void add_engine_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--k-max", c.k_max, "Bound limit for bmc")->capture_default_str();
  cmd->add_option("--timeout", c.timeout, "Seconds per run")->capture_default_str();
  cmd->add_option("--trp-exe", c.trp_exe, "External prover executable");
  cmd->add_option("--trp-timeout", c.trp_timeout, "Seconds for the external prover")
      ->capture_default_str();
  cmd->add_option("--core-mode", c.core_mode, "bdd core extraction: pick, all or minimum")
      ->check(CLI::IsMember({"pick", "all", "minimum"}))
      ->capture_default_str();
}

int cmd_check(const std::string& file, const Common& c) {
  Spec s = load_spec(file);
  RunConfig cfg = c.config();
  UcResult r;
  std::vector<LabelSet> cores;
  if (c.algo == "bdd" && cfg.core_mode == CoreMode::All) {
    Alg1Options o;
    o.mode = CoreMode::All;
    o.deadline = Deadline::after(cfg.timeout);
    Alg1Output out = algorithm1(s, o);
    r = out.result;
    cores = out.cores;
  } else {
    r = run_algorithm(c.algo, s, cfg);
  }
  if (c.format == "json") {
    json j = result_json(file, r);
    if (!cores.empty()) {
      json all = json::array();
      for (const auto& k : cores)
        all.push_back(std::vector<std::string>(k.begin(), k.end()));
      j["cores"] = all;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    print_text(std::cout, r);
    for (const auto& k : cores) {
      std::cout << "ucs:";
      for (const auto& l : k)
        std::cout << " " << l;
      std::cout << "\n";
    }
  }
  return exit_code(r.status);
}

int cmd_oracle(const std::string& file, const std::string& format, bool all_ucs,
               std::size_t max_states) {
  Spec s = load_spec(file);
  OracleOptions o;
  o.max_states = max_states;
  UcResult r;
  r.algorithm = "oracle";
  std::vector<LabelSet> ucs;
  auto start = std::chrono::steady_clock::now();
  try {
    Verdict v = oracle_sat(s.conjunction(), s.alphabet.names(), o);
    r.status = v.satisfiable ? Status::Sat : Status::Unsat;
    r.witness = v.witness;
    if (!v.satisfiable) {
      auto labels = s.labels();
      r.core = LabelSet(labels.begin(), labels.end());
    }
    if (all_ucs)
      ucs = oracle_all_min_ucs(s, o);
  } catch (const OracleBudgetExceeded& e) {
    r.status = Status::Unknown;
    r.reason = e.what();
  }
  r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (format == "json") {
    json j = result_json(file, r);
    if (all_ucs) {
      json arr = json::array();
      for (const auto& u : ucs)
        arr.push_back(std::vector<std::string>(u.begin(), u.end()));
      j["minimal_cores"] = arr;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    print_text(std::cout, r);
    for (const auto& u : ucs) {
      std::cout << "minimal core:";
      for (const auto& l : u)
        std::cout << " " << l;
      std::cout << "\n";
    }
  }
  return exit_code(r.status);
}

int cmd_bench(const std::string& dir, const Common& c, const std::string& out_path) {
  auto problems = load_suite(dir);
  auto records = run_bench(problems, split_list(c.algo), c.config(), c.jobs);
  if (out_path.empty() || out_path == "-") {
    write_csv(std::cout, records);
  } else {
    std::ofstream out(out_path);
    if (!out)
      throw std::runtime_error("cannot write " + out_path);
    write_csv(out, records);
    std::size_t errors = 0;
    for (const auto& r : records)
      errors += r.status == "ERROR";
    std::cerr << records.size() << " records written to " << out_path << " (" << errors
              << " errors)\n";
  }
  return 0;
}

int cmd_crosscheck(const std::string& dir, const Common& c, bool no_oracle,
                   const std::string& fault) {
  CrossOptions o;
  o.run = c.config();
  o.algos = split_list(c.algo);
  o.use_oracle = !no_oracle;
  o.jobs = c.jobs;
  if (!fault.empty()) {
    // drops the last conjunct from every core reported for the named problem
    o.tamper = [fault](const Problem& p, UcResult& r) {
      if (p.id == fault && r.core && !r.core->empty())
        r.core->erase(std::prev(r.core->end()));
    };
  }
  CrossReport rep = crosscheck(load_suite(dir), o);
  std::size_t problems = rep.records.size() / std::max<std::size_t>(o.algos.size(), 1);
  for (const auto& r : rep.records)
    std::cout << r.problem << " " << r.algorithm << " " << r.status << "\n";
  for (const auto& i : rep.issues)
    std::cout << "INCONSISTENT " << i.problem << ": " << i.message << "\n";
  std::cout << problems << " problems, " << rep.oracle_decided << " decided by the oracle, "
            << rep.issues.size() << " inconsistencies\n";
  return rep.issues.empty() ? 0 : 1;
}

int cmd_random(std::uint64_t seed, std::size_t conjuncts, const std::string& vars, int depth,
               bool past) {
  std::mt19937_64 rng(seed);
  GenOptions o;
  o.vars = split_list(vars);
  o.temporal_depth = depth;
  o.past = past;
  Spec s = random_spec(rng, conjuncts, o);
  std::cout << "# random spec, seed " << seed << "\n";
  for (std::size_t i = 0; i < s.conjuncts.size(); ++i)
    std::cout << (i ? "& " : "") << print(s.conjuncts[i].formula) << "\n";
  return 0;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"LTLf satisfiability and unsatisfiable core extraction"};
  app.require_subcommand(1);
  Common c;
  std::string file, dir, out_path, fault, vars = "a,b,c";
  bool all_ucs = false, no_oracle = false, past = true;
  std::size_t max_states = 100000, conjuncts = 4;
  std::uint64_t seed = 1;
  int depth = 2;

  auto* check = app.add_subcommand("check", "Decide a spec and extract a core");
  check->add_option("file", file, ".ltlf file")->required();
  check->add_option("--algo", c.algo, "bdd, bmc, native or trp")
      ->check(CLI::IsMember(algorithm_names()))
      ->capture_default_str();
  check->add_option("--format", c.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  add_engine_flags(check, c);

  auto* oracle = app.add_subcommand("oracle", "Decide a spec by explicit-state search");
  oracle->add_option("file", file, ".ltlf file")->required();
  oracle->add_option("--format", c.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  oracle->add_flag("--all-ucs", all_ucs, "List every minimal core (exponential)");
  oracle->add_option("--max-states", max_states, "State budget")->capture_default_str();

  auto* bench = app.add_subcommand("bench", "Run algorithms over a directory of specs");
  bench->add_option("dir", dir, "Suite directory")->required();
  bench->add_option("--out", out_path, "CSV output file; stdout if omitted");
  bench->add_option("--jobs", c.jobs, "Worker threads")->capture_default_str();
  add_engine_flags(bench, c);
  // Set per subcommand below because the default differs from check.
  auto* bench_algo = bench->add_option("--algo", c.algo, "Comma-separated algorithms");

  auto* cross = app.add_subcommand("crosscheck", "Compare algorithms and the oracle");
  cross->add_option("dir", dir, "Suite directory")->required();
  cross->add_option("--jobs", c.jobs, "Worker threads")->capture_default_str();
  cross->add_flag("--no-oracle", no_oracle, "Skip the explicit-state oracle");
  cross->add_option("--inject-fault", fault, "Drop a conjunct from every core of this problem");
  add_engine_flags(cross, c);
  auto* cross_algo = cross->add_option("--algo", c.algo, "Comma-separated algorithms");

  double stub_timeout = 30.0;
  auto* stub = app.add_subcommand("stub-prover", "Stand-in for the external prover");
  stub->add_option("file", file, "Exported problem")->required();
  stub->add_option("--timeout", stub_timeout, "Seconds")->capture_default_str();

  auto* exp = app.add_subcommand("export", "Print the prover input for a spec");
  exp->add_option("file", file, ".ltlf file")->required();

  auto* rnd = app.add_subcommand("random", "Print a random spec");
  rnd->add_option("--seed", seed, "Generator seed")->capture_default_str();
  rnd->add_option("--conjuncts", conjuncts, "Maximum number of conjuncts")->capture_default_str();
  rnd->add_option("--vars", vars, "Comma-separated variable names")->capture_default_str();
  rnd->add_option("--depth", depth, "Temporal nesting depth")->capture_default_str();
  rnd->add_flag("!--no-past", past, "Future operators only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kError;
  }

  try {
    if (*check)
      return cmd_check(file, c);
    if (*oracle)
      return cmd_oracle(file, c.format, all_ucs, max_states);
    if (*bench || *cross) {
      if ((*bench && bench_algo->count() == 0) || (*cross && cross_algo->count() == 0))
        c.algo = "bdd,bmc,native";
      for (const auto& a : split_list(c.algo))
        if (std::find(algorithm_names().begin(), algorithm_names().end(), a) ==
            algorithm_names().end())
          throw std::invalid_argument("unknown algorithm: " + a);
      if (*bench)
        return cmd_bench(dir, c, out_path);
      return cmd_crosscheck(dir, c, no_oracle, fault);
    }
    if (*stub) {
      std::cout << stub_prover(read_file(file), stub_timeout);
      return 0;
    }
    if (*exp) {
      std::cout << export_tr(load_spec(file));
      return 0;
    }
    if (*rnd)
      return cmd_random(seed, conjuncts, vars, depth, past);
  } catch (const ProverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (!e.raw().empty())
      std::cerr << "prover output:\n" << e.raw() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

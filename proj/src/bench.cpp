#include "ltlfuc/bench.hpp"

#include "ltlfuc/bmc.hpp"
#include "ltlfuc/native.hpp"
#include "ltlfuc/parser.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ltlfuc {

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{"bdd", "bmc", "native", "trp"};
  return names;
}

UcResult run_algorithm(const std::string& algo, const Spec& s, const RunConfig& cfg) {
  Deadline deadline = Deadline::after(cfg.timeout);
  if (algo == "bdd") {
    Alg1Options o;
    o.mode = cfg.core_mode;
    o.node_budget = cfg.bdd_node_budget;
    o.deadline = deadline;
    return algorithm1_uc(s, o);
  }
  if (algo == "bmc") {
    Alg2Options o;
    o.k_max = cfg.k_max;
    o.deadline = deadline;
    return algorithm2_uc(s, o);
  }
  if (algo == "native") {
    Alg3Options o;
    o.deadline = deadline;
    return algorithm3_uc(s, o);
  }
  if (algo == "trp") {
    ProverConfig p = cfg.prover;
    p.timeout = std::min(p.timeout, cfg.timeout);
    return algorithm4_uc(s, p);
  }
  throw std::invalid_argument("unknown algorithm: " + algo);
}

std::vector<Problem> load_suite(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw std::invalid_argument("not a directory: " + dir.string());
  std::map<std::string, std::string> families;
  if (std::ifstream tsv(dir / "families.tsv"); tsv) {
    for (std::string line; std::getline(tsv, line);) {
      if (line.empty() || line[0] == '#')
        continue;
      auto tab = line.find('\t');
      if (tab == line.npos)
        continue;
      std::string family = line.substr(tab + 1);
      while (!family.empty() && (family.back() == '\r' || family.back() == ' '))
        family.pop_back();
      families[line.substr(0, tab)] = family;
    }
  }
  std::vector<Problem> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().extension() != ".ltlf")
      continue;
    Problem p;
    p.id = fs::relative(e.path(), dir).generic_string();
    auto it = families.find(p.id);
    p.family = it == families.end() ? "-" : it->second;
    try {
      Spec s = load_spec(e.path());
      s.name = p.id;
      p.spec = std::move(s);
    } catch (const std::exception& ex) {
      p.error = ex.what();
    }
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const Problem& a, const Problem& b) { return a.id < b.id; });
  return out;
}

BenchRecord make_record(const Problem& p, const std::string& algo, const RunConfig& cfg) {
  BenchRecord r;
  r.problem = p.id;
  r.family = p.family;
  r.algorithm = algo;
  if (!p.spec) {
    r.status = "ERROR";
    r.note = p.error;
    return r;
  }
  r.n_conjuncts = p.spec->conjuncts.size();
  r.n_vars = p.spec->alphabet.size();
  auto start = std::chrono::steady_clock::now();
  try {
    UcResult u = run_algorithm(algo, *p.spec, cfg);
    r.status = to_string(u.status);
    if (u.core)
      r.core_size = u.core->size();
    r.k_reached = u.k_reached;
    r.note = u.reason;
    r.result = std::move(u);
  } catch (const std::exception& ex) {
    r.status = "ERROR";
    r.note = ex.what();
  }
  r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

namespace {

// Runs task(i) for i in [0, n) on up to `jobs` threads.
template <typename F>
void parallel_for(std::size_t n, unsigned jobs, F task) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i)
      task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;)
        task(i);
    });
  for (auto& t : pool)
    t.join();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == s.npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

} // namespace

std::vector<BenchRecord> run_bench(const std::vector<Problem>& problems,
                                   const std::vector<std::string>& algos, const RunConfig& cfg,
                                   unsigned jobs) {
  std::vector<BenchRecord> out(problems.size() * algos.size());
  parallel_for(out.size(), jobs, [&](std::size_t i) {
    out[i] = make_record(problems[i / algos.size()], algos[i % algos.size()], cfg);
  });
  return out;
}

std::string csv_header() {
  return "problem,family,n_conjuncts,n_vars,algorithm,status,core_size,elapsed,k_reached,"
         "vbest_algorithm,vbest_elapsed";
}

std::string format_elapsed(double seconds) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", seconds);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  std::map<std::string, const BenchRecord*> best;
  for (const auto& r : records) {
    if (r.status != "UNSAT")
      continue;
    auto& b = best[r.problem];
    if (!b || r.elapsed < b->elapsed)
      b = &r;
  }
  out << csv_header() << "\n";
  for (const auto& r : records) {
    out << csv_field(r.problem) << ',' << csv_field(r.family) << ',' << r.n_conjuncts << ','
        << r.n_vars << ',' << r.algorithm << ',' << r.status << ',';
    if (r.core_size)
      out << *r.core_size;
    out << ',' << format_elapsed(r.elapsed) << ',';
    if (r.k_reached)
      out << *r.k_reached;
    out << ',';
    if (auto it = best.find(r.problem); it != best.end())
      out << it->second->algorithm << ',' << format_elapsed(it->second->elapsed);
    else
      out << ',';
    out << "\n";
  }
}

CrossReport crosscheck(const std::vector<Problem>& problems, const CrossOptions& opts) {
  CrossReport rep;
  const auto& algos = opts.algos;
  rep.records.resize(problems.size() * algos.size());
  std::vector<std::optional<bool>> oracle(problems.size());
  std::vector<std::vector<Inconsistency>> found(problems.size());

  parallel_for(problems.size(), opts.jobs, [&](std::size_t pi) {
    const Problem& p = problems[pi];
    auto& issues = found[pi];
    auto flag = [&](const std::string& msg) { issues.push_back({p.id, msg}); };
    if (!p.spec) {
      flag("cannot load: " + p.error);
      return;
    }
    const Spec& s = *p.spec;
    // Memoized oracle verdicts on subsets of the spec.
    std::map<LabelSet, std::optional<bool>> memo;
    auto oracle_sat_of = [&](const LabelSet& labels) -> std::optional<bool> {
      if (!opts.use_oracle)
        return std::nullopt;
      auto it = memo.find(labels);
      if (it != memo.end())
        return it->second;
      std::optional<bool> v;
      try {
        v = oracle_sat(s.conjunction_of({labels.begin(), labels.end()}), opts.oracle).satisfiable;
      } catch (const OracleBudgetExceeded&) {
      }
      memo.emplace(labels, v);
      return v;
    };
    auto all = s.labels();
    oracle[pi] = oracle_sat_of(LabelSet(all.begin(), all.end()));

    std::optional<bool> agreed = oracle[pi];
    std::string agreed_by = "oracle";
    for (std::size_t ai = 0; ai < algos.size(); ++ai) {
      BenchRecord& rec = rep.records[pi * algos.size() + ai];
      rec = make_record(p, algos[ai], opts.run);
      if (rec.status == "ERROR") {
        flag(algos[ai] + " failed: " + rec.note);
        continue;
      }
      UcResult& u = *rec.result;
      if (opts.tamper) {
        opts.tamper(p, u);
        rec.status = to_string(u.status);
        rec.core_size = u.core ? std::optional<std::size_t>(u.core->size()) : std::nullopt;
      }
      if (u.status != Status::Sat && u.status != Status::Unsat)
        continue;
      bool sat = u.status == Status::Sat;
      if (agreed && *agreed != sat)
        flag(algos[ai] + " says " + to_string(u.status) + " but " + agreed_by + " says " +
             (*agreed ? "SAT" : "UNSAT"));
      if (!agreed) {
        agreed = sat;
        agreed_by = algos[ai];
      }
      if (sat) {
        // the symbolic engine decides without producing a witness
        if (u.witness && !holds(s.conjunction(), *u.witness))
          flag(algos[ai] + " witness does not satisfy the spec");
      } else {
        if (!u.core) {
          flag(algos[ai] + " gave no core");
          continue;
        }
        for (const auto& l : *u.core)
          if (std::find(all.begin(), all.end(), l) == all.end())
            flag(algos[ai] + " core names unknown conjunct " + l);
        if (auto v = oracle_sat_of(*u.core); v && *v) {
          std::string names;
          for (const auto& l : *u.core)
            names += (names.empty() ? "" : " ") + l;
          flag(algos[ai] + " core {" + names + "} is satisfiable");
        }
      }
    }
  });
  for (std::size_t i = 0; i < problems.size(); ++i) {
    if (oracle[i])
      ++rep.oracle_decided;
    rep.issues.insert(rep.issues.end(), found[i].begin(), found[i].end());
  }
  return rep;
}

} // namespace ltlfuc

#pragma once

#include "ltlfuc/activation.hpp"
#include "ltlfuc/oracle.hpp"
#include "ltlfuc/symbolic.hpp"
#include "ltlfuc/trp_bridge.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ltlfuc {

/// Algorithm names accepted by run_algorithm, in canonical order.
const std::vector<std::string>& algorithm_names();

struct RunConfig {
  double timeout = 60.0;
  int k_max = 50;
  CoreMode core_mode = CoreMode::PickOne;
  std::size_t bdd_node_budget = 5'000'000;
  ProverConfig prover;
};

/// Runs one algorithm under the per-run timeout. Throws std::invalid_argument
/// for an unknown name; engine errors propagate.
UcResult run_algorithm(const std::string& algo, const Spec& s, const RunConfig& cfg);

struct Problem {
  std::string id; ///< path relative to the suite directory
  std::string family;
  std::optional<Spec> spec;
  std::string error; ///< load failure, when spec is absent
};

/// Every `.ltlf` file below `dir`, sorted by id. Families come from an
/// optional `families.tsv` (file<TAB>family); unlisted files get "-".
std::vector<Problem> load_suite(const std::filesystem::path& dir);

struct BenchRecord {
  std::string problem;
  std::string family;
  std::size_t n_conjuncts = 0;
  std::size_t n_vars = 0;
  std::string algorithm;
  std::string status; ///< SAT, UNSAT, UNKNOWN, REDUCED_TO_FALSE or ERROR
  std::optional<std::size_t> core_size;
  double elapsed = 0.0;
  std::optional<int> k_reached;
  std::string note; ///< reason or error message; not part of the CSV
  /// Kept for cross-checking; not part of the CSV.
  std::optional<UcResult> result;
};

BenchRecord make_record(const Problem& p, const std::string& algo, const RunConfig& cfg);

/// One record per (problem, algorithm), problem-major. Problems run on
/// `jobs` worker threads; each task owns its engine.
std::vector<BenchRecord> run_bench(const std::vector<Problem>& problems,
                                   const std::vector<std::string>& algos, const RunConfig& cfg,
                                   unsigned jobs = 1);

/// Columns: problem,family,n_conjuncts,n_vars,algorithm,status,core_size,
/// elapsed,k_reached,vbest_algorithm,vbest_elapsed. The virtual-best pair
/// names the fastest algorithm that proved the problem UNSAT, repeated on
/// each of its rows, and is empty when none did.
void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);
std::string csv_header();
/// Elapsed seconds as written to the CSV.
std::string format_elapsed(double seconds);

struct Inconsistency {
  std::string problem;
  std::string message;
};

struct CrossOptions {
  RunConfig run;
  std::vector<std::string> algos{"bdd", "bmc", "native"};
  bool use_oracle = true;
  OracleOptions oracle;
  unsigned jobs = 1;
  /// Called on every result before it is checked; used to inject faults.
  std::function<void(const Problem&, UcResult&)> tamper;
};

struct CrossReport {
  std::vector<BenchRecord> records;
  std::vector<Inconsistency> issues;
  std::size_t oracle_decided = 0;
};

/// Runs every algorithm (and the oracle where it decides) on every problem.
/// Flags SAT/UNSAT disagreements, witnesses that fail evaluation, and cores
/// the oracle finds satisfiable. UNKNOWN and REDUCED_TO_FALSE are never
/// counted as disagreements.
CrossReport crosscheck(const std::vector<Problem>& problems, const CrossOptions& opts);

} // namespace ltlfuc

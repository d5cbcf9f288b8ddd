#pragma once

#include "ltlfuc/deadline.hpp"
#include "ltlfuc/formula.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ltlfuc {

// Literals use the DIMACS convention: variable v >= 1, literal v or -v.

class ClauseSink {
public:
  virtual ~ClauseSink() = default;
  virtual int new_var() = 0;
  virtual void add_clause(std::vector<int> lits) = 0;
};

struct CnfFormula : ClauseSink {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
  /// Optional names, e.g. "a@3" for proposition a at step 3.
  std::map<std::string, int> name_map;

  int new_var() override { return ++num_vars; }
  /// Throws std::out_of_range on literal 0 or a variable above num_vars.
  void add_clause(std::vector<int> lits) override;
  /// Index of a named variable, allocated on first use.
  int named(const std::string& name);
};

std::string to_dimacs(const CnfFormula& f);
/// Throws std::invalid_argument on malformed input.
CnfFormula parse_dimacs(std::string_view text);

enum class SatStatus { Sat, Unsat };

struct SatOutcome {
  SatStatus status = SatStatus::Unsat;
  /// model[v] for v in 1..num_vars; model[0] unused.
  std::optional<std::vector<bool>> model;
  std::optional<std::vector<int>> failed_assumptions;
};

struct SolverStats {
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
};

/// CDCL solver: two watched literals, first-UIP learning, VSIDS, phase
/// saving, Luby restarts. Incremental: clauses may be added between calls
/// to solve(), and each call takes its own assumptions.
class Solver : public ClauseSink {
public:
  explicit Solver(Deadline deadline = {});

  int new_var() override;
  int num_vars() const noexcept { return static_cast<int>(assigns_.size()); }
  void add_clause(std::vector<int> lits) override;
  void add_cnf(const CnfFormula& f);

  /// Throws DeadlineExceeded when the deadline passes mid-search.
  SatStatus solve(const std::vector<int>& assumptions = {});

  /// Valid after a Sat answer.
  bool value(int var) const;
  bool lit_true(int lit) const { return lit > 0 ? value(lit) : !value(-lit); }
  std::vector<bool> model() const;
  /// After an Unsat answer: assumptions that together with the clauses are
  /// already unsatisfiable. Not minimized.
  const std::vector<int>& failed_assumptions() const noexcept { return failed_; }

  /// False once the clause set alone is unsatisfiable.
  bool okay() const noexcept { return ok_; }
  const SolverStats& stats() const noexcept { return stats_; }
  void set_deadline(Deadline d) { deadline_ = d; }

private:
  struct Clause {
    std::vector<int> lits; // internal literals
    bool learnt = false;
    bool deleted = false;
    double activity = 0;
  };

  static int to_internal(int lit) { return lit > 0 ? 2 * (lit - 1) : 2 * (-lit - 1) + 1; }
  static int to_external(int l) { return (l & 1) ? -(l / 2 + 1) : l / 2 + 1; }
  static int var_of(int l) { return l >> 1; }

  // 0 = true, 1 = false, 2 = unassigned
  int lit_value(int l) const {
    int a = assigns_[var_of(l)];
    return a == 2 ? 2 : (a ^ (l & 1));
  }
  int level() const { return static_cast<int>(trail_lim_.size()); }

  void check_range(int lit) const;
  void enqueue(int l, int reason);
  int propagate();
  void analyze(int confl, std::vector<int>& learnt, int& bt_level);
  bool redundant(int p, std::uint32_t abstract, std::vector<int>& to_clear);
  void analyze_final(int l);
  void cancel_until(int lvl);
  int pick_branch();
  void bump_var(int v);
  void bump_clause(Clause& c);
  void attach(int ci);
  void reduce_db();
  bool locked(int ci) const;
  int search(int conflict_limit, const std::vector<int>& assumptions);

  void heap_insert(int v);
  int heap_pop();
  void heap_up(int i);
  void heap_down(int i);

  Deadline deadline_;
  bool ok_ = true;
  std::vector<Clause> clauses_;
  std::vector<std::vector<int>> watches_; // internal literal -> clause indices
  std::vector<int> assigns_;
  std::vector<int> levels_;
  std::vector<int> reasons_;
  std::vector<bool> phase_;
  std::vector<double> activity_;
  std::vector<int> heap_, heap_pos_;
  std::vector<int> trail_, trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<char> seen_;
  double var_inc_ = 1, cla_inc_ = 1;
  std::size_t num_learnts_ = 0;
  double max_learnts_ = 0;
  std::vector<bool> model_;
  std::vector<int> failed_;
  SolverStats stats_;
};

/// One-shot solve of a CNF under assumptions.
SatOutcome solve_assuming(const CnfFormula& f, const std::vector<int>& assumptions,
                          Deadline deadline = {});

/// Tseitin encoding of boolean formulas. Atoms are mapped to sink variables
/// by the callback; subformulas are shared by structural equality.
class Tseitin {
public:
  using AtomMap = std::function<int(const std::string&)>;

  Tseitin(ClauseSink& sink, AtomMap atoms) : sink_(sink), atoms_(std::move(atoms)) {}

  /// A literal equivalent to f. Throws std::invalid_argument on temporal operators.
  int literal(const Formula& f);
  /// Adds f as a constraint; top-level conjunctions and disjunctions are
  /// flattened into clauses directly.
  void assert_formula(const Formula& f);

private:
  int true_lit();
  void collect_or(const Formula& f, std::vector<int>& out);

  ClauseSink& sink_;
  AtomMap atoms_;
  FormulaMap<int> memo_;
  int true_ = 0;
};

} // namespace ltlfuc

#pragma once

#include "ltlfuc/formula.hpp"
#include "ltlfuc/trace.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace ltlfuc {

/// The oracle could not decide within its limits. Deliberately not a verdict.
class OracleBudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct OracleOptions {
  std::size_t max_len = 512;
  std::size_t max_states = 100000;
};

struct Verdict {
  bool satisfiable = false;
  /// Present iff satisfiable; over free_vars_ordered(f) (or the requested
  /// alphabet), and of minimum length.
  std::optional<Trace> witness;
};

/// Explicit-state decision procedure: past removal, NNF, then breadth-first
/// search over obligation sets obtained from xnf expansion.
Verdict oracle_sat(const Formula& f, const OracleOptions& opts = {});
Verdict oracle_sat(const Formula& f, const std::vector<std::string>& witness_vars,
                   const OracleOptions& opts = {});

/// Satisfiability of every subset of the spec, indexed by bitmask
/// (bit i set = conjunct i included). Exponential in |conjuncts|.
std::vector<bool> oracle_subset_sat(const Spec& s, const OracleOptions& opts = {});

/// All subset-minimal unsatisfiable subsets of the spec's conjuncts.
std::vector<LabelSet> oracle_all_min_ucs(const Spec& s, const OracleOptions& opts = {});

/// Labels of the conjuncts selected by `mask`.
LabelSet labels_of_mask(const Spec& s, std::size_t mask);

} // namespace ltlfuc

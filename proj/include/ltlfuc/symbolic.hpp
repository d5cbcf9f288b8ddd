#pragma once

#include "ltlfuc/activation.hpp"
#include "ltlfuc/bdd.hpp"
#include "ltlfuc/tableau.hpp"

#include <cstdint>
#include <vector>

namespace ltlfuc {

/// A tableau compiled to BDDs. Variable i of the tableau is BDD variable 2i
/// in the current state and 2i+1 in the next state.
class SymbolicAutomaton {
public:
  SymbolicAutomaton(BddManager& m, Tableau t);

  const Tableau& tableau() const noexcept { return t_; }
  BddManager& manager() noexcept { return m_; }
  static unsigned cur(std::size_t i) { return static_cast<unsigned>(2 * i); }
  static unsigned nxt(std::size_t i) { return static_cast<unsigned>(2 * i + 1); }

  /// BDD of a boolean formula over tableau variables (primed names are next-state).
  Bdd encode(const Formula& boolean);

  const Bdd& init() const noexcept { return init_; }
  const Bdd& trans() const noexcept { return trans_; }
  const std::vector<Bdd>& fairness() const noexcept { return fairness_; }

  /// States with a successor in `states`.
  Bdd preimage(const Bdd& states);
  /// States from which some path visits every fairness constraint infinitely often.
  Bdd fair_states();

private:
  BddManager& m_;
  Tableau t_;
  Bdd init_, trans_;
  std::vector<Bdd> fairness_;
  Bdd next_cube_;
  std::vector<int> to_next_;
};

/// Language non-emptiness of an LTL formula with past over infinite traces.
bool ltl_satisfiable(const LtlFormula& f, Deadline deadline = {},
                     std::size_t node_budget = 5'000'000);

enum class CoreMode { PickOne, All, Minimum };

struct Alg1Options {
  CoreMode mode = CoreMode::PickOne;
  std::size_t node_budget = 5'000'000;
  Deadline deadline;
};

struct Alg1Output {
  UcResult result;
  /// One core in PickOne and Minimum modes; one core per UCS cube in All mode
  /// (don't-care activations false).
  std::vector<LabelSet> cores;
  /// All mode only: every activation assignment in UCS, as a bitmask over
  /// conjunct indices (bit i = conjunct i active). Sorted ascending.
  std::vector<std::uint64_t> unsat_assignments;
};

/// BDD-based core extraction over the activated, end-encoded specification.
Alg1Output algorithm1(const Spec& s, const Alg1Options& opts = {});
UcResult algorithm1_uc(const Spec& s, const Alg1Options& opts = {});

} // namespace ltlfuc

#pragma once

#include "ltlfuc/activation.hpp"
#include "ltlfuc/sat.hpp"
#include "ltlfuc/tableau.hpp"

#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ltlfuc {

/// Incremental bounded model checker over the tableau of the activated,
/// end-encoded specification. The state is the tableau variables plus a
/// counter that cycles through the fairness constraints, so that a single
/// repeated state closing a fair loop can be recognised.
class BmcEngine {
public:
  explicit BmcEngine(const Spec& s, Deadline deadline = {});

  /// init, k transitions, and either pairwise-distinct states 0..k or a
  /// fair loop closed inside 0..k; solved with every activation true at step 0.
  /// False means unsatisfiable; core() then names the failed activations.
  bool check_complete(int k);
  /// A fair lasso whose loop ends at some step <= k, with every activation true.
  bool check_witness(int k);

  const LabelSet& core() const noexcept { return core_; }
  /// Finite trace read off the last witness: steps before `end` first holds,
  /// over the spec alphabet.
  Trace witness() const;

  const Tableau& tableau() const noexcept { return t_; }
  std::size_t counter_bits() const noexcept { return counter_bits_; }
  const Solver& solver() const noexcept { return solver_; }

private:
  void unroll_to(int step);
  void add_step();
  int lit_at(const std::string& name, int step);
  int eq(int i, int j);
  int diff(int i, int j);
  int closed(int l, int j);
  int simple(int k);
  int closed_upto(int k);
  bool solve_with(int selector);

  ActivatedSpec act_;
  std::vector<std::string> alphabet_;
  std::vector<std::string> present_only_;
  Tableau t_;
  Solver solver_;
  std::size_t counter_bits_ = 0;
  std::vector<std::string> state_names_;
  std::unordered_map<std::string, std::size_t> state_index_;
  std::vector<Formula> counter_init_, counter_trans_;
  std::vector<std::vector<int>> x_;        // x_[step][state var]
  std::vector<std::vector<int>> fair_at_;  // fair_at_[step][constraint]
  std::vector<int> init_at_;
  std::map<std::pair<int, int>, int> eq_, diff_, closed_;
  std::vector<int> simple_, closed_upto_;
  std::vector<int> activations_;           // activation literals at step 0
  int true_lit_ = 0;

  LabelSet core_;
  std::vector<bool> model_;
  int witness_steps_ = 0;
};

struct Alg2Options {
  int k_max = 50;
  Deadline deadline;
};

/// Bounded model checking with a completeness check at each bound.
UcResult algorithm2_uc(const Spec& s, const Alg2Options& opts = {});

} // namespace ltlfuc

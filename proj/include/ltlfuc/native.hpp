#pragma once

#include "ltlfuc/activation.hpp"
#include "ltlfuc/sat.hpp"

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace ltlfuc {

class SearchBudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Explicit-state LTLf satisfiability over the transition system whose
/// states are obligation sets. A state moves to the obligations named by the
/// X/N atoms of a model of its neXt normal form; it is final when that form
/// has a model with every X atom false.
///
/// Frames are stored as cores: a frame holds every state that contains one
/// of its cores. Every query also assumes the given literals true.
class ConflictSearch {
public:
  using State = std::vector<Formula>; // sorted, duplicate-free

  /// `f` must be past-free and in NNF.
  ConflictSearch(const Formula& f, std::vector<std::string> assumed_true, Deadline deadline = {});

  enum class Outcome { Sat, Unsat };
  /// Throws DeadlineExceeded, or SearchBudgetExceeded past `max_frames`.
  Outcome run(std::size_t max_frames = 100000);

  bool is_final(const State& s);

  /// Letters of the path found by a Sat run, over every proposition of f.
  const std::vector<std::string>& letter_vars() const noexcept { return letter_names_; }
  const std::vector<std::vector<bool>>& path() const noexcept { return path_; }
  /// Assumptions that occurred in the final conflict of some unsatisfiable
  /// query during the run.
  const std::set<std::string>& used_assumptions() const noexcept { return used_; }
  const std::vector<std::vector<State>>& frames() const noexcept { return frames_; }
  const State& initial() const noexcept { return init_; }

private:
  Formula abstract(const Formula& f);
  int atom(const Formula& f);
  int selector(const Formula& f);
  int next_var(const Formula& psi);
  int frame_selector(std::size_t level);
  void add_core(std::size_t level, State core);
  void record_used();

  /// Sat: fills `succ` and `letter`. Unsat: fills `core`.
  bool query(const State& s, std::vector<int> extra, State* succ, std::vector<bool>* letter,
             State* core);
  bool final_query(const State& s, std::vector<bool>* letter, State* core);
  bool reach(const State& s, std::size_t level);
  bool in_frame(const State& s, std::size_t level) const;
  bool fixpoint(std::size_t i);
  void propagate(std::size_t top);

  Deadline deadline_;
  Solver solver_;
  std::unordered_map<std::string, int> names_;
  std::unique_ptr<Tseitin> enc_;
  State init_;
  std::vector<std::string> letter_names_;
  std::vector<int> letter_vars_;
  std::vector<int> assumptions_;
  std::vector<std::string> assumption_names_;
  FormulaMap<int> atom_;     // X/N-rooted subformula -> solver variable
  FormulaMap<int> sel_;      // state element -> selector
  FormulaMap<int> next_;     // state element -> "is in the next state"
  std::vector<std::pair<Formula, int>> next_atoms_;
  int final_sel_ = 0;
  std::vector<int> frame_sel_;
  std::vector<std::vector<State>> frames_;
  std::vector<std::vector<bool>> path_;
  std::set<std::string> used_;
};

struct Alg3Options {
  Deadline deadline;
  std::size_t max_frames = 100000;
};

/// Conflict-sequence search on the past-free form of the activated spec.
UcResult algorithm3_uc(const Spec& s, const Alg3Options& opts = {});

} // namespace ltlfuc

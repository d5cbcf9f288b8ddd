#include "ltlfuc/native.hpp"

#include "ltlfuc/translations.hpp"

#include <algorithm>
#include <chrono>

namespace ltlfuc {

namespace {

bool subset(const ConflictSearch::State& small, const ConflictSearch::State& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

void normalize(ConflictSearch::State& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

} // namespace

ConflictSearch::ConflictSearch(const Formula& f, std::vector<std::string> assumed_true,
                               Deadline deadline)
    : deadline_(deadline), solver_(deadline), init_{f} {
  letter_names_ = free_vars_ordered(f);
  for (const auto& a : assumed_true)
    if (std::find(letter_names_.begin(), letter_names_.end(), a) == letter_names_.end())
      letter_names_.push_back(a);
  for (const auto& n : letter_names_) {
    int v = solver_.new_var();
    names_.emplace(n, v);
    letter_vars_.push_back(v);
  }
  for (const auto& a : assumed_true) {
    assumptions_.push_back(names_.at(a));
    assumption_names_.push_back(a);
  }
  final_sel_ = solver_.new_var();
  enc_ = std::make_unique<Tseitin>(solver_, [this](const std::string& n) { return names_.at(n); });
}

int ConflictSearch::next_var(const Formula& psi) {
  if (auto it = next_.find(psi); it != next_.end())
    return it->second;
  int v = solver_.new_var();
  next_.emplace(psi, v);
  return v;
}

int ConflictSearch::atom(const Formula& f) {
  if (auto it = atom_.find(f); it != atom_.end())
    return it->second;
  int v = solver_.new_var();
  atom_.emplace(f, v);
  next_atoms_.emplace_back(f, v);
  names_.emplace("@n" + std::to_string(v), v);
  solver_.add_clause({-v, next_var(f.child())});
  if (f.op() == Op::Next)
    solver_.add_clause({-final_sel_, -v});
  return v;
}

// X/N-rooted subformulas become fresh propositions.
Formula ConflictSearch::abstract(const Formula& f) {
  switch (f.op()) {
  case Op::True:
  case Op::False:
  case Op::Var: return f;
  case Op::Not: return neg(abstract(f.child()));
  case Op::And: return conj(abstract(f.lhs()), abstract(f.rhs()));
  case Op::Or: return disj(abstract(f.lhs()), abstract(f.rhs()));
  case Op::Next:
  case Op::WeakNext: return var("@n" + std::to_string(atom(f)));
  default: throw std::invalid_argument("conflict search: unexpected operator in " + print(f));
  }
}

int ConflictSearch::selector(const Formula& f) {
  if (auto it = sel_.find(f); it != sel_.end())
    return it->second;
  int body = enc_->literal(abstract(xnf(f)));
  int s = solver_.new_var();
  solver_.add_clause({-s, body});
  sel_.emplace(f, s);
  return s;
}

int ConflictSearch::frame_selector(std::size_t level) {
  while (frame_sel_.size() <= level)
    frame_sel_.push_back(solver_.new_var());
  return frame_sel_[level];
}

void ConflictSearch::add_core(std::size_t level, State core) {
  normalize(core);
  if (frames_.size() <= level)
    frames_.resize(level + 1);
  for (const auto& c : frames_[level])
    if (subset(c, core))
      return;
  std::vector<int> clause{-frame_selector(level)};
  for (const auto& psi : core)
    clause.push_back(-next_var(psi));
  solver_.add_clause(clause);
  frames_[level].push_back(std::move(core));
}

void ConflictSearch::record_used() {
  for (int l : solver_.failed_assumptions())
    for (std::size_t i = 0; i < assumptions_.size(); ++i)
      if (assumptions_[i] == l)
        used_.insert(assumption_names_[i]);
}

bool ConflictSearch::query(const State& s, std::vector<int> extra, State* succ,
                           std::vector<bool>* letter, State* core) {
  deadline_.check();
  std::vector<int> assume = std::move(extra);
  std::vector<int> sels;
  for (const auto& f : s) {
    sels.push_back(selector(f));
    assume.push_back(sels.back());
  }
  assume.insert(assume.end(), assumptions_.begin(), assumptions_.end());
  if (solver_.solve(assume) == SatStatus::Sat) {
    if (letter) {
      letter->clear();
      for (int v : letter_vars_)
        letter->push_back(solver_.value(v));
    }
    if (succ) {
      succ->clear();
      for (const auto& [f, v] : next_atoms_)
        if (solver_.value(v))
          succ->push_back(f.child());
      normalize(*succ);
    }
    return true;
  }
  record_used();
  if (core) {
    core->clear();
    const auto& failed = solver_.failed_assumptions();
    for (std::size_t i = 0; i < s.size(); ++i)
      if (std::find(failed.begin(), failed.end(), sels[i]) != failed.end())
        core->push_back(s[i]);
  }
  return false;
}

bool ConflictSearch::final_query(const State& s, std::vector<bool>* letter, State* core) {
  return query(s, {final_sel_}, nullptr, letter, core);
}

bool ConflictSearch::is_final(const State& s) {
  State sorted = s;
  normalize(sorted);
  return final_query(sorted, nullptr, nullptr);
}

bool ConflictSearch::in_frame(const State& s, std::size_t level) const {
  if (level >= frames_.size())
    return false;
  for (const auto& c : frames_[level])
    if (subset(c, s))
      return true;
  return false;
}

// Looks for a path from s to a final state using at most `level` transitions
// through states outside the frames. On failure s is blocked at `level`.
bool ConflictSearch::reach(const State& s, std::size_t level) {
  while (true) {
    State succ, core;
    std::vector<bool> letter;
    if (!query(s, {frame_selector(level - 1)}, &succ, &letter, &core)) {
      add_core(level, std::move(core));
      return false;
    }
    std::vector<bool> last;
    State fcore;
    if (final_query(succ, &last, &fcore)) {
      path_ = {letter, last};
      return true;
    }
    add_core(0, std::move(fcore));
    if (level > 1 && reach(succ, level - 1)) {
      path_.insert(path_.begin(), letter);
      return true;
    }
  }
}

// Pushes cores forward when all successors of the core already lie in the frame.
void ConflictSearch::propagate(std::size_t top) {
  for (std::size_t j = 0; j < top && j + 1 < frames_.size(); ++j) {
    std::vector<State> cores = frames_[j];
    for (const auto& c : cores) {
      if (in_frame(c, j + 1))
        continue;
      State core;
      if (!query(c, {frame_selector(j)}, nullptr, nullptr, &core))
        add_core(j + 1, std::move(core));
    }
  }
}

// Whether the states in every frame 0..i all lie in frame i+1.
bool ConflictSearch::fixpoint(std::size_t i) {
  const auto& target = frames_[i + 1];
  for (const auto& c : target)
    if (c.empty())
      return true;
  Solver s(deadline_);
  FormulaMap<int> y;
  auto yv = [&](const Formula& f) {
    auto it = y.find(f);
    if (it != y.end())
      return it->second;
    int v = s.new_var();
    y.emplace(f, v);
    return v;
  };
  for (std::size_t j = 0; j <= i; ++j) {
    std::vector<int> some;
    bool everything = false;
    for (const auto& c : frames_[j]) {
      if (c.empty()) {
        everything = true;
        break;
      }
      int z = s.new_var();
      for (const auto& f : c)
        s.add_clause({-z, yv(f)});
      some.push_back(z);
    }
    if (!everything)
      s.add_clause(some);
  }
  for (const auto& c : target) {
    std::vector<int> clause;
    for (const auto& f : c)
      clause.push_back(-yv(f));
    s.add_clause(clause);
  }
  return s.solve() == SatStatus::Unsat;
}

ConflictSearch::Outcome ConflictSearch::run(std::size_t max_frames) {
  frames_.clear();
  path_.clear();
  used_.clear();
  std::vector<bool> letter;
  State core;
  if (final_query(init_, &letter, &core)) {
    path_ = {letter};
    return Outcome::Sat;
  }
  add_core(0, std::move(core));
  for (std::size_t i = 0;; ++i) {
    if (i + 1 >= max_frames)
      throw SearchBudgetExceeded("frame limit reached");
    if (reach(init_, i + 1))
      return Outcome::Sat;
    propagate(i + 1);
    if (fixpoint(i))
      return Outcome::Unsat;
  }
}

UcResult algorithm3_uc(const Spec& s, const Alg3Options& opts) {
  auto start = std::chrono::steady_clock::now();
  UcResult r;
  r.algorithm = "native";
  try {
    ActivatedSpec act = activate(s);
    Formula f = to_nnf(remove_past(act.psi).combined());
    ConflictSearch cs(f, act.activation_vars(), opts.deadline);
    if (cs.run(opts.max_frames) == ConflictSearch::Outcome::Sat) {
      r.status = Status::Sat;
      Trace t{cs.letter_vars(), cs.path()};
      r.witness = t.project(s.alphabet.names());
    } else {
      r.status = Status::Unsat;
      r.core = restrict_core(act, cs.used_assumptions());
    }
    r.k_reached = static_cast<int>(cs.frames().size()) - 1;
  } catch (const DeadlineExceeded&) {
    r.status = Status::Unknown;
    r.reason = "timeout";
  } catch (const SearchBudgetExceeded& e) {
    r.status = Status::Unknown;
    r.reason = e.what();
  }
  r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

} // namespace ltlfuc

#include "ltlfuc/bmc.hpp"

#include <chrono>
#include <set>

namespace ltlfuc {

namespace {

std::string counter_name(std::size_t bit) { return "@c" + std::to_string(bit); }

Formula counter_is(std::size_t value, std::size_t bits, bool next_state) {
  std::vector<Formula> lits;
  for (std::size_t b = 0; b < bits; ++b) {
    Formula v = var(next_state ? primed(counter_name(b)) : counter_name(b));
    lits.push_back((value >> b & 1U) ? v : neg(v));
  }
  return conj_all(lits);
}

// Variables that occur under some temporal operator.
void temporal_vars(const Formula& f, bool under, std::set<std::string>& out) {
  if (f.is_var()) {
    if (under)
      out.insert(f.name());
    return;
  }
  under = under || !is_boolean(f.op());
  if (arity(f.op()) == 1)
    temporal_vars(f.child(), under, out);
  else if (arity(f.op()) == 2) {
    temporal_vars(f.lhs(), under, out);
    temporal_vars(f.rhs(), under, out);
  }
}

} // namespace

BmcEngine::BmcEngine(const Spec& s, Deadline deadline)
    : act_(activate(s)), alphabet_(s.alphabet.names()), solver_(deadline) {
  std::set<std::string> temporal;
  for (const auto& c : s.conjuncts)
    temporal_vars(c.formula, false, temporal);
  for (const auto& v : alphabet_)
    if (!temporal.count(v))
      present_only_.push_back(v);
  auto acts = act_.activation_vars();
  t_ = build_tableau(ltlf_to_ltl(act_.psi), acts, acts);

  std::size_t m = t_.fairness.size();
  while (m > 1 && (std::size_t{1} << counter_bits_) < m)
    ++counter_bits_;
  state_names_ = t_.vars;
  for (std::size_t b = 0; b < counter_bits_; ++b)
    state_names_.push_back(counter_name(b));
  for (std::size_t i = 0; i < state_names_.size(); ++i)
    state_index_.emplace(state_names_[i], i);
  if (counter_bits_ > 0) {
    counter_init_.push_back(counter_is(0, counter_bits_, false));
    for (std::size_t v = 0; v < m; ++v) {
      Formula now = counter_is(v, counter_bits_, false);
      counter_trans_.push_back(implies(conj(now, t_.fairness[v]),
                                       counter_is((v + 1) % m, counter_bits_, true)));
      counter_trans_.push_back(implies(conj(now, neg(t_.fairness[v])),
                                       counter_is(v, counter_bits_, true)));
    }
  }

  true_lit_ = solver_.new_var();
  solver_.add_clause({true_lit_});
  add_step();
  Tseitin init(solver_, [this](const std::string& n) { return lit_at(n, 0); });
  for (const auto& f : t_.init)
    init.assert_formula(f);
  for (const auto& f : counter_init_)
    init.assert_formula(f);
  for (const auto& a : acts)
    activations_.push_back(lit_at(a, 0));
}

int BmcEngine::lit_at(const std::string& name, int step) {
  bool next_state = is_primed(name);
  auto it = state_index_.find(next_state ? unprimed(name) : name);
  if (it == state_index_.end())
    throw std::logic_error("bmc: unknown state variable " + name);
  return x_.at(step + (next_state ? 1 : 0))[it->second];
}

void BmcEngine::add_step() {
  int t = static_cast<int>(x_.size());
  std::vector<int> vars;
  for (std::size_t i = 0; i < state_names_.size(); ++i)
    vars.push_back(solver_.new_var());
  x_.push_back(std::move(vars));

  Tseitin here(solver_, [this, t](const std::string& n) { return lit_at(n, t); });
  std::vector<int> fair;
  for (const auto& f : t_.fairness)
    fair.push_back(here.literal(f));
  fair_at_.push_back(std::move(fair));

  // Atoms are never read once `end` holds, so fixing them there loses no
  // models and keeps the post-end part of simple paths short.
  int end = x_[t][t_.index.at(std::string(end_var().name()))];
  for (const auto& v : alphabet_)
    if (auto it = t_.index.find(v); it != t_.index.end())
      solver_.add_clause({-end, -x_[t][it->second]});
  // Variables read only at position 0 are fixed afterwards for the same reason.
  if (t > 0)
    for (const auto& v : present_only_)
      if (auto it = t_.index.find(v); it != t_.index.end())
        solver_.add_clause({-x_[t][it->second]});
  std::vector<Formula> init = t_.init;
  init.insert(init.end(), counter_init_.begin(), counter_init_.end());
  init_at_.push_back(here.literal(conj_all(init)));

  if (t > 0) {
    Tseitin step(solver_, [this, t](const std::string& n) { return lit_at(n, t - 1); });
    for (const auto& f : t_.trans)
      step.assert_formula(f);
    for (const auto& f : counter_trans_)
      step.assert_formula(f);
  }
}

void BmcEngine::unroll_to(int step) {
  while (static_cast<int>(x_.size()) <= step)
    add_step();
}

int BmcEngine::eq(int i, int j) {
  if (auto it = eq_.find({i, j}); it != eq_.end())
    return it->second;
  // The counter is left out: a loop closing on the tableau state with every
  // fairness constraint met inside is already a fair lasso.
  int q = solver_.new_var();
  for (std::size_t v = 0; v < t_.num_vars(); ++v) {
    int a = x_[i][v], b = x_[j][v];
    solver_.add_clause({-q, -a, b});
    solver_.add_clause({-q, a, -b});
  }
  eq_.emplace(std::make_pair(i, j), q);
  return q;
}

int BmcEngine::diff(int i, int j) {
  if (auto it = diff_.find({i, j}); it != diff_.end())
    return it->second;
  int d = solver_.new_var();
  std::vector<int> some{-d};
  for (std::size_t v = 0; v < state_names_.size(); ++v) {
    int a = x_[i][v], b = x_[j][v];
    int e = solver_.new_var();
    solver_.add_clause({-e, a, b});
    solver_.add_clause({-e, -a, -b});
    some.push_back(e);
  }
  solver_.add_clause(some);
  diff_.emplace(std::make_pair(i, j), d);
  return d;
}

// State j+1 equals state l and every fairness constraint holds in [l..j].
int BmcEngine::closed(int l, int j) {
  if (auto it = closed_.find({l, j}); it != closed_.end())
    return it->second;
  int c = solver_.new_var();
  solver_.add_clause({-c, eq(l, j + 1)});
  for (std::size_t f = 0; f < t_.fairness.size(); ++f) {
    std::vector<int> some{-c};
    for (int t = l; t <= j; ++t)
      some.push_back(fair_at_[t][f]);
    solver_.add_clause(some);
  }
  closed_.emplace(std::make_pair(l, j), c);
  return c;
}

int BmcEngine::simple(int k) {
  while (static_cast<int>(simple_.size()) <= k) {
    int n = static_cast<int>(simple_.size());
    int s = solver_.new_var();
    if (n > 0) {
      solver_.add_clause({-s, simple_[n - 1]});
      // a shortest fair lasso never revisits an initial state
      solver_.add_clause({-s, -init_at_[n]});
      for (int i = 0; i < n; ++i)
        solver_.add_clause({-s, diff(i, n)});
    }
    simple_.push_back(s);
  }
  return simple_[k];
}

// Some fair loop closes at a step <= k.
int BmcEngine::closed_upto(int k) {
  while (static_cast<int>(closed_upto_.size()) <= k) {
    int n = static_cast<int>(closed_upto_.size());
    int c = solver_.new_var();
    if (n == 0) {
      solver_.add_clause({-c});
    } else {
      std::vector<int> some{-c, closed_upto_[n - 1]};
      for (int l = 0; l < n; ++l)
        some.push_back(closed(l, n - 1));
      solver_.add_clause(some);
    }
    closed_upto_.push_back(c);
  }
  return closed_upto_[k];
}

bool BmcEngine::solve_with(int selector) {
  std::vector<int> assume = activations_;
  assume.push_back(selector);
  core_.clear();
  if (solver_.solve(assume) == SatStatus::Sat) {
    model_ = solver_.model();
    witness_steps_ = static_cast<int>(x_.size());
    return true;
  }
  std::set<std::string> failed;
  for (int l : solver_.failed_assumptions())
    for (std::size_t i = 0; i < activations_.size(); ++i)
      if (activations_[i] == l)
        failed.insert(act_.bindings[i].var);
  core_ = restrict_core(act_, failed);
  return false;
}

bool BmcEngine::check_complete(int k) {
  unroll_to(k);
  int sel = solver_.new_var();
  solver_.add_clause({-sel, simple(k), closed_upto(k)});
  return solve_with(sel);
}

bool BmcEngine::check_witness(int k) {
  unroll_to(k + 1);
  return solve_with(closed_upto(k + 1));
}

Trace BmcEngine::witness() const {
  Trace tr;
  tr.vars = alphabet_;
  std::size_t end = t_.index.at(std::string(end_var().name()));
  for (int t = 0; t < witness_steps_; ++t) {
    if (model_[x_[t][end]])
      break;
    std::vector<bool> state;
    for (const auto& v : alphabet_) {
      auto it = t_.index.find(v);
      state.push_back(it != t_.index.end() && model_[x_[t][it->second]]);
    }
    tr.states.push_back(std::move(state));
  }
  return tr;
}

UcResult algorithm2_uc(const Spec& s, const Alg2Options& opts) {
  auto start = std::chrono::steady_clock::now();
  UcResult r;
  r.algorithm = "bmc";
  try {
    BmcEngine e(s, opts.deadline);
    int k = 0;
    for (; k <= opts.k_max; ++k) {
      if (!e.check_complete(k)) {
        r.status = Status::Unsat;
        r.core = e.core();
        break;
      }
      if (e.check_witness(k)) {
        r.status = Status::Sat;
        r.witness = e.witness();
        break;
      }
    }
    if (k > opts.k_max) {
      r.reason = "bound " + std::to_string(opts.k_max) + " reached";
      k = opts.k_max;
    }
    r.k_reached = k;
  } catch (const DeadlineExceeded&) {
    r.status = Status::Unknown;
    r.reason = "timeout";
  }
  r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

} // namespace ltlfuc

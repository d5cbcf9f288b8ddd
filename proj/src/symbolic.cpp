#include "ltlfuc/symbolic.hpp"

#include <algorithm>
#include <chrono>
#include <set>

namespace ltlfuc {

SymbolicAutomaton::SymbolicAutomaton(BddManager& m, Tableau t) : m_(m), t_(std::move(t)) {
  init_ = m_.bdd_true();
  for (const auto& f : t_.init)
    init_ &= encode(f);
  trans_ = m_.bdd_true();
  for (const auto& f : t_.trans)
    trans_ &= encode(f);
  for (const auto& f : t_.fairness)
    fairness_.push_back(encode(f));

  std::vector<unsigned> next_vars;
  to_next_.assign(2 * t_.num_vars(), -1);
  for (std::size_t i = 0; i < t_.num_vars(); ++i) {
    next_vars.push_back(nxt(i));
    to_next_[cur(i)] = static_cast<int>(nxt(i));
  }
  next_cube_ = m_.cube(next_vars);
}

Bdd SymbolicAutomaton::encode(const Formula& f) {
  switch (f.op()) {
  case Op::True: return m_.bdd_true();
  case Op::False: return m_.bdd_false();
  case Op::Var: {
    auto it = t_.index.find(unprimed(f.name()));
    if (it == t_.index.end())
      throw std::invalid_argument("encode: unknown variable " + f.name());
    return m_.var(is_primed(f.name()) ? nxt(it->second) : cur(it->second));
  }
  case Op::Not: return !encode(f.child());
  case Op::And: return encode(f.lhs()) & encode(f.rhs());
  case Op::Or: return encode(f.lhs()) | encode(f.rhs());
  case Op::Implies: return m_.implies(encode(f.lhs()), encode(f.rhs()));
  case Op::Iff: return m_.apply_iff(encode(f.lhs()), encode(f.rhs()));
  default: throw std::invalid_argument("encode: not a boolean formula");
  }
}

Bdd SymbolicAutomaton::preimage(const Bdd& states) {
  return m_.and_exists(trans_, m_.rename(states, to_next_), next_cube_);
}

Bdd SymbolicAutomaton::fair_states() {
  Bdd z = m_.bdd_true();
  while (true) {
    m_.check_deadline();
    Bdd znew = z;
    if (fairness_.empty()) {
      znew = z & preimage(z);
    } else {
      for (const auto& fc : fairness_) {
        // E[z U (z & fc)], least fixpoint
        Bdd target = z & fc;
        Bdd reach = m_.bdd_false();
        while (true) {
          m_.check_deadline();
          Bdd next = target | (z & preimage(reach));
          if (next == reach)
            break;
          reach = next;
        }
        znew = znew & preimage(reach);
      }
    }
    if (znew == z)
      return z;
    z = znew;
  }
}

bool ltl_satisfiable(const LtlFormula& f, Deadline deadline, std::size_t node_budget) {
  BddManager m(node_budget, deadline);
  SymbolicAutomaton a(m, build_tableau(f));
  return !(a.init() & a.fair_states()).is_false();
}

namespace {

LabelSet core_from_cube(const ActivatedSpec& act, const BddCube& cube) {
  std::set<std::string> on;
  for (std::size_t i = 0; i < act.bindings.size(); ++i) {
    auto it = cube.find(SymbolicAutomaton::cur(i));
    if (it != cube.end() && it->second)
      on.insert(act.bindings[i].var);
  }
  return restrict_core(act, on);
}

} // namespace

Alg1Output algorithm1(const Spec& s, const Alg1Options& opts) {
  auto start = std::chrono::steady_clock::now();
  Alg1Output out;
  out.result.algorithm = "bdd";
  auto finish = [&] {
    out.result.elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  };

  try {
    ActivatedSpec act = activate(s);
    std::vector<std::string> acts = act.activation_vars();
    BddManager m(opts.node_budget, opts.deadline);
    SymbolicAutomaton a(m, build_tableau(ltlf_to_ltl(act.psi), acts, acts));

    Bdd accepted = a.init() & a.fair_states();
    // Activations occupy tableau slots 0..n-1, so they are BDD variables 0,2,...
    std::vector<unsigned> act_vars, others;
    for (std::size_t i = 0; i < a.tableau().num_vars(); ++i)
      (i < acts.size() ? act_vars : others).push_back(SymbolicAutomaton::cur(i));
    Bdd satisfiable = m.exists(others, accepted);
    Bdd ucs = !satisfiable;

    std::vector<bool> all_on(2 * acts.size(), false);
    for (unsigned v : act_vars)
      all_on[v] = true;
    if (m.eval(satisfiable, all_on)) {
      out.result.status = Status::Sat;
      return finish();
    }
    out.result.status = Status::Unsat;

    switch (opts.mode) {
    case CoreMode::PickOne: out.cores.push_back(core_from_cube(act, m.pick_one_cube(ucs))); break;
    case CoreMode::Minimum: out.cores.push_back(core_from_cube(act, m.min_true_cube(ucs))); break;
    case CoreMode::All: {
      std::set<LabelSet> distinct;
      auto cubes = m.all_sat_cubes(ucs, act_vars);
      for (const auto& c : cubes)
        if (distinct.insert(core_from_cube(act, c)).second)
          out.cores.push_back(core_from_cube(act, c));
      if (acts.size() <= 20) {
        std::set<std::uint64_t> masks;
        for (const auto& c : cubes) {
          std::vector<std::size_t> free;
          std::uint64_t base = 0;
          for (std::size_t i = 0; i < acts.size(); ++i) {
            auto it = c.find(SymbolicAutomaton::cur(i));
            if (it == c.end())
              free.push_back(i);
            else if (it->second)
              base |= std::uint64_t{1} << i;
          }
          for (std::uint64_t k = 0; k < (std::uint64_t{1} << free.size()); ++k) {
            std::uint64_t mask = base;
            for (std::size_t j = 0; j < free.size(); ++j)
              if (k >> j & 1U)
                mask |= std::uint64_t{1} << free[j];
            masks.insert(mask);
          }
        }
        out.unsat_assignments.assign(masks.begin(), masks.end());
      }
      break;
    }
    }
    out.result.core = out.cores.front();
  } catch (const BddBudgetExceeded& e) {
    out = {};
    out.result.algorithm = "bdd";
    out.result.status = Status::Unknown;
    out.result.reason = e.what();
  } catch (const DeadlineExceeded& e) {
    out = {};
    out.result.algorithm = "bdd";
    out.result.status = Status::Unknown;
    out.result.reason = "timeout";
  }
  return finish();
}

UcResult algorithm1_uc(const Spec& s, const Alg1Options& opts) {
  return algorithm1(s, opts).result;
}

} // namespace ltlfuc

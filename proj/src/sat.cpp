#include "ltlfuc/sat.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace ltlfuc {

void CnfFormula::add_clause(std::vector<int> lits) {
  for (int l : lits)
    if (l == 0 || std::abs(l) > num_vars)
      throw std::out_of_range("literal " + std::to_string(l) + " out of range");
  clauses.push_back(std::move(lits));
}

int CnfFormula::named(const std::string& name) {
  auto it = name_map.find(name);
  if (it != name_map.end())
    return it->second;
  int v = new_var();
  name_map.emplace(name, v);
  return v;
}

std::string to_dimacs(const CnfFormula& f) {
  std::ostringstream os;
  for (const auto& [name, v] : f.name_map)
    os << "c " << v << ' ' << name << '\n';
  os << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (int l : c)
      os << l << ' ';
    os << "0\n";
  }
  return os.str();
}

CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  CnfFormula f;
  std::string line;
  bool header = false;
  std::vector<int> cur;
  std::size_t expected = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first == "c" || first[0] == 'c')
      continue;
    if (first == "p") {
      std::string fmt;
      if (!(ls >> fmt >> f.num_vars >> expected) || fmt != "cnf" || f.num_vars < 0)
        throw std::invalid_argument("bad DIMACS header: " + line);
      header = true;
      continue;
    }
    if (!header)
      throw std::invalid_argument("DIMACS clause before header");
    std::istringstream body(line);
    int lit;
    while (body >> lit) {
      if (lit == 0) {
        f.add_clause(cur);
        cur.clear();
      } else {
        cur.push_back(lit);
      }
    }
    if (!body.eof())
      throw std::invalid_argument("bad DIMACS token in: " + line);
  }
  if (!header)
    throw std::invalid_argument("missing DIMACS header");
  if (!cur.empty())
    f.add_clause(cur);
  if (f.clauses.size() != expected)
    throw std::invalid_argument("DIMACS clause count does not match header");
  return f;
}

// ---------------------------------------------------------------------------

namespace {

double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double r = 1;
  for (int i = 0; i < seq; ++i)
    r *= y;
  return r;
}

constexpr int kUndef = 2;

} // namespace

Solver::Solver(Deadline deadline) : deadline_(deadline) {}

int Solver::new_var() {
  int v = num_vars();
  assigns_.push_back(kUndef);
  levels_.push_back(0);
  reasons_.push_back(-1);
  phase_.push_back(false);
  activity_.push_back(0);
  heap_pos_.push_back(-1);
  seen_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_insert(v);
  return v + 1;
}

void Solver::check_range(int lit) const {
  if (lit == 0 || std::abs(lit) > num_vars())
    throw std::out_of_range("literal " + std::to_string(lit) + " out of range");
}

void Solver::add_clause(std::vector<int> lits) {
  for (int l : lits)
    check_range(l);
  if (!ok_)
    return;
  cancel_until(0);
  std::vector<int> c;
  for (int l : lits)
    c.push_back(to_internal(l));
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  std::vector<int> kept;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i + 1 < c.size() && (c[i] ^ 1) == c[i + 1])
      return; // tautology
    int v = lit_value(c[i]);
    if (v == 0)
      return;
    if (v == kUndef)
      kept.push_back(c[i]);
  }
  if (kept.empty()) {
    ok_ = false;
    return;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], -1);
    if (propagate() != -1)
      ok_ = false;
    return;
  }
  clauses_.push_back({std::move(kept), false, false, 0});
  attach(static_cast<int>(clauses_.size()) - 1);
}

void Solver::add_cnf(const CnfFormula& f) {
  while (num_vars() < f.num_vars)
    new_var();
  for (const auto& c : f.clauses)
    add_clause(c);
}

void Solver::attach(int ci) {
  const auto& c = clauses_[ci].lits;
  watches_[c[0] ^ 1].push_back(ci);
  watches_[c[1] ^ 1].push_back(ci);
}

void Solver::enqueue(int l, int reason) {
  int v = var_of(l);
  assigns_[v] = l & 1;
  levels_[v] = level();
  reasons_[v] = reason;
  trail_.push_back(l);
}

int Solver::propagate() {
  while (qhead_ < trail_.size()) {
    int p = trail_[qhead_++];
    int false_lit = p ^ 1;
    auto& ws = watches_[p];
    std::size_t i = 0, j = 0;
    ++stats_.propagations;
    while (i < ws.size()) {
      int ci = ws[i++];
      Clause& c = clauses_[ci];
      if (c.deleted)
        continue;
      if (c.lits[0] == false_lit)
        std::swap(c.lits[0], c.lits[1]);
      if (lit_value(c.lits[0]) == 0) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.lits.size(); ++k) {
        if (lit_value(c.lits[k]) != 1) {
          std::swap(c.lits[1], c.lits[k]);
          watches_[c.lits[1] ^ 1].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved)
        continue;
      ws[j++] = ci;
      if (lit_value(c.lits[0]) == 1) {
        while (i < ws.size())
          ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return ci;
      }
      enqueue(c.lits[0], ci);
    }
    ws.resize(j);
  }
  return -1;
}

void Solver::bump_var(int v) {
  if ((activity_[v] += var_inc_) > 1e100) {
    for (auto& a : activity_)
      a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0)
    heap_up(heap_pos_[v]);
}

void Solver::bump_clause(Clause& c) {
  if ((c.activity += cla_inc_) > 1e20) {
    for (auto& d : clauses_)
      if (d.learnt)
        d.activity *= 1e-20;
    cla_inc_ *= 1e-20;
  }
}

void Solver::analyze(int confl, std::vector<int>& learnt, int& bt_level) {
  int path = 0;
  int p = -1;
  learnt.assign(1, -1);
  int index = static_cast<int>(trail_.size()) - 1;
  do {
    Clause& c = clauses_[confl];
    if (c.learnt)
      bump_clause(c);
    for (std::size_t j = (p == -1 ? 0 : 1); j < c.lits.size(); ++j) {
      int q = c.lits[j];
      int v = var_of(q);
      if (!seen_[v] && levels_[v] > 0) {
        bump_var(v);
        seen_[v] = 1;
        if (levels_[v] >= level())
          ++path;
        else
          learnt.push_back(q);
      }
    }
    while (!seen_[var_of(trail_[index--])]) {
    }
    p = trail_[index + 1];
    confl = reasons_[var_of(p)];
    seen_[var_of(p)] = 0;
    --path;
  } while (path > 0);
  learnt[0] = p ^ 1;

  // drop literals implied by the rest of the clause
  std::vector<int> to_clear(learnt.begin(), learnt.end());
  std::uint32_t abstract = 0;
  for (std::size_t i = 1; i < learnt.size(); ++i)
    abstract |= 1U << (levels_[var_of(learnt[i])] & 31);
  std::size_t kept = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i)
    if (reasons_[var_of(learnt[i])] == -1 || !redundant(learnt[i], abstract, to_clear))
      learnt[kept++] = learnt[i];
  learnt.resize(kept);

  bt_level = 0;
  if (learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t i = 2; i < learnt.size(); ++i)
      if (levels_[var_of(learnt[i])] > levels_[var_of(learnt[max_i])])
        max_i = i;
    std::swap(learnt[1], learnt[max_i]);
    bt_level = levels_[var_of(learnt[1])];
  }
  for (int l : to_clear)
    seen_[var_of(l)] = 0;
}

bool Solver::redundant(int p, std::uint32_t abstract, std::vector<int>& to_clear) {
  std::vector<int> stack{p};
  std::size_t top = to_clear.size();
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    const auto& c = clauses_[reasons_[var_of(q)]].lits;
    for (std::size_t j = 1; j < c.size(); ++j) {
      int v = var_of(c[j]);
      if (seen_[v] || levels_[v] == 0)
        continue;
      if (reasons_[v] != -1 && (abstract & (1U << (levels_[v] & 31)))) {
        seen_[v] = 1;
        stack.push_back(c[j]);
        to_clear.push_back(c[j]);
      } else {
        for (std::size_t k = top; k < to_clear.size(); ++k)
          seen_[var_of(to_clear[k])] = 0;
        to_clear.resize(top);
        return false;
      }
    }
  }
  return true;
}

void Solver::analyze_final(int l) {
  failed_.assign(1, to_external(l));
  if (level() == 0 || levels_[var_of(l)] == 0)
    return;
  seen_[var_of(l)] = 1;
  for (int i = static_cast<int>(trail_.size()) - 1; i >= trail_lim_[0]; --i) {
    int v = var_of(trail_[i]);
    if (!seen_[v])
      continue;
    if (reasons_[v] == -1) {
      int ext = to_external(trail_[i]);
      if (std::find(failed_.begin(), failed_.end(), ext) == failed_.end())
        failed_.push_back(ext);
    } else {
      const auto& c = clauses_[reasons_[v]].lits;
      for (std::size_t j = 1; j < c.size(); ++j)
        if (levels_[var_of(c[j])] > 0)
          seen_[var_of(c[j])] = 1;
    }
    seen_[v] = 0;
  }
  seen_[var_of(l)] = 0;
}

void Solver::cancel_until(int lvl) {
  if (level() <= lvl)
    return;
  for (int i = static_cast<int>(trail_.size()) - 1; i >= trail_lim_[lvl]; --i) {
    int v = var_of(trail_[i]);
    phase_[v] = (trail_[i] & 1) == 0;
    assigns_[v] = kUndef;
    reasons_[v] = -1;
    if (heap_pos_[v] < 0)
      heap_insert(v);
  }
  trail_.resize(trail_lim_[lvl]);
  trail_lim_.resize(lvl);
  qhead_ = trail_.size();
}

int Solver::pick_branch() {
  while (!heap_.empty()) {
    int v = heap_pop();
    if (assigns_[v] == kUndef)
      return phase_[v] ? 2 * v : 2 * v + 1;
  }
  return -1;
}

bool Solver::locked(int ci) const {
  const auto& c = clauses_[ci];
  int v = var_of(c.lits[0]);
  return reasons_[v] == ci && lit_value(c.lits[0]) == 0;
}

void Solver::reduce_db() {
  std::vector<int> cand;
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    const auto& c = clauses_[i];
    if (c.learnt && !c.deleted && c.lits.size() > 2 && !locked(static_cast<int>(i)))
      cand.push_back(static_cast<int>(i));
  }
  std::stable_sort(cand.begin(), cand.end(), [&](int a, int b) {
    return clauses_[a].activity < clauses_[b].activity;
  });
  for (std::size_t i = 0; i < cand.size() / 2; ++i) {
    clauses_[cand[i]].deleted = true;
    clauses_[cand[i]].lits.clear();
    clauses_[cand[i]].lits.shrink_to_fit();
    --num_learnts_;
  }
  max_learnts_ *= 1.1;
}

// Returns 0 for unsat, 1 for sat, 2 when the conflict limit is hit.
int Solver::search(int conflict_limit, const std::vector<int>& assumptions) {
  int conflicts = 0;
  std::vector<int> learnt;
  while (true) {
    int confl = propagate();
    if (confl != -1) {
      ++stats_.conflicts;
      ++conflicts;
      if (level() == 0) {
        ok_ = false;
        return 0;
      }
      int bt;
      analyze(confl, learnt, bt);
      cancel_until(bt);
      if (learnt.size() == 1) {
        enqueue(learnt[0], -1);
      } else {
        clauses_.push_back({learnt, true, false, 0});
        int ci = static_cast<int>(clauses_.size()) - 1;
        attach(ci);
        bump_clause(clauses_[ci]);
        ++num_learnts_;
        enqueue(learnt[0], ci);
      }
      var_inc_ /= 0.95;
      cla_inc_ /= 0.999;
      if ((stats_.conflicts & 63) == 0)
        deadline_.check();
      continue;
    }
    if (conflicts >= conflict_limit) {
      cancel_until(0);
      return 2;
    }
    if (static_cast<double>(num_learnts_) >= max_learnts_ + static_cast<double>(trail_.size()))
      reduce_db();

    int next = -1;
    while (level() < static_cast<int>(assumptions.size())) {
      int p = assumptions[level()];
      int v = lit_value(p);
      if (v == 0) {
        trail_lim_.push_back(static_cast<int>(trail_.size()));
      } else if (v == 1) {
        analyze_final(p);
        return 0;
      } else {
        next = p;
        break;
      }
    }
    if (next == -1) {
      ++stats_.decisions;
      next = pick_branch();
      if (next == -1)
        return 1;
    }
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    enqueue(next, -1);
  }
}

SatStatus Solver::solve(const std::vector<int>& assumptions) {
  failed_.clear();
  model_.clear();
  for (int l : assumptions)
    check_range(l);
  if (!ok_)
    return SatStatus::Unsat;
  std::vector<int> internal;
  for (int l : assumptions)
    internal.push_back(to_internal(l));
  max_learnts_ = std::max(max_learnts_, static_cast<double>(clauses_.size()) / 3 + 1000);

  try {
    for (int r = 0;; ++r) {
      deadline_.check();
      int status = search(static_cast<int>(luby(2, r) * 100), internal);
      if (status == 1) {
        model_.resize(assigns_.size());
        for (std::size_t v = 0; v < assigns_.size(); ++v)
          model_[v] = assigns_[v] == 0;
        cancel_until(0);
        return SatStatus::Sat;
      }
      if (status == 0) {
        cancel_until(0);
        return SatStatus::Unsat;
      }
      ++stats_.restarts;
    }
  } catch (...) {
    cancel_until(0);
    throw;
  }
}

bool Solver::value(int var) const {
  if (var <= 0 || static_cast<std::size_t>(var) > model_.size())
    throw std::out_of_range("no model value for variable " + std::to_string(var));
  return model_[var - 1];
}

std::vector<bool> Solver::model() const {
  std::vector<bool> m(model_.size() + 1, false);
  for (std::size_t v = 0; v < model_.size(); ++v)
    m[v + 1] = model_[v];
  return m;
}

namespace {
bool heap_less(const std::vector<double>& act, int a, int b) {
  return act[a] > act[b] || (act[a] == act[b] && a < b);
}
} // namespace

void Solver::heap_up(int i) {
  int v = heap_[i];
  while (i > 0) {
    int parent = (i - 1) / 2;
    if (!heap_less(activity_, v, heap_[parent]))
      break;
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = i;
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = i;
}

void Solver::heap_down(int i) {
  int v = heap_[i];
  int n = static_cast<int>(heap_.size());
  while (2 * i + 1 < n) {
    int child = 2 * i + 1;
    if (child + 1 < n && heap_less(activity_, heap_[child + 1], heap_[child]))
      ++child;
    if (!heap_less(activity_, heap_[child], v))
      break;
    heap_[i] = heap_[child];
    heap_pos_[heap_[i]] = i;
    i = child;
  }
  heap_[i] = v;
  heap_pos_[v] = i;
}

void Solver::heap_insert(int v) {
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_pos_[v]);
}

int Solver::heap_pop() {
  int top = heap_[0];
  heap_pos_[top] = -1;
  int last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[last] = 0;
    heap_down(0);
  }
  return top;
}

SatOutcome solve_assuming(const CnfFormula& f, const std::vector<int>& assumptions,
                          Deadline deadline) {
  Solver s(deadline);
  s.add_cnf(f);
  SatOutcome out;
  if (s.solve(assumptions) == SatStatus::Sat) {
    out.status = SatStatus::Sat;
    out.model = s.model();
  } else {
    out.status = SatStatus::Unsat;
    out.failed_assumptions = s.failed_assumptions();
  }
  return out;
}

// ---------------------------------------------------------------------------

int Tseitin::true_lit() {
  if (true_ == 0) {
    true_ = sink_.new_var();
    sink_.add_clause({true_});
  }
  return true_;
}

int Tseitin::literal(const Formula& f) {
  switch (f.op()) {
  case Op::True: return true_lit();
  case Op::False: return -true_lit();
  case Op::Var: return atoms_(f.name());
  case Op::Not: return -literal(f.child());
  case Op::And:
  case Op::Or:
  case Op::Implies:
  case Op::Iff: break;
  default: throw std::invalid_argument("tseitin: temporal operator in " + print(f));
  }
  if (auto it = memo_.find(f); it != memo_.end())
    return it->second;
  int a = literal(f.lhs());
  int b = literal(f.rhs());
  int x = sink_.new_var();
  switch (f.op()) {
  case Op::And:
    sink_.add_clause({-x, a});
    sink_.add_clause({-x, b});
    sink_.add_clause({x, -a, -b});
    break;
  case Op::Implies: a = -a; [[fallthrough]];
  case Op::Or:
    sink_.add_clause({x, -a});
    sink_.add_clause({x, -b});
    sink_.add_clause({-x, a, b});
    break;
  default:
    sink_.add_clause({-x, -a, b});
    sink_.add_clause({-x, a, -b});
    sink_.add_clause({x, a, b});
    sink_.add_clause({x, -a, -b});
    break;
  }
  memo_.emplace(f, x);
  return x;
}

void Tseitin::collect_or(const Formula& f, std::vector<int>& out) {
  switch (f.op()) {
  case Op::False: return;
  case Op::Or:
    collect_or(f.lhs(), out);
    collect_or(f.rhs(), out);
    return;
  case Op::Implies:
    collect_or(neg(f.lhs()), out);
    collect_or(f.rhs(), out);
    return;
  case Op::Not:
    if (f.child().op() == Op::And) {
      collect_or(neg(f.child().lhs()), out);
      collect_or(neg(f.child().rhs()), out);
      return;
    }
    if (f.child().op() == Op::Not) {
      collect_or(f.child().child(), out);
      return;
    }
    break;
  default: break;
  }
  out.push_back(literal(f));
}

void Tseitin::assert_formula(const Formula& f) {
  switch (f.op()) {
  case Op::True: return;
  case Op::And:
    assert_formula(f.lhs());
    assert_formula(f.rhs());
    return;
  case Op::Not:
    if (f.child().op() == Op::Or) {
      assert_formula(neg(f.child().lhs()));
      assert_formula(neg(f.child().rhs()));
      return;
    }
    if (f.child().op() == Op::Not) {
      assert_formula(f.child().child());
      return;
    }
    break;
  default: break;
  }
  std::vector<int> clause;
  collect_or(f, clause);
  sink_.add_clause(std::move(clause));
}

} // namespace ltlfuc

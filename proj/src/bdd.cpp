#include "ltlfuc/bdd.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

namespace ltlfuc {

Bdd Bdd::operator!() const { return mgr_->apply_not(*this); }
Bdd Bdd::operator&(const Bdd& o) const { return mgr_->apply_and(*this, o); }
Bdd Bdd::operator|(const Bdd& o) const { return mgr_->apply_or(*this, o); }
Bdd Bdd::operator^(const Bdd& o) const { return mgr_->apply_xor(*this, o); }

BddManager::BddManager(std::size_t node_budget, Deadline deadline)
    : budget_(node_budget), deadline_(deadline) {
  nodes_.push_back({kTerminalVar, 0, 0});
  nodes_.push_back({kTerminalVar, 1, 1});
}

void BddManager::check_same(const Bdd& f) const {
  if (f.mgr_ != this)
    throw std::invalid_argument("BDD belongs to a different manager");
}

void BddManager::tick() {
  if ((++ticks_ & 0xfff) == 0)
    deadline_.check();
}

std::uint32_t BddManager::mk(std::uint32_t var, std::uint32_t lo, std::uint32_t hi) {
  if (lo == hi)
    return lo;
  Key k{(std::uint64_t{lo} << 32) | hi, var};
  if (auto it = unique_.find(k); it != unique_.end())
    return it->second;
  if (nodes_.size() >= budget_)
    throw BddBudgetExceeded("BDD node budget exceeded");
  tick();
  auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back({var, lo, hi});
  unique_.emplace(k, id);
  return id;
}

Bdd BddManager::constant(bool value) { return wrap(value ? 1 : 0); }

Bdd BddManager::var(unsigned index) { return wrap(mk(index, 0, 1)); }
Bdd BddManager::nvar(unsigned index) { return wrap(mk(index, 1, 0)); }

std::uint32_t BddManager::cofactor(std::uint32_t f, std::uint32_t var, bool hi) const {
  const Node& n = nodes_[f];
  if (n.var != var)
    return f;
  return hi ? n.hi : n.lo;
}

std::uint32_t BddManager::ite_rec(std::uint32_t f, std::uint32_t g, std::uint32_t h) {
  if (f == 1)
    return g;
  if (f == 0)
    return h;
  if (g == h)
    return g;
  if (g == 1 && h == 0)
    return f;
  if (g == f)
    g = 1;
  if (h == f)
    h = 0;
  if (g == h)
    return g;
  Key k{(std::uint64_t{f} << 32) | g, h};
  if (auto it = ite_cache_.find(k); it != ite_cache_.end())
    return it->second;
  tick();
  std::uint32_t v = std::min({top_var(f), top_var(g), top_var(h)});
  std::uint32_t lo = ite_rec(cofactor(f, v, false), cofactor(g, v, false), cofactor(h, v, false));
  std::uint32_t hi = ite_rec(cofactor(f, v, true), cofactor(g, v, true), cofactor(h, v, true));
  std::uint32_t r = mk(v, lo, hi);
  ite_cache_.emplace(k, r);
  return r;
}

Bdd BddManager::ite(const Bdd& f, const Bdd& g, const Bdd& h) {
  check_same(f);
  check_same(g);
  check_same(h);
  return wrap(ite_rec(f.id_, g.id_, h.id_));
}

Bdd BddManager::apply_not(const Bdd& f) {
  check_same(f);
  return wrap(ite_rec(f.id_, 0, 1));
}

Bdd BddManager::apply_and(const Bdd& f, const Bdd& g) {
  check_same(f);
  check_same(g);
  return wrap(ite_rec(f.id_, g.id_, 0));
}

Bdd BddManager::apply_or(const Bdd& f, const Bdd& g) {
  check_same(f);
  check_same(g);
  return wrap(ite_rec(f.id_, 1, g.id_));
}

Bdd BddManager::apply_xor(const Bdd& f, const Bdd& g) {
  check_same(f);
  check_same(g);
  return wrap(ite_rec(f.id_, ite_rec(g.id_, 0, 1), g.id_));
}

Bdd BddManager::apply_iff(const Bdd& f, const Bdd& g) {
  check_same(f);
  check_same(g);
  return wrap(ite_rec(f.id_, g.id_, ite_rec(g.id_, 0, 1)));
}

Bdd BddManager::cube(const std::vector<unsigned>& vars) {
  std::vector<unsigned> sorted(vars);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::uint32_t acc = 1;
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it)
    acc = mk(*it, 0, acc);
  return wrap(acc);
}

std::uint32_t BddManager::exists_rec(std::uint32_t f, std::uint32_t cube) {
  if (f <= 1)
    return f;
  while (cube > 1 && top_var(cube) < top_var(f))
    cube = nodes_[cube].hi;
  if (cube == 1)
    return f;
  Key k{(std::uint64_t{f} << 32) | cube, std::uint64_t{kExists} << 32};
  if (auto it = quant_cache_.find(k); it != quant_cache_.end())
    return it->second;
  tick();
  const Node n = nodes_[f];
  std::uint32_t r;
  if (n.var == top_var(cube)) {
    std::uint32_t rest = nodes_[cube].hi;
    std::uint32_t lo = exists_rec(n.lo, rest);
    r = lo == 1 ? 1 : ite_rec(lo, 1, exists_rec(n.hi, rest));
  } else {
    r = mk(n.var, exists_rec(n.lo, cube), exists_rec(n.hi, cube));
  }
  quant_cache_.emplace(k, r);
  return r;
}

Bdd BddManager::exists_cube(const Bdd& var_cube, const Bdd& f) {
  check_same(var_cube);
  check_same(f);
  return wrap(exists_rec(f.id_, var_cube.id_));
}

Bdd BddManager::exists(const std::vector<unsigned>& vars, const Bdd& f) {
  return exists_cube(cube(vars), f);
}

Bdd BddManager::forall(const std::vector<unsigned>& vars, const Bdd& f) {
  return apply_not(exists(vars, apply_not(f)));
}

std::uint32_t BddManager::and_exists_rec(std::uint32_t f, std::uint32_t g, std::uint32_t cube) {
  if (f == 0 || g == 0)
    return 0;
  if (f == 1 && g == 1)
    return 1;
  if (f == 1 || f == g)
    return exists_rec(g, cube);
  if (g == 1)
    return exists_rec(f, cube);
  if (f > g)
    std::swap(f, g);
  std::uint32_t v = std::min(top_var(f), top_var(g));
  while (cube > 1 && top_var(cube) < v)
    cube = nodes_[cube].hi;
  if (cube == 1)
    return ite_rec(f, g, 0);
  Key k{(std::uint64_t{f} << 32) | g, (std::uint64_t{kAndExists} << 32) | cube};
  if (auto it = quant_cache_.find(k); it != quant_cache_.end())
    return it->second;
  tick();
  std::uint32_t f0 = cofactor(f, v, false), f1 = cofactor(f, v, true);
  std::uint32_t g0 = cofactor(g, v, false), g1 = cofactor(g, v, true);
  std::uint32_t r;
  if (v == top_var(cube)) {
    std::uint32_t rest = nodes_[cube].hi;
    std::uint32_t lo = and_exists_rec(f0, g0, rest);
    r = lo == 1 ? 1 : ite_rec(lo, 1, and_exists_rec(f1, g1, rest));
  } else {
    r = mk(v, and_exists_rec(f0, g0, cube), and_exists_rec(f1, g1, cube));
  }
  quant_cache_.emplace(k, r);
  return r;
}

Bdd BddManager::and_exists(const Bdd& f, const Bdd& g, const Bdd& var_cube) {
  check_same(f);
  check_same(g);
  check_same(var_cube);
  return wrap(and_exists_rec(f.id_, g.id_, var_cube.id_));
}

Bdd BddManager::rename(const Bdd& f, const std::vector<int>& map) {
  check_same(f);
  std::unordered_map<std::uint32_t, std::uint32_t> memo;
  std::function<std::uint32_t(std::uint32_t)> rec = [&](std::uint32_t u) -> std::uint32_t {
    if (u <= 1)
      return u;
    if (auto it = memo.find(u); it != memo.end())
      return it->second;
    const Node n = nodes_[u];
    std::uint32_t lo = rec(n.lo);
    std::uint32_t hi = rec(n.hi);
    std::uint32_t target = n.var;
    if (n.var < map.size() && map[n.var] >= 0)
      target = static_cast<std::uint32_t>(map[n.var]);
    std::uint32_t r = ite_rec(mk(target, 0, 1), hi, lo);
    memo.emplace(u, r);
    return r;
  };
  return wrap(rec(f.id_));
}

std::vector<unsigned> BddManager::support(const Bdd& f) {
  check_same(f);
  std::set<unsigned> vars;
  std::set<std::uint32_t> seen;
  std::vector<std::uint32_t> stack{f.id_};
  while (!stack.empty()) {
    std::uint32_t u = stack.back();
    stack.pop_back();
    if (u <= 1 || !seen.insert(u).second)
      continue;
    vars.insert(nodes_[u].var);
    stack.push_back(nodes_[u].lo);
    stack.push_back(nodes_[u].hi);
  }
  return {vars.begin(), vars.end()};
}

bool BddManager::eval(const Bdd& f, const std::vector<bool>& assignment) {
  check_same(f);
  std::uint32_t u = f.id_;
  while (u > 1) {
    const Node& n = nodes_[u];
    bool v = n.var < assignment.size() && assignment[n.var];
    u = v ? n.hi : n.lo;
  }
  return u == 1;
}

std::vector<BddCube> BddManager::all_sat_cubes(const Bdd& f,
                                               const std::vector<unsigned>& restrict_to) {
  check_same(f);
  std::set<unsigned> keep(restrict_to.begin(), restrict_to.end());
  std::vector<unsigned> drop;
  for (unsigned v : support(f))
    if (!keep.count(v))
      drop.push_back(v);
  Bdd g = exists(drop, f);

  std::vector<BddCube> out;
  BddCube path;
  std::function<void(std::uint32_t)> walk = [&](std::uint32_t u) {
    if (u == 0)
      return;
    if (u == 1) {
      out.push_back(path);
      return;
    }
    const Node n = nodes_[u];
    path[n.var] = false;
    walk(n.lo);
    path[n.var] = true;
    walk(n.hi);
    path.erase(n.var);
  };
  walk(g.id_);
  return out;
}

BddCube BddManager::pick_one_cube(const Bdd& f) {
  check_same(f);
  if (f.is_false())
    throw std::invalid_argument("pick_one_cube on the empty BDD");
  BddCube cube;
  std::uint32_t u = f.id_;
  while (u > 1) {
    const Node& n = nodes_[u];
    if (n.lo != 0) {
      cube[n.var] = false;
      u = n.lo;
    } else {
      cube[n.var] = true;
      u = n.hi;
    }
  }
  return cube;
}

BddCube BddManager::min_true_cube(const Bdd& f) {
  check_same(f);
  if (f.is_false())
    throw std::invalid_argument("min_true_cube on the empty BDD");
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 2;
  std::unordered_map<std::uint32_t, std::size_t> cost;
  std::function<std::size_t(std::uint32_t)> rec = [&](std::uint32_t u) -> std::size_t {
    if (u <= 1)
      return u == 1 ? 0 : kInf;
    if (auto it = cost.find(u); it != cost.end())
      return it->second;
    const Node n = nodes_[u];
    std::size_t c = std::min(rec(n.lo), rec(n.hi) + 1);
    cost.emplace(u, c);
    return c;
  };
  rec(f.id_);
  BddCube cube;
  std::uint32_t u = f.id_;
  while (u > 1) {
    const Node& n = nodes_[u];
    if (rec(n.lo) <= rec(n.hi) + 1) {
      cube[n.var] = false;
      u = n.lo;
    } else {
      cube[n.var] = true;
      u = n.hi;
    }
  }
  return cube;
}

double BddManager::sat_count(const Bdd& f, unsigned num_vars) {
  check_same(f);
  std::unordered_map<std::uint32_t, double> memo;
  // Count over the variables strictly below the level of u.
  std::function<double(std::uint32_t)> rec = [&](std::uint32_t u) -> double {
    if (u <= 1)
      return u;
    if (auto it = memo.find(u); it != memo.end())
      return it->second;
    const Node n = nodes_[u];
    auto level = [&](std::uint32_t w) { return w <= 1 ? num_vars : nodes_[w].var; };
    double lo = rec(n.lo) * std::ldexp(1.0, static_cast<int>(level(n.lo) - n.var - 1));
    double hi = rec(n.hi) * std::ldexp(1.0, static_cast<int>(level(n.hi) - n.var - 1));
    memo.emplace(u, lo + hi);
    return lo + hi;
  };
  std::uint32_t top = f.id_ <= 1 ? num_vars : nodes_[f.id_].var;
  return rec(f.id_) * std::ldexp(1.0, static_cast<int>(top));
}

std::size_t BddManager::dag_size(const Bdd& f) {
  check_same(f);
  std::set<std::uint32_t> seen;
  std::vector<std::uint32_t> stack{f.id_};
  while (!stack.empty()) {
    std::uint32_t u = stack.back();
    stack.pop_back();
    if (!seen.insert(u).second || u <= 1)
      continue;
    stack.push_back(nodes_[u].lo);
    stack.push_back(nodes_[u].hi);
  }
  return seen.size();
}

std::string BddManager::to_dot(const Bdd& f, const std::vector<std::string>& names) {
  check_same(f);
  std::ostringstream out;
  out << "digraph bdd {\n  n0 [shape=box,label=\"0\"];\n  n1 [shape=box,label=\"1\"];\n";
  std::set<std::uint32_t> seen;
  std::vector<std::uint32_t> stack{f.id_};
  while (!stack.empty()) {
    std::uint32_t u = stack.back();
    stack.pop_back();
    if (u <= 1 || !seen.insert(u).second)
      continue;
    const Node& n = nodes_[u];
    std::string label = n.var < names.size() ? names[n.var] : "x" + std::to_string(n.var);
    out << "  n" << u << " [label=\"" << label << "\"];\n";
    out << "  n" << u << " -> n" << n.lo << " [style=dashed];\n";
    out << "  n" << u << " -> n" << n.hi << ";\n";
    stack.push_back(n.lo);
    stack.push_back(n.hi);
  }
  out << "}\n";
  return out.str();
}

} // namespace ltlfuc

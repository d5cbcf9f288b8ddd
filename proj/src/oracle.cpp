#include "ltlfuc/oracle.hpp"

#include "ltlfuc/translations.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace ltlfuc {

namespace {

using FormulaSet = std::vector<Formula>; // sorted, unique


FormulaSet merge(const FormulaSet& a, const FormulaSet& b) {
  FormulaSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool subset(const FormulaSet& a, const FormulaSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// One disjunct of an xnf expansion: a letter constraint plus next-state
// obligations split into strong (X) and weak (N).
struct Cube {
  std::map<std::string, bool> lits;
  FormulaSet strong;
  FormulaSet weak;

  bool operator==(const Cube&) const = default;
};

bool subsumes(const Cube& a, const Cube& b) {
  for (const auto& [v, val] : a.lits) {
    auto it = b.lits.find(v);
    if (it == b.lits.end() || it->second != val)
      return false;
  }
  return subset(a.strong, b.strong) && subset(a.weak, b.weak);
}

std::optional<Cube> join(const Cube& a, const Cube& b) {
  Cube c = a;
  for (const auto& [v, val] : b.lits) {
    auto [it, fresh] = c.lits.emplace(v, val);
    if (!fresh && it->second != val)
      return std::nullopt;
  }
  c.strong = merge(a.strong, b.strong);
  c.weak = merge(a.weak, b.weak);
  return c;
}

void add_pruned(std::vector<Cube>& cubes, Cube c) {
  for (const auto& d : cubes)
    if (subsumes(d, c))
      return;
  std::erase_if(cubes, [&](const Cube& d) { return subsumes(c, d); });
  cubes.push_back(std::move(c));
}

class Explorer {
public:
  const std::vector<Cube>& cubes(const Formula& f) {
    if (auto it = memo_.find(f); it != memo_.end())
      return it->second;
    std::vector<Cube> out;
    switch (f.op()) {
    case Op::True: out.push_back({}); break;
    case Op::False: break;
    case Op::Var: out.push_back({{{f.name(), true}}, {}, {}}); break;
    case Op::Not: out.push_back({{{f.child().name(), false}}, {}, {}}); break;
    case Op::Next: out.push_back({{}, {f.child()}, {}}); break;
    case Op::WeakNext: out.push_back({{}, {}, {f.child()}}); break;
    case Op::Or: {
      out = cubes(f.lhs());
      for (const auto& c : cubes(f.rhs()))
        add_pruned(out, c);
      break;
    }
    case Op::And: out = product(cubes(f.lhs()), cubes(f.rhs())); break;
    default: out = cubes(xnf(f)); break;
    }
    return memo_.emplace(f, std::move(out)).first->second;
  }

  std::vector<Cube> state_cubes(const FormulaSet& state) {
    std::vector<Cube> acc{Cube{}};
    for (const auto& f : state) {
      acc = product(acc, cubes(f));
      if (acc.empty())
        break;
    }
    return acc;
  }

private:
  static std::vector<Cube> product(const std::vector<Cube>& a, const std::vector<Cube>& b) {
    std::vector<Cube> out;
    for (const auto& x : a)
      for (const auto& y : b)
        if (auto c = join(x, y))
          add_pruned(out, std::move(*c));
    return out;
  }

  FormulaMap<std::vector<Cube>> memo_;
};

struct Node {
  FormulaSet obligations;
  long parent;
  std::map<std::string, bool> letter; // letter read at the parent position
  std::size_t depth;
};

std::vector<bool> to_row(const std::map<std::string, bool>& letter,
                         const std::vector<std::string>& vars) {
  std::vector<bool> row;
  for (const auto& v : vars) {
    auto it = letter.find(v);
    row.push_back(it != letter.end() && it->second);
  }
  return row;
}

} // namespace

Verdict oracle_sat(const Formula& f, const OracleOptions& opts) {
  return oracle_sat(f, free_vars_ordered(f), opts);
}

Verdict oracle_sat(const Formula& f, const std::vector<std::string>& witness_vars,
                   const OracleOptions& opts) {
  Formula root = to_nnf(remove_past(f).combined());
  Explorer ex;
  std::vector<Node> nodes;
  std::map<FormulaSet, std::size_t> seen;

  FormulaSet init;
  if (root.op() != Op::True)
    init.push_back(root);
  nodes.push_back({init, -1, {}, 0});
  seen.emplace(init, 0);

  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t id = queue.front();
    queue.pop_front();
    if (nodes[id].depth + 1 > opts.max_len)
      throw OracleBudgetExceeded("oracle: trace length limit reached");
    std::vector<Cube> cs = ex.state_cubes(nodes[id].obligations);

    for (const auto& c : cs) {
      if (!c.strong.empty())
        continue;
      Trace t;
      t.vars = witness_vars;
      t.states.push_back(to_row(c.lits, witness_vars));
      for (long p = static_cast<long>(id); nodes[static_cast<std::size_t>(p)].parent >= 0;
           p = nodes[static_cast<std::size_t>(p)].parent)
        t.states.push_back(to_row(nodes[static_cast<std::size_t>(p)].letter, witness_vars));
      std::reverse(t.states.begin(), t.states.end());
      return {true, std::move(t)};
    }

    for (const auto& c : cs) {
      FormulaSet succ = merge(c.strong, c.weak);
      std::erase_if(succ, [](const Formula& g) { return g.op() == Op::True; });
      if (seen.count(succ))
        continue;
      if (nodes.size() >= opts.max_states)
        throw OracleBudgetExceeded("oracle: state limit reached");
      seen.emplace(succ, nodes.size());
      nodes.push_back({std::move(succ), static_cast<long>(id), c.lits, nodes[id].depth + 1});
      queue.push_back(nodes.size() - 1);
    }
  }
  return {false, std::nullopt};
}

LabelSet labels_of_mask(const Spec& s, std::size_t mask) {
  LabelSet out;
  for (std::size_t i = 0; i < s.conjuncts.size(); ++i)
    if (mask >> i & 1U)
      out.insert(s.conjuncts[i].label);
  return out;
}

std::vector<bool> oracle_subset_sat(const Spec& s, const OracleOptions& opts) {
  const std::size_t n = s.conjuncts.size();
  if (n > 20)
    throw OracleBudgetExceeded("oracle: too many conjuncts for a subset scan");
  std::vector<bool> sat(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < sat.size(); ++mask) {
    std::vector<Formula> fs;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U)
        fs.push_back(s.conjuncts[i].formula);
    sat[mask] = oracle_sat(conj_all(fs), opts).satisfiable;
  }
  return sat;
}

std::vector<LabelSet> oracle_all_min_ucs(const Spec& s, const OracleOptions& opts) {
  auto sat = oracle_subset_sat(s, opts);
  std::vector<LabelSet> out;
  for (std::size_t mask = 0; mask < sat.size(); ++mask) {
    if (sat[mask])
      continue;
    bool minimal = true;
    for (std::size_t i = 0; i < s.conjuncts.size() && minimal; ++i)
      if ((mask >> i & 1U) && !sat[mask & ~(std::size_t{1} << i)])
        minimal = false;
    if (minimal)
      out.push_back(labels_of_mask(s, mask));
  }
  return out;
}

} // namespace ltlfuc

#include "ltlfuc/tableau.hpp"

#include <stdexcept>

namespace ltlfuc {

LtlFormula normalize_core(const LtlFormula& f) {
  switch (f.op()) {
  case Op::Var:
  case Op::True:
  case Op::False: return f;
  case Op::Not: return neg(normalize_core(f.child()));
  case Op::And: return conj(normalize_core(f.lhs()), normalize_core(f.rhs()));
  case Op::Or: return disj(normalize_core(f.lhs()), normalize_core(f.rhs()));
  case Op::Implies: return implies(normalize_core(f.lhs()), normalize_core(f.rhs()));
  case Op::Iff: return iff(normalize_core(f.lhs()), normalize_core(f.rhs()));
  case Op::Next:
  case Op::WeakNext: return next(normalize_core(f.child()));
  case Op::Eventually: return until(top(), normalize_core(f.child()));
  case Op::Globally: return neg(until(top(), neg(normalize_core(f.child()))));
  case Op::Until: return until(normalize_core(f.lhs()), normalize_core(f.rhs()));
  case Op::Release:
    return neg(until(neg(normalize_core(f.lhs())), neg(normalize_core(f.rhs()))));
  case Op::Yesterday: return yesterday(normalize_core(f.child()));
  case Op::WeakYesterday: return neg(yesterday(neg(normalize_core(f.child()))));
  case Op::Once: return since(top(), normalize_core(f.child()));
  case Op::Historically: return neg(since(top(), neg(normalize_core(f.child()))));
  case Op::Since: return since(normalize_core(f.lhs()), normalize_core(f.rhs()));
  case Op::Trigger:
    return neg(since(neg(normalize_core(f.lhs())), neg(normalize_core(f.rhs()))));
  }
  throw std::logic_error("normalize_core: unknown operator");
}

std::string primed(const std::string& name) { return name + "'"; }
bool is_primed(const std::string& name) { return !name.empty() && name.back() == '\''; }
std::string unprimed(const std::string& name) {
  return is_primed(name) ? name.substr(0, name.size() - 1) : name;
}

Formula prime(const Formula& f) {
  switch (arity(f.op())) {
  case 0: return f.is_var() ? var(primed(f.name())) : f;
  case 1: return Formula::unary(f.op(), prime(f.child()));
  default: return Formula::binary(f.op(), prime(f.lhs()), prime(f.rhs()));
  }
}

std::vector<std::string> Tableau::atoms() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (is_atom[i])
      out.push_back(vars[i]);
  return out;
}

namespace {

class Builder {
public:
  Tableau t;

  void add_var(const std::string& name, bool atom) {
    if (t.index.count(name))
      return;
    t.index.emplace(name, t.vars.size());
    t.vars.push_back(name);
    t.is_atom.push_back(atom);
  }

  Formula sat(const Formula& f) {
    if (auto it = memo_.find(f); it != memo_.end())
      return it->second;
    Formula r;
    switch (f.op()) {
    case Op::True:
    case Op::False: r = f; break;
    case Op::Var:
      add_var(f.name(), true);
      r = f;
      break;
    case Op::Not: r = neg(sat(f.child())); break;
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Iff: r = Formula::binary(f.op(), sat(f.lhs()), sat(f.rhs())); break;
    case Op::Next: {
      Formula g = sat(f.child());
      Formula x = elementary('x', f);
      t.trans.push_back(iff(x, prime(g)));
      r = x;
      break;
    }
    case Op::Until: {
      Formula h = sat(f.rhs());
      Formula g = sat(f.lhs());
      Formula u = elementary('u', next(f));
      r = disj(h, conj(g, u));
      t.trans.push_back(iff(u, prime(r)));
      t.fairness.push_back(disj(neg(r), h));
      break;
    }
    case Op::Yesterday: {
      Formula g = sat(f.child());
      Formula y = elementary('y', f);
      t.trans.push_back(iff(prime(y), g));
      t.init.push_back(neg(y));
      r = y;
      break;
    }
    case Op::Since: {
      Formula h = sat(f.rhs());
      Formula g = sat(f.lhs());
      Formula s = elementary('s', yesterday(f));
      r = disj(h, conj(g, s));
      t.trans.push_back(iff(prime(s), r));
      t.init.push_back(neg(s));
      break;
    }
    default: throw std::invalid_argument("tableau: formula is not in core form");
    }
    memo_.emplace(f, r);
    return r;
  }

private:
  Formula elementary(char kind, const Formula& meaning) {
    std::string name = std::string("@") + kind + std::to_string(++counter_);
    add_var(name, false);
    t.meaning.emplace(name, meaning);
    return var(name);
  }

  FormulaMap<Formula> memo_;
  int counter_ = 0;
};

} // namespace

Tableau build_tableau(const LtlFormula& f, const std::vector<std::string>& leading,
                      const std::vector<std::string>& rigid) {
  Builder b;
  for (const auto& v : leading)
    b.add_var(v, true);
  Formula root = b.sat(normalize_core(f));
  b.t.init.insert(b.t.init.begin(), root);
  for (const auto& v : rigid) {
    b.add_var(v, true);
    b.t.trans.push_back(iff(var(primed(v)), var(v)));
  }
  return std::move(b.t);
}

} // namespace ltlfuc

#include "ltlfuc/translations.hpp"

#include "ltlfuc/parser.hpp"

#include <optional>
#include <stdexcept>

namespace ltlfuc {

namespace {

bool is_true(const Formula& f) { return f.op() == Op::True; }
bool is_false(const Formula& f) { return f.op() == Op::False; }

Formula mk_not(const Formula& f) {
  if (is_true(f))
    return bottom();
  if (is_false(f))
    return top();
  return neg(f);
}

Formula mk_and(const Formula& a, const Formula& b) {
  if (is_false(a) || is_false(b))
    return bottom();
  if (is_true(a))
    return b;
  if (is_true(b))
    return a;
  return conj(a, b);
}

Formula mk_or(const Formula& a, const Formula& b) {
  if (is_true(a) || is_true(b))
    return top();
  if (is_false(a))
    return b;
  if (is_false(b))
    return a;
  return disj(a, b);
}

// Folding for a node whose children are already folded.
Formula fold_node(Op op, const Formula& a, const Formula& b) {
  switch (op) {
  case Op::Not: return mk_not(a);
  case Op::And: return mk_and(a, b);
  case Op::Or: return mk_or(a, b);
  case Op::Implies: return mk_or(mk_not(a), b);
  case Op::Iff:
    if (a.is_const())
      return is_true(a) ? b : mk_not(b);
    if (b.is_const())
      return is_true(b) ? a : mk_not(a);
    return iff(a, b);
  case Op::Next:
    if (is_false(a))
      return bottom();
    return next(a);
  case Op::WeakNext:
    if (is_true(a))
      return top();
    return wnext(a);
  case Op::Eventually:
  case Op::Globally:
  case Op::Once:
  case Op::Historically:
    if (a.is_const())
      return a;
    return Formula::unary(op, a);
  case Op::Yesterday:
    if (is_false(a))
      return bottom();
    return yesterday(a);
  case Op::WeakYesterday:
    if (is_true(a))
      return top();
    return wyesterday(a);
  case Op::Until:
  case Op::Release:
  case Op::Since:
  case Op::Trigger:
    if (b.is_const())
      return b;
    if (op == Op::Until && is_false(a))
      return b;
    if (op == Op::Since && is_false(a))
      return b;
    if (op == Op::Release && is_true(a))
      return b;
    if (op == Op::Trigger && is_true(a))
      return b;
    return Formula::binary(op, a, b);
  default: break;
  }
  throw std::logic_error("fold_node: unexpected operator");
}

Formula nnf(const Formula& f, bool positive) {
  switch (f.op()) {
  case Op::True: return positive ? top() : bottom();
  case Op::False: return positive ? bottom() : top();
  case Op::Var: return positive ? f : neg(f);
  case Op::Not: return nnf(f.child(), !positive);
  case Op::And:
    return positive ? mk_and(nnf(f.lhs(), true), nnf(f.rhs(), true))
                    : mk_or(nnf(f.lhs(), false), nnf(f.rhs(), false));
  case Op::Or:
    return positive ? mk_or(nnf(f.lhs(), true), nnf(f.rhs(), true))
                    : mk_and(nnf(f.lhs(), false), nnf(f.rhs(), false));
  case Op::Implies:
    return positive ? mk_or(nnf(f.lhs(), false), nnf(f.rhs(), true))
                    : mk_and(nnf(f.lhs(), true), nnf(f.rhs(), false));
  case Op::Iff: {
    // a <-> b  ==  (!a | b) & (a | !b);  !(a <-> b)  ==  (a | b) & (!a | !b)
    Formula pa = nnf(f.lhs(), true), na = nnf(f.lhs(), false);
    Formula pb = nnf(f.rhs(), true), nb = nnf(f.rhs(), false);
    if (positive)
      return mk_and(mk_or(na, pb), mk_or(pa, nb));
    return mk_and(mk_or(pa, pb), mk_or(na, nb));
  }
  default: break;
  }
  static const auto dual = [](Op op) {
    switch (op) {
    case Op::Next: return Op::WeakNext;
    case Op::WeakNext: return Op::Next;
    case Op::Eventually: return Op::Globally;
    case Op::Globally: return Op::Eventually;
    case Op::Until: return Op::Release;
    case Op::Release: return Op::Until;
    case Op::Yesterday: return Op::WeakYesterday;
    case Op::WeakYesterday: return Op::Yesterday;
    case Op::Once: return Op::Historically;
    case Op::Historically: return Op::Once;
    case Op::Since: return Op::Trigger;
    case Op::Trigger: return Op::Since;
    default: throw std::logic_error("nnf: no dual");
    }
  };
  Op op = positive ? f.op() : dual(f.op());
  if (arity(f.op()) == 1)
    return fold_node(op, nnf(f.child(), positive), {});
  return fold_node(op, nnf(f.lhs(), positive), nnf(f.rhs(), positive));
}

Formula rebuild(const Formula& f, const Formula& a, const Formula& b) {
  if (arity(f.op()) == 1)
    return Formula::unary(f.op(), a);
  return Formula::binary(f.op(), a, b);
}

class PastRemover {
public:
  Formula run(const Formula& f) {
    switch (f.op()) {
    case Op::Var:
    case Op::True:
    case Op::False: return f;
    case Op::Yesterday: {
      Formula g = run(f.child());
      auto [p, fresh] = var_for(f);
      if (fresh)
        add_monitors(p, g);
      return p;
    }
    case Op::Since: {
      Formula g = run(f.lhs());
      Formula h = run(f.rhs());
      auto [p, fresh] = var_for(f);
      Formula u = disj(h, conj(g, p));
      if (fresh)
        add_monitors(p, u);
      return u;
    }
    case Op::WeakYesterday:
    case Op::Once:
    case Op::Historically:
    case Op::Trigger: throw std::logic_error("remove_past: input not normalized");
    default: break;
    }
    if (arity(f.op()) == 1)
      return rebuild(f, run(f.child()), {});
    return rebuild(f, run(f.lhs()), run(f.rhs()));
  }

  PastRemovalResult result;

private:
  std::pair<Formula, bool> var_for(const Formula& key) {
    if (auto it = memo_.find(key); it != memo_.end())
      return {it->second, false};
    std::string name = std::string(kPastPrefix) + std::to_string(result.fresh_vars.size() + 1);
    result.fresh_vars.push_back(name);
    Formula p = var(name);
    memo_.emplace(key, p);
    return {p, true};
  }

  // p is false at position 0, and p at i+1 holds iff `value` holds at i.
  void add_monitors(const Formula& p, const Formula& value) {
    result.monitors.push_back(neg(p));
    result.monitors.push_back(
        globally(conj(implies(next(p), value), implies(value, wnext(p)))));
  }

  FormulaMap<Formula> memo_;
};

} // namespace

Formula end_var() {
  static const Formula e = var(std::string(kEndVar));
  return e;
}

Formula to_nnf(const Formula& f) { return nnf(f, true); }

Formula fold_constants(const Formula& f) {
  switch (arity(f.op())) {
  case 0: return f;
  case 1: return fold_node(f.op(), fold_constants(f.child()), {});
  default: return fold_node(f.op(), fold_constants(f.lhs()), fold_constants(f.rhs()));
  }
}

LtlFormula ftol(const Formula& f) {
  const Formula end = end_var();
  switch (f.op()) {
  case Op::Var:
  case Op::True:
  case Op::False: return f;
  case Op::Next: return next(conj(ftol(f.child()), neg(end)));
  case Op::WeakNext: return next(disj(ftol(f.child()), end));
  case Op::Eventually: return eventually(conj(ftol(f.child()), neg(end)));
  case Op::Globally: return globally(disj(ftol(f.child()), end));
  case Op::Until: return until(ftol(f.lhs()), conj(ftol(f.rhs()), neg(end)));
  case Op::Release: return release(conj(ftol(f.lhs()), neg(end)), disj(ftol(f.rhs()), end));
  default: break;
  }
  if (arity(f.op()) == 1)
    return rebuild(f, ftol(f.child()), {});
  return rebuild(f, ftol(f.lhs()), ftol(f.rhs()));
}

namespace {

bool is_end(const Formula& f) { return f.op() == Op::Var && f.name() == kEndVar; }
bool is_not_end(const Formula& f) { return f.op() == Op::Not && is_end(f.child()); }

// Matches `g & !end`.
std::optional<Formula> strip_not_end(const Formula& f) {
  if (f.op() == Op::And && is_not_end(f.rhs()))
    return f.lhs();
  return std::nullopt;
}

// Matches `g | end`.
std::optional<Formula> strip_end(const Formula& f) {
  if (f.op() == Op::Or && is_end(f.rhs()))
    return f.lhs();
  return std::nullopt;
}

[[noreturn]] void not_in_image(const Formula& f) {
  throw std::invalid_argument("not a translated LTLf formula: " + print(f));
}

} // namespace

Formula ltl_to_ltlf(const LtlFormula& f) {
  switch (f.op()) {
  case Op::Var:
    if (is_end(f))
      not_in_image(f);
    return f;
  case Op::Next:
    if (auto g = strip_not_end(f.child()))
      return next(ltl_to_ltlf(*g));
    if (auto g = strip_end(f.child()))
      return wnext(ltl_to_ltlf(*g));
    not_in_image(f);
  case Op::Eventually:
    if (auto g = strip_not_end(f.child()))
      return eventually(ltl_to_ltlf(*g));
    not_in_image(f);
  case Op::Globally:
    if (auto g = strip_end(f.child()))
      return globally(ltl_to_ltlf(*g));
    not_in_image(f);
  case Op::Until:
    if (auto g = strip_not_end(f.rhs()))
      return until(ltl_to_ltlf(f.lhs()), ltl_to_ltlf(*g));
    not_in_image(f);
  case Op::Release: {
    auto a = strip_not_end(f.lhs());
    auto b = strip_end(f.rhs());
    if (a && b)
      return release(ltl_to_ltlf(*a), ltl_to_ltlf(*b));
    not_in_image(f);
  }
  case Op::WeakNext: not_in_image(f);
  default: break;
  }
  if (arity(f.op()) == 0)
    return f;
  if (arity(f.op()) == 1)
    return rebuild(f, ltl_to_ltlf(f.child()), {});
  return rebuild(f, ltl_to_ltlf(f.lhs()), ltl_to_ltlf(f.rhs()));
}

std::vector<LtlFormula> end_axioms() {
  const Formula end = end_var();
  return {neg(end), eventually(end), globally(implies(end, next(end)))};
}

LtlFormula ltlf_to_ltl(const Formula& f) {
  auto parts = end_axioms();
  parts.push_back(ftol(f));
  return conj_all(parts);
}

Formula PastRemovalResult::combined() const {
  std::vector<Formula> parts{future_formula};
  parts.insert(parts.end(), monitors.begin(), monitors.end());
  return conj_all(parts);
}

Formula normalize_past(const Formula& f) {
  switch (f.op()) {
  case Op::Var:
  case Op::True:
  case Op::False: return f;
  case Op::WeakYesterday: return neg(yesterday(neg(normalize_past(f.child()))));
  case Op::Once: return since(top(), normalize_past(f.child()));
  case Op::Historically: return neg(since(top(), neg(normalize_past(f.child()))));
  case Op::Trigger:
    return neg(since(neg(normalize_past(f.lhs())), neg(normalize_past(f.rhs()))));
  default: break;
  }
  if (arity(f.op()) == 1)
    return rebuild(f, normalize_past(f.child()), {});
  return rebuild(f, normalize_past(f.lhs()), normalize_past(f.rhs()));
}

PastRemovalResult remove_past(const Formula& f) {
  PastRemover r;
  r.result.future_formula = r.run(normalize_past(f));
  return std::move(r.result);
}

Formula xnf(const Formula& f) {
  switch (f.op()) {
  case Op::True:
  case Op::False:
  case Op::Var:
  case Op::Next:
  case Op::WeakNext: return f;
  case Op::Not:
    if (f.child().op() != Op::Var)
      throw std::invalid_argument("xnf: input is not in negation normal form");
    return f;
  case Op::And: return mk_and(xnf(f.lhs()), xnf(f.rhs()));
  case Op::Or: return mk_or(xnf(f.lhs()), xnf(f.rhs()));
  case Op::Until: return mk_or(xnf(f.rhs()), mk_and(xnf(f.lhs()), next(f)));
  case Op::Release: return mk_and(xnf(f.rhs()), mk_or(xnf(f.lhs()), wnext(f)));
  case Op::Eventually: return mk_or(xnf(f.child()), next(f));
  case Op::Globally: return mk_and(xnf(f.child()), wnext(f));
  case Op::Implies:
  case Op::Iff: throw std::invalid_argument("xnf: input is not in negation normal form");
  default: throw std::invalid_argument("xnf: input contains past operators");
  }
}

} // namespace ltlfuc

#include "ltlfuc/formula.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace ltlfuc {

struct Formula::Node {
  Op op;
  std::string name;
  std::vector<Formula> kids;
  std::size_t hash;
  std::size_t size;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

const char* symbol(Op op) {
  switch (op) {
  case Op::Not: return "!";
  case Op::And: return "&";
  case Op::Or: return "|";
  case Op::Implies: return "->";
  case Op::Iff: return "<->";
  case Op::Next: return "X";
  case Op::WeakNext: return "N";
  case Op::Eventually: return "F";
  case Op::Globally: return "G";
  case Op::Until: return "U";
  case Op::Release: return "R";
  case Op::Yesterday: return "Y";
  case Op::WeakYesterday: return "Z";
  case Op::Once: return "O";
  case Op::Historically: return "H";
  case Op::Since: return "S";
  case Op::Trigger: return "T";
  default: return "?";
  }
}

} // namespace

int arity(Op op) {
  switch (op) {
  case Op::Var:
  case Op::True:
  case Op::False: return 0;
  case Op::And:
  case Op::Or:
  case Op::Implies:
  case Op::Iff:
  case Op::Until:
  case Op::Release:
  case Op::Since:
  case Op::Trigger: return 2;
  default: return 1;
  }
}

bool is_past(Op op) {
  switch (op) {
  case Op::Yesterday:
  case Op::WeakYesterday:
  case Op::Once:
  case Op::Historically:
  case Op::Since:
  case Op::Trigger: return true;
  default: return false;
  }
}

bool is_future_temporal(Op op) {
  switch (op) {
  case Op::Next:
  case Op::WeakNext:
  case Op::Eventually:
  case Op::Globally:
  case Op::Until:
  case Op::Release: return true;
  default: return false;
  }
}

bool is_boolean(Op op) {
  switch (op) {
  case Op::Not:
  case Op::And:
  case Op::Or:
  case Op::Implies:
  case Op::Iff: return true;
  default: return false;
  }
}

Formula::Formula() : Formula(top()) {}

Formula Formula::var(std::string name) {
  if (name.empty())
    throw std::invalid_argument("variable name must be nonempty");
  std::size_t h = mix(static_cast<std::size_t>(Op::Var), std::hash<std::string>{}(name));
  return Formula(std::make_shared<const Node>(Node{Op::Var, std::move(name), {}, h, 1}));
}

Formula Formula::top() {
  static const Formula t(std::make_shared<const Node>(
      Node{Op::True, {}, {}, mix(static_cast<std::size_t>(Op::True), 1), 1}));
  return t;
}

Formula Formula::bottom() {
  static const Formula f(std::make_shared<const Node>(
      Node{Op::False, {}, {}, mix(static_cast<std::size_t>(Op::False), 2), 1}));
  return f;
}

Formula Formula::unary(Op op, Formula child) {
  if (arity(op) != 1)
    throw std::invalid_argument("operator is not unary");
  std::size_t h = mix(static_cast<std::size_t>(op) * 7919, child.hash());
  std::size_t sz = 1 + child.size();
  return Formula(std::make_shared<const Node>(Node{op, {}, {std::move(child)}, h, sz}));
}

Formula Formula::binary(Op op, Formula lhs, Formula rhs) {
  if (arity(op) != 2)
    throw std::invalid_argument("operator is not binary");
  std::size_t h = mix(mix(static_cast<std::size_t>(op) * 104729, lhs.hash()), rhs.hash());
  std::size_t sz = 1 + lhs.size() + rhs.size();
  return Formula(
      std::make_shared<const Node>(Node{op, {}, {std::move(lhs), std::move(rhs)}, h, sz}));
}

Op Formula::op() const noexcept { return node_->op; }
const std::string& Formula::name() const noexcept { return node_->name; }

const Formula& Formula::child() const {
  if (node_->kids.empty())
    throw std::logic_error("formula has no children");
  return node_->kids[0];
}

const Formula& Formula::lhs() const { return child(); }

const Formula& Formula::rhs() const {
  if (node_->kids.size() < 2)
    throw std::logic_error("formula is not binary");
  return node_->kids[1];
}

std::size_t Formula::hash() const noexcept { return node_->hash; }
std::size_t Formula::size() const noexcept { return node_->size; }

bool Formula::is_literal() const noexcept {
  return op() == Op::Var || (op() == Op::Not && child().op() == Op::Var);
}

int compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_)
    return 0;
  if (a.op() != b.op())
    return a.op() < b.op() ? -1 : 1;
  if (a.op() == Op::Var) {
    int c = a.name().compare(b.name());
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  const auto& ka = a.node_->kids;
  const auto& kb = b.node_->kids;
  for (std::size_t i = 0; i < ka.size(); ++i) {
    int c = compare(ka[i], kb[i]);
    if (c != 0)
      return c;
  }
  return 0;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_)
    return true;
  if (a.hash() != b.hash() || a.size() != b.size())
    return false;
  return compare(a, b) == 0;
}

Formula var(std::string name) { return Formula::var(std::move(name)); }
Formula top() { return Formula::top(); }
Formula bottom() { return Formula::bottom(); }
Formula neg(Formula f) { return Formula::unary(Op::Not, std::move(f)); }
Formula conj(Formula a, Formula b) { return Formula::binary(Op::And, std::move(a), std::move(b)); }
Formula disj(Formula a, Formula b) { return Formula::binary(Op::Or, std::move(a), std::move(b)); }
Formula implies(Formula a, Formula b) {
  return Formula::binary(Op::Implies, std::move(a), std::move(b));
}
Formula iff(Formula a, Formula b) { return Formula::binary(Op::Iff, std::move(a), std::move(b)); }
Formula next(Formula f) { return Formula::unary(Op::Next, std::move(f)); }
Formula wnext(Formula f) { return Formula::unary(Op::WeakNext, std::move(f)); }
Formula eventually(Formula f) { return Formula::unary(Op::Eventually, std::move(f)); }
Formula globally(Formula f) { return Formula::unary(Op::Globally, std::move(f)); }
Formula until(Formula a, Formula b) {
  return Formula::binary(Op::Until, std::move(a), std::move(b));
}
Formula release(Formula a, Formula b) {
  return Formula::binary(Op::Release, std::move(a), std::move(b));
}
Formula yesterday(Formula f) { return Formula::unary(Op::Yesterday, std::move(f)); }
Formula wyesterday(Formula f) { return Formula::unary(Op::WeakYesterday, std::move(f)); }
Formula once(Formula f) { return Formula::unary(Op::Once, std::move(f)); }
Formula historically(Formula f) { return Formula::unary(Op::Historically, std::move(f)); }
Formula since(Formula a, Formula b) {
  return Formula::binary(Op::Since, std::move(a), std::move(b));
}
Formula trigger(Formula a, Formula b) {
  return Formula::binary(Op::Trigger, std::move(a), std::move(b));
}

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty())
    return top();
  Formula acc = fs.back();
  for (auto it = fs.rbegin() + 1; it != fs.rend(); ++it)
    acc = conj(*it, acc);
  return acc;
}

Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty())
    return bottom();
  Formula acc = fs.back();
  for (auto it = fs.rbegin() + 1; it != fs.rend(); ++it)
    acc = disj(*it, acc);
  return acc;
}

namespace {

void print_into(const Formula& f, std::ostringstream& out) {
  switch (arity(f.op())) {
  case 0:
    if (f.op() == Op::Var)
      out << f.name();
    else
      out << (f.op() == Op::True ? "true" : "false");
    return;
  case 1:
    out << '(' << symbol(f.op()) << ' ';
    print_into(f.child(), out);
    out << ')';
    return;
  default:
    out << '(';
    print_into(f.lhs(), out);
    out << ' ' << symbol(f.op()) << ' ';
    print_into(f.rhs(), out);
    out << ')';
  }
}

void collect_vars(const Formula& f, std::vector<std::string>& out, std::set<std::string>& seen) {
  if (f.op() == Op::Var) {
    if (seen.insert(f.name()).second)
      out.push_back(f.name());
    return;
  }
  int n = arity(f.op());
  if (n >= 1)
    collect_vars(f.lhs(), out, seen);
  if (n == 2)
    collect_vars(f.rhs(), out, seen);
}

} // namespace

std::string print(const Formula& f) {
  std::ostringstream out;
  print_into(f, out);
  return out.str();
}

std::vector<std::string> free_vars_ordered(const Formula& f) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  collect_vars(f, out, seen);
  return out;
}

std::set<std::string> free_vars(const Formula& f) {
  auto v = free_vars_ordered(f);
  return {v.begin(), v.end()};
}

bool has_past(const Formula& f) {
  if (is_past(f.op()))
    return true;
  int n = arity(f.op());
  return (n >= 1 && has_past(f.lhs())) || (n == 2 && has_past(f.rhs()));
}

int temporal_depth(const Formula& f) {
  int n = arity(f.op());
  int d = 0;
  if (n >= 1)
    d = temporal_depth(f.lhs());
  if (n == 2)
    d = std::max(d, temporal_depth(f.rhs()));
  bool temporal = is_past(f.op()) || is_future_temporal(f.op());
  return d + (temporal ? 1 : 0);
}

std::vector<Formula> split_conjuncts(const Formula& f) {
  std::vector<Formula> out;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (g.op() == Op::And) {
      stack.push_back(g.rhs());
      stack.push_back(g.lhs());
    } else {
      out.push_back(g);
    }
  }
  return out;
}

Alphabet::Alphabet(const std::vector<std::string>& names) {
  for (const auto& n : names)
    add(n);
}

std::size_t Alphabet::add(const std::string& name) {
  auto it = index_.find(name);
  if (it != index_.end())
    return it->second;
  std::size_t idx = names_.size();
  names_.push_back(name);
  index_.emplace(name, idx);
  return idx;
}

std::optional<std::size_t> Alphabet::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

Formula Spec::conjunction() const {
  std::vector<Formula> fs;
  fs.reserve(conjuncts.size());
  for (const auto& c : conjuncts)
    fs.push_back(c.formula);
  return conj_all(fs);
}

std::vector<std::string> Spec::labels() const {
  std::vector<std::string> out;
  out.reserve(conjuncts.size());
  for (const auto& c : conjuncts)
    out.push_back(c.label);
  return out;
}

Formula Spec::conjunction_of(const std::vector<std::string>& labels) const {
  std::vector<Formula> fs;
  for (const auto& c : conjuncts)
    if (std::find(labels.begin(), labels.end(), c.label) != labels.end())
      fs.push_back(c.formula);
  return conj_all(fs);
}

Formula rename_vars(const Formula& f, const std::map<std::string, std::string>& names) {
  switch (arity(f.op())) {
  case 0:
    if (f.is_var())
      if (auto it = names.find(f.name()); it != names.end())
        return Formula::var(it->second);
    return f;
  case 1: return Formula::unary(f.op(), rename_vars(f.child(), names));
  default: return Formula::binary(f.op(), rename_vars(f.lhs(), names), rename_vars(f.rhs(), names));
  }
}

Spec make_spec(std::string name, const std::vector<Formula>& conjuncts) {
  Spec s;
  s.name = std::move(name);
  for (std::size_t i = 0; i < conjuncts.size(); ++i) {
    s.conjuncts.push_back({"c" + std::to_string(i + 1), conjuncts[i]});
    for (const auto& v : free_vars_ordered(conjuncts[i]))
      s.alphabet.add(v);
  }
  return s;
}

} // namespace ltlfuc

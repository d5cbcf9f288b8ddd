#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ltlfuc {

enum class Op : std::uint8_t {
  Var,
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  Iff,
  // future
  Next,
  WeakNext,
  Eventually,
  Globally,
  Until,
  Release,
  // past
  Yesterday,
  WeakYesterday,
  Once,
  Historically,
  Since,
  Trigger,
};

int arity(Op op);
bool is_past(Op op);
bool is_future_temporal(Op op);
bool is_boolean(Op op);

/// Immutable, shared LTLf formula node.
///
/// Copies are cheap (one reference count). Equality and ordering are
/// structural; the hash is computed once at construction so hash-based
/// containers and equality tests on unequal formulas are O(1) in the
/// common case.
class Formula {
public:
  /// Default-constructed formula is `true`.
  Formula();

  static Formula var(std::string name);
  static Formula top();
  static Formula bottom();
  static Formula unary(Op op, Formula child);
  static Formula binary(Op op, Formula lhs, Formula rhs);

  Op op() const noexcept;
  /// Variable name; empty for non-variables.
  const std::string& name() const noexcept;
  /// Single child of a unary node, or left child of a binary node.
  const Formula& child() const;
  const Formula& lhs() const;
  const Formula& rhs() const;

  std::size_t hash() const noexcept;
  std::size_t size() const noexcept;

  bool is_var() const noexcept { return op() == Op::Var; }
  bool is_const() const noexcept { return op() == Op::True || op() == Op::False; }
  /// Var or negated Var.
  bool is_literal() const noexcept;

  /// Three-way structural comparison: kind, then name, then children.
  friend int compare(const Formula& a, const Formula& b);
  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

  /// Identity of the shared node (for memo tables keyed on sharing).
  const void* id() const noexcept { return node_.get(); }

private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

template <typename V>
using FormulaMap = std::unordered_map<Formula, V, FormulaHash>;

// Constructors. None of these simplify: the tree you build is the tree you get.
Formula var(std::string name);
Formula top();
Formula bottom();
Formula neg(Formula f);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula next(Formula f);
Formula wnext(Formula f);
Formula eventually(Formula f);
Formula globally(Formula f);
Formula until(Formula a, Formula b);
Formula release(Formula a, Formula b);
Formula yesterday(Formula f);
Formula wyesterday(Formula f);
Formula once(Formula f);
Formula historically(Formula f);
Formula since(Formula a, Formula b);
Formula trigger(Formula a, Formula b);

/// Right-nested conjunction; `true` for an empty list.
Formula conj_all(const std::vector<Formula>& fs);
/// Right-nested disjunction; `false` for an empty list.
Formula disj_all(const std::vector<Formula>& fs);

/// Fully parenthesized text; `parse(print(f)) == f`.
std::string print(const Formula& f);

/// Variable names in first-occurrence (left-to-right) order.
std::vector<std::string> free_vars_ordered(const Formula& f);
std::set<std::string> free_vars(const Formula& f);

bool has_past(const Formula& f);
/// Maximum nesting of temporal operators.
int temporal_depth(const Formula& f);

/// Flattens nested top-level conjunctions, left to right.
std::vector<Formula> split_conjuncts(const Formula& f);

/// Variable names with stable indices in first-occurrence order.
class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(const std::vector<std::string>& names);

  /// Adds `name` if absent; returns its index either way.
  std::size_t add(const std::string& name);
  std::optional<std::size_t> index_of(const std::string& name) const;
  bool contains(const std::string& name) const { return index_of(name).has_value(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::size_t size() const noexcept { return names_.size(); }

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// A set of conjunct labels, e.g. an unsatisfiable core.
using LabelSet = std::set<std::string>;

struct Conjunct {
  std::string label;
  Formula formula;
};

/// A named set of conjuncts, read as their conjunction.
struct Spec {
  std::string name;
  std::vector<Conjunct> conjuncts;
  Alphabet alphabet;

  Formula conjunction() const;
  std::vector<std::string> labels() const;
  /// Conjunction of the conjuncts whose labels are listed.
  Formula conjunction_of(const std::vector<std::string>& labels) const;
};

/// Renames variables by `names`; unlisted variables are kept.
Formula rename_vars(const Formula& f, const std::map<std::string, std::string>& names);

/// Builds a spec labelled c1..cN, with the alphabet in first-occurrence order.
Spec make_spec(std::string name, const std::vector<Formula>& conjuncts);

} // namespace ltlfuc

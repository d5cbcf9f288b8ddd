#pragma once

#include "ltlfuc/formula.hpp"

#include <string>
#include <vector>

namespace ltlfuc {

/// Same node set as Formula, read over infinite traces. Carries `end`.
using LtlFormula = Formula;

Formula end_var();

/// Negation normal form over the full operator set. `->` and `<->` are
/// expanded, negations sit on variables only, and boolean constants are
/// folded. Temporal operators are kept (X and N stay distinct).
Formula to_nnf(const Formula& f);

/// Boolean constant folding only; no other rewriting.
Formula fold_constants(const Formula& f);

/// LTLf to LTL translation with the `end` marker. Past operators pass
/// through with their children translated.
LtlFormula ftol(const Formula& f);

/// `!end & F end & G(end -> X end) & ftol(f)`, right-nested in that order.
///
/// The leading `!end` keeps `end` from holding at position 0, which would
/// otherwise stand for an empty trace.
LtlFormula ltlf_to_ltl(const Formula& f);

/// Inverse of ftol on its image. Throws std::invalid_argument when `end`
/// occurs outside the shapes that ftol produces.
Formula ltl_to_ltlf(const LtlFormula& f);

/// The three axioms of ltlf_to_ltl, in order.
std::vector<LtlFormula> end_axioms();

struct PastRemovalResult {
  Formula future_formula;
  std::vector<Formula> monitors;
  std::vector<std::string> fresh_vars;

  /// future_formula & monitors..., right-nested.
  Formula combined() const;
};

/// Replaces every past subformula by a fresh `_past_<n>` variable and
/// returns future-only monitors that pin down its value. Fresh variables are
/// shared between structurally equal past subformulas.
///
/// For Y g with g' the translation of g and p fresh:
///   result p, monitors { !p, G((X p -> g') & (g' -> N p)) }
/// For g S h, with u = h' | (g' & p):
///   result u, monitors { !p, G((X p -> u) & (u -> N p)) }
/// Z, O, H and T are first rewritten into Y and S.
PastRemovalResult remove_past(const Formula& f);

/// Rewrites Z, O, H and T into Y, S and negation.
Formula normalize_past(const Formula& f);

/// neXt normal form. Input must be past-free and in NNF. Literals, constants
/// and X/N-rooted subformulas are atoms; the result is a boolean combination
/// of atoms.
Formula xnf(const Formula& f);

} // namespace ltlfuc

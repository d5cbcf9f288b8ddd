#pragma once

#include "ltlfuc/formula.hpp"
#include "ltlfuc/translations.hpp"

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace ltlfuc {

/// Rewrites an LTL formula (infinite-trace reading, past allowed) into the
/// core operators: constants, variables, !, &, |, X, U, Y, S. On infinite
/// traces N coincides with X.
LtlFormula normalize_core(const LtlFormula& f);

/// Boolean-level symbolic tableau of an LTL formula with past.
///
/// State variables are the formula's propositions plus one elementary
/// variable per X g, X(g U h), Y g and Y(g S h) of the core form.
/// Elementary variables are named with a leading '@', which the parser never
/// accepts, so they cannot collide with user propositions. The value of a
/// variable in the next state is written as the name followed by '\''.
struct Tableau {
  std::vector<std::string> vars;
  std::unordered_map<std::string, std::size_t> index;
  /// True for propositions of the input formula, false for elementary variables.
  std::vector<bool> is_atom;
  /// Elementary variable -> the X- or Y-rooted formula it stands for.
  std::map<std::string, Formula> meaning;

  /// Conjuncts over current-state variables.
  std::vector<Formula> init;
  /// Conjuncts over current and next-state variables.
  std::vector<Formula> trans;
  /// Generalized Buchi constraints over current-state variables, one per until.
  std::vector<Formula> fairness;

  std::size_t num_vars() const noexcept { return vars.size(); }
  std::vector<std::string> atoms() const;
};

std::string primed(const std::string& name);
bool is_primed(const std::string& name);
std::string unprimed(const std::string& name);

/// Renames every variable of a boolean formula to its next-state copy.
Formula prime(const Formula& boolean);

/// `leading` variables are placed first in the order (activation variables
/// go here). `rigid` variables keep their value along every transition.
Tableau build_tableau(const LtlFormula& f, const std::vector<std::string>& leading = {},
                      const std::vector<std::string>& rigid = {});

} // namespace ltlfuc

#pragma once

#include "ltlfuc/formula.hpp"
#include "ltlfuc/trace.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ltlfuc {

struct ActivationBinding {
  std::string var;   ///< `_act_<i>`, 1-based
  std::string label; ///< conjunct label it guards
};

struct ActivatedSpec {
  /// (_act_1 -> phi_1) & ... & (_act_n -> phi_n), right-nested; `true` if empty.
  Formula psi;
  std::vector<ActivationBinding> bindings;
  /// Activation variables first, then the spec alphabet.
  Alphabet alphabet_ext;

  std::vector<std::string> activation_vars() const;
  /// Conjunction of all activation variables.
  Formula all_active() const;
};

std::string activation_name(std::size_t one_based_index);

/// Throws std::invalid_argument if a spec variable uses a reserved name.
ActivatedSpec activate(const Spec& s);

/// Labels whose activation variable appears in `vars`; other names are ignored.
LabelSet restrict_core(const ActivatedSpec& a, const std::set<std::string>& vars);

enum class Status { Sat, Unsat, Unknown, ReducedToFalse };

std::string to_string(Status s);

struct UcResult {
  Status status = Status::Unknown;
  /// Present iff status is Unsat.
  std::optional<LabelSet> core;
  std::optional<Trace> witness;
  double elapsed = 0.0;
  std::string algorithm;
  /// Why the result is Unknown, if it is.
  std::string reason;
  /// Deepest bound or frame level reached, for the iterative engines.
  std::optional<int> k_reached;
};

} // namespace ltlfuc

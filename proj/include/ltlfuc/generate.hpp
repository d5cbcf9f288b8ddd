#pragma once

#include "ltlfuc/formula.hpp"

#include <random>
#include <string>
#include <vector>

namespace ltlfuc {

struct GenOptions {
  std::vector<std::string> vars{"a", "b", "c"};
  int temporal_depth = 2;
  int boolean_depth = 2;
  bool future = true;
  bool past = true;
  /// Allow -> and <-> in generated formulas.
  bool derived_connectives = true;
};

Formula random_formula(std::mt19937_64& rng, const GenOptions& opts);

/// Between 1 and max_conjuncts conjuncts, each drawn with random_formula.
/// No conjunct is itself a conjunction, so the spec survives a print/parse
/// round trip.
Spec random_spec(std::mt19937_64& rng, std::size_t max_conjuncts, const GenOptions& opts);

} // namespace ltlfuc

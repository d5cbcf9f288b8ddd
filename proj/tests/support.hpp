#pragma once

#include "ltlfuc/formula.hpp"
#include "ltlfuc/generate.hpp"
#include "ltlfuc/trace.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ltlfuc::testing {

using ltlfuc::GenOptions;
using ltlfuc::random_formula;
using ltlfuc::random_spec;

Trace random_trace(std::mt19937_64& rng, const std::vector<std::string>& vars, std::size_t len);

/// Every trace over `vars` of exactly length `len`.
std::vector<Trace> all_traces(const std::vector<std::string>& vars, std::size_t len);

/// Shortest model of length <= max_len found by enumeration, if any.
std::optional<Trace> enumerate_model(const Formula& f, const std::vector<std::string>& vars,
                                     std::size_t max_len);

/// Brute-force propositional satisfiability of a DIMACS-style clause list.
bool truth_table_sat(int num_vars, const std::vector<std::vector<int>>& clauses);

/// Directory holding test fixtures.
std::string fixture_dir();

} // namespace ltlfuc::testing

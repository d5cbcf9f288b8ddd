#include "support.hpp"

#include <cstdlib>

namespace ltlfuc::testing {

Trace random_trace(std::mt19937_64& rng, const std::vector<std::string>& vars, std::size_t len) {
  Trace t;
  t.vars = vars;
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<bool> row;
    for (std::size_t k = 0; k < vars.size(); ++k)
      row.push_back(coin(rng));
    t.states.push_back(std::move(row));
  }
  return t;
}

std::vector<Trace> all_traces(const std::vector<std::string>& vars, std::size_t len) {
  const std::size_t bits = vars.size() * len;
  std::vector<Trace> out;
  for (std::size_t code = 0; code < (std::size_t{1} << bits); ++code) {
    Trace t;
    t.vars = vars;
    for (std::size_t i = 0; i < len; ++i) {
      std::vector<bool> row;
      for (std::size_t k = 0; k < vars.size(); ++k)
        row.push_back(code >> (i * vars.size() + k) & 1U);
      t.states.push_back(std::move(row));
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::optional<Trace> enumerate_model(const Formula& f, const std::vector<std::string>& vars,
                                     std::size_t max_len) {
  for (std::size_t len = 1; len <= max_len; ++len)
    for (auto& t : all_traces(vars, len))
      if (holds(f, t, 0))
        return t;
  return std::nullopt;
}

bool truth_table_sat(int num_vars, const std::vector<std::vector<int>>& clauses) {
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << num_vars); ++m) {
    bool all = true;
    for (const auto& c : clauses) {
      bool any = false;
      for (int lit : c) {
        bool v = m >> (std::abs(lit) - 1) & 1U;
        if ((lit > 0) == v) {
          any = true;
          break;
        }
      }
      if (!any) {
        all = false;
        break;
      }
    }
    if (all)
      return true;
  }
  return false;
}

std::string fixture_dir() { return LTLFUC_FIXTURE_DIR; }

} // namespace ltlfuc::testing

#pragma once

#include "ltlfuc/formula.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace ltlfuc {

/// A finite, nonempty sequence of assignments over a fixed list of variables.
struct Trace {
  std::vector<std::string> vars;
  std::vector<std::vector<bool>> states;

  std::size_t length() const noexcept { return states.size(); }
  /// Throws std::out_of_range if `name` is not one of `vars`.
  bool value(std::size_t pos, const std::string& name) const;
  /// Same states, restricted to `keep` (variables absent from the trace are false).
  Trace project(const std::vector<std::string>& keep) const;
};

/// Truth value of `f` at every position of `t`, in O(|f| * |t|).
std::vector<bool> eval_all(const Formula& f, const Trace& t);

/// `t, pos |= f`.
bool holds(const Formula& f, const Trace& t, std::size_t pos = 0);

/// One state per line, `a=0;b=1`. Blank lines and `#` comments are ignored.
Trace parse_trace(std::string_view text);
std::string format_trace(const Trace& t);

} // namespace ltlfuc

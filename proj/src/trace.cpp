#include "ltlfuc/trace.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ltlfuc {

bool Trace::value(std::size_t pos, const std::string& name) const {
  auto it = std::find(vars.begin(), vars.end(), name);
  if (it == vars.end())
    throw std::out_of_range("variable '" + name + "' not in trace");
  return states.at(pos)[static_cast<std::size_t>(it - vars.begin())];
}

Trace Trace::project(const std::vector<std::string>& keep) const {
  Trace out;
  out.vars = keep;
  std::vector<long> idx;
  for (const auto& k : keep) {
    auto it = std::find(vars.begin(), vars.end(), k);
    idx.push_back(it == vars.end() ? -1 : static_cast<long>(it - vars.begin()));
  }
  for (const auto& s : states) {
    std::vector<bool> row;
    for (long i : idx)
      row.push_back(i >= 0 && s[static_cast<std::size_t>(i)]);
    out.states.push_back(std::move(row));
  }
  return out;
}

namespace {

using Row = std::vector<bool>;

Row eval_rec(const Formula& f, const Trace& t, FormulaMap<Row>& memo) {
  if (auto it = memo.find(f); it != memo.end())
    return it->second;
  const std::size_t n = t.length();
  Row r(n, false);
  switch (f.op()) {
  case Op::True: std::fill(r.begin(), r.end(), true); break;
  case Op::False: break;
  case Op::Var: {
    auto it = std::find(t.vars.begin(), t.vars.end(), f.name());
    if (it == t.vars.end())
      throw std::out_of_range("variable '" + f.name() + "' not in trace");
    std::size_t k = static_cast<std::size_t>(it - t.vars.begin());
    for (std::size_t i = 0; i < n; ++i)
      r[i] = t.states[i][k];
    break;
  }
  case Op::Not: {
    Row a = eval_rec(f.child(), t, memo);
    for (std::size_t i = 0; i < n; ++i)
      r[i] = !a[i];
    break;
  }
  case Op::And:
  case Op::Or:
  case Op::Implies:
  case Op::Iff: {
    Row a = eval_rec(f.lhs(), t, memo);
    Row b = eval_rec(f.rhs(), t, memo);
    for (std::size_t i = 0; i < n; ++i) {
      switch (f.op()) {
      case Op::And: r[i] = a[i] && b[i]; break;
      case Op::Or: r[i] = a[i] || b[i]; break;
      case Op::Implies: r[i] = !a[i] || b[i]; break;
      default: r[i] = a[i] == b[i]; break;
      }
    }
    break;
  }
  case Op::Next: {
    Row a = eval_rec(f.child(), t, memo);
    for (std::size_t i = 0; i + 1 < n; ++i)
      r[i] = a[i + 1];
    break;
  }
  case Op::WeakNext: {
    Row a = eval_rec(f.child(), t, memo);
    for (std::size_t i = 0; i < n; ++i)
      r[i] = i + 1 >= n || a[i + 1];
    break;
  }
  case Op::Eventually: {
    Row a = eval_rec(f.child(), t, memo);
    bool acc = false;
    for (std::size_t i = n; i-- > 0;)
      r[i] = acc = acc || a[i];
    break;
  }
  case Op::Globally: {
    Row a = eval_rec(f.child(), t, memo);
    bool acc = true;
    for (std::size_t i = n; i-- > 0;)
      r[i] = acc = acc && a[i];
    break;
  }
  case Op::Until: {
    Row a = eval_rec(f.lhs(), t, memo);
    Row b = eval_rec(f.rhs(), t, memo);
    bool acc = false;
    for (std::size_t i = n; i-- > 0;)
      r[i] = acc = b[i] || (a[i] && acc);
    break;
  }
  case Op::Release: {
    Row a = eval_rec(f.lhs(), t, memo);
    Row b = eval_rec(f.rhs(), t, memo);
    bool acc = true;
    for (std::size_t i = n; i-- > 0;)
      r[i] = acc = b[i] && (a[i] || acc);
    break;
  }
  case Op::Yesterday: {
    Row a = eval_rec(f.child(), t, memo);
    for (std::size_t i = 1; i < n; ++i)
      r[i] = a[i - 1];
    break;
  }
  case Op::WeakYesterday: {
    Row a = eval_rec(f.child(), t, memo);
    for (std::size_t i = 0; i < n; ++i)
      r[i] = i == 0 || a[i - 1];
    break;
  }
  case Op::Once: {
    Row a = eval_rec(f.child(), t, memo);
    bool acc = false;
    for (std::size_t i = 0; i < n; ++i)
      r[i] = acc = acc || a[i];
    break;
  }
  case Op::Historically: {
    Row a = eval_rec(f.child(), t, memo);
    bool acc = true;
    for (std::size_t i = 0; i < n; ++i)
      r[i] = acc = acc && a[i];
    break;
  }
  case Op::Since: {
    Row a = eval_rec(f.lhs(), t, memo);
    Row b = eval_rec(f.rhs(), t, memo);
    bool acc = false;
    for (std::size_t i = 0; i < n; ++i)
      r[i] = acc = b[i] || (a[i] && acc);
    break;
  }
  case Op::Trigger: {
    Row a = eval_rec(f.lhs(), t, memo);
    Row b = eval_rec(f.rhs(), t, memo);
    bool acc = true;
    for (std::size_t i = 0; i < n; ++i)
      r[i] = acc = b[i] && (a[i] || acc);
    break;
  }
  }
  memo.emplace(f, r);
  return r;
}

} // namespace

std::vector<bool> eval_all(const Formula& f, const Trace& t) {
  FormulaMap<Row> memo;
  return eval_rec(f, t, memo);
}

bool holds(const Formula& f, const Trace& t, std::size_t pos) {
  if (pos >= t.length())
    throw std::out_of_range("position beyond end of trace");
  return eval_all(f, t)[pos];
}

Trace parse_trace(std::string_view text) {
  Trace t;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos)
      line.erase(h);
    line.erase(std::remove_if(line.begin(), line.end(), ::isspace), line.end());
    if (line.empty())
      continue;
    std::vector<std::string> names;
    std::vector<bool> vals;
    std::istringstream items(line);
    std::string item;
    while (std::getline(items, item, ';')) {
      if (item.empty())
        continue;
      auto eq = item.find('=');
      if (eq == std::string::npos || eq + 2 != item.size() ||
          (item[eq + 1] != '0' && item[eq + 1] != '1'))
        throw std::invalid_argument("line " + std::to_string(lineno) + ": expected name=0|1");
      names.push_back(item.substr(0, eq));
      vals.push_back(item[eq + 1] == '1');
    }
    if (t.states.empty()) {
      t.vars = names;
    } else if (names != t.vars) {
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": variables differ from the first state");
    }
    t.states.push_back(std::move(vals));
  }
  if (t.states.empty())
    throw std::invalid_argument("trace is empty");
  return t;
}

std::string format_trace(const Trace& t) {
  std::string out;
  for (const auto& s : t.states) {
    for (std::size_t k = 0; k < t.vars.size(); ++k) {
      if (k)
        out += ';';
      out += t.vars[k] + '=' + (s[k] ? '1' : '0');
    }
    out += '\n';
  }
  return out;
}

} // namespace ltlfuc

#include "ltlfuc/activation.hpp"

#include "ltlfuc/parser.hpp"

#include <stdexcept>

namespace ltlfuc {

std::vector<std::string> ActivatedSpec::activation_vars() const {
  std::vector<std::string> out;
  for (const auto& b : bindings)
    out.push_back(b.var);
  return out;
}

Formula ActivatedSpec::all_active() const {
  std::vector<Formula> fs;
  for (const auto& b : bindings)
    fs.push_back(var(b.var));
  return conj_all(fs);
}

std::string activation_name(std::size_t one_based_index) {
  return std::string(kActivationPrefix) + std::to_string(one_based_index);
}

ActivatedSpec activate(const Spec& s) {
  ActivatedSpec a;
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < s.conjuncts.size(); ++i) {
    for (const auto& v : free_vars_ordered(s.conjuncts[i].formula))
      if (is_reserved_name(v))
        throw std::invalid_argument("conjunct " + s.conjuncts[i].label +
                                    " uses reserved name '" + v + "'");
    std::string act = activation_name(i + 1);
    a.bindings.push_back({act, s.conjuncts[i].label});
    a.alphabet_ext.add(act);
    parts.push_back(implies(var(act), s.conjuncts[i].formula));
  }
  for (const auto& v : s.alphabet.names())
    a.alphabet_ext.add(v);
  a.psi = conj_all(parts);
  return a;
}

LabelSet restrict_core(const ActivatedSpec& a, const std::set<std::string>& vars) {
  LabelSet out;
  for (const auto& b : a.bindings)
    if (vars.count(b.var))
      out.insert(b.label);
  return out;
}

std::string to_string(Status s) {
  switch (s) {
  case Status::Sat: return "SAT";
  case Status::Unsat: return "UNSAT";
  case Status::Unknown: return "UNKNOWN";
  case Status::ReducedToFalse: return "REDUCED_TO_FALSE";
  }
  return "?";
}

} // namespace ltlfuc

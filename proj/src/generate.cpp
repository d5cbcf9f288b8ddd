#include "ltlfuc/generate.hpp"

namespace ltlfuc {

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Formula gen(std::mt19937_64& rng, const GenOptions& o, int tdepth, int bdepth) {
  std::vector<int> kinds{0, 0}; // leaves are likely
  if (bdepth > 0)
    kinds.insert(kinds.end(), {1, 2, 2});
  if (tdepth > 0 && (o.future || o.past))
    kinds.insert(kinds.end(), {3, 3, 3, 4, 4});
  int kind = kinds[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(kinds.size()) - 1))];

  switch (kind) {
  case 0: {
    int r = pick(rng, 0, 19);
    if (r == 0)
      return top();
    if (r == 1)
      return bottom();
    return var(o.vars[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(o.vars.size()) - 1))]);
  }
  case 1: return neg(gen(rng, o, tdepth, bdepth - 1));
  case 2: {
    static const Op bin[] = {Op::And, Op::Or, Op::And, Op::Or, Op::Implies, Op::Iff};
    int hi = o.derived_connectives ? 5 : 3;
    Op op = bin[pick(rng, 0, hi)];
    return Formula::binary(op, gen(rng, o, tdepth, bdepth - 1), gen(rng, o, tdepth, bdepth - 1));
  }
  case 3: {
    std::vector<Op> ops;
    if (o.future)
      ops.insert(ops.end(), {Op::Next, Op::WeakNext, Op::Eventually, Op::Globally});
    if (o.past)
      ops.insert(ops.end(), {Op::Yesterday, Op::WeakYesterday, Op::Once, Op::Historically});
    Op op = ops[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(ops.size()) - 1))];
    return Formula::unary(op, gen(rng, o, tdepth - 1, bdepth));
  }
  default: {
    std::vector<Op> ops;
    if (o.future)
      ops.insert(ops.end(), {Op::Until, Op::Release});
    if (o.past)
      ops.insert(ops.end(), {Op::Since, Op::Trigger});
    Op op = ops[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(ops.size()) - 1))];
    return Formula::binary(op, gen(rng, o, tdepth - 1, bdepth), gen(rng, o, tdepth - 1, bdepth));
  }
  }
}

} // namespace

Formula random_formula(std::mt19937_64& rng, const GenOptions& opts) {
  return gen(rng, opts, opts.temporal_depth, opts.boolean_depth);
}

Spec random_spec(std::mt19937_64& rng, std::size_t max_conjuncts, const GenOptions& opts) {
  std::size_t n = static_cast<std::size_t>(pick(rng, 1, static_cast<int>(max_conjuncts)));
  std::vector<Formula> fs;
  while (fs.size() < n) {
    Formula f = random_formula(rng, opts);
    // A top-level conjunction would be split apart on re-parse; keep specs flat.
    if (f.op() != Op::And)
      fs.push_back(f);
  }
  return make_spec("random", fs);
}

} // namespace ltlfuc

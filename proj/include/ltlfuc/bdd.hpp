#pragma once

#include "ltlfuc/deadline.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace ltlfuc {

class BddBudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class BddManager;

/// Handle to a node of a BddManager. Equal handles mean equal functions.
class Bdd {
public:
  Bdd() = default;

  bool is_false() const noexcept { return id_ == 0; }
  bool is_true() const noexcept { return id_ == 1; }
  bool is_const() const noexcept { return id_ <= 1; }
  std::uint32_t id() const noexcept { return id_; }
  BddManager* manager() const noexcept { return mgr_; }

  friend bool operator==(const Bdd& a, const Bdd& b) { return a.id_ == b.id_ && a.mgr_ == b.mgr_; }
  friend bool operator!=(const Bdd& a, const Bdd& b) { return !(a == b); }

  Bdd operator!() const;
  Bdd operator&(const Bdd& o) const;
  Bdd operator|(const Bdd& o) const;
  Bdd operator^(const Bdd& o) const;
  Bdd& operator&=(const Bdd& o) { return *this = *this & o; }
  Bdd& operator|=(const Bdd& o) { return *this = *this | o; }

private:
  friend class BddManager;
  Bdd(BddManager* m, std::uint32_t id) : mgr_(m), id_(id) {}
  BddManager* mgr_ = nullptr;
  std::uint32_t id_ = 0;
};

/// Partial assignment: variable index -> value.
using BddCube = std::map<unsigned, bool>;

/// Reduced ordered BDDs with a fixed variable order: variable i sits at level i.
/// There is no garbage collection; the node budget bounds memory instead.
class BddManager {
public:
  explicit BddManager(std::size_t node_budget = 5'000'000, Deadline deadline = {});
  BddManager(const BddManager&) = delete;
  BddManager& operator=(const BddManager&) = delete;

  Bdd constant(bool value);
  Bdd bdd_true() { return constant(true); }
  Bdd bdd_false() { return constant(false); }
  Bdd var(unsigned index);
  Bdd nvar(unsigned index);

  Bdd apply_not(const Bdd& f);
  Bdd apply_and(const Bdd& f, const Bdd& g);
  Bdd apply_or(const Bdd& f, const Bdd& g);
  Bdd apply_xor(const Bdd& f, const Bdd& g);
  Bdd apply_iff(const Bdd& f, const Bdd& g);
  Bdd implies(const Bdd& f, const Bdd& g) { return apply_or(apply_not(f), g); }
  Bdd ite(const Bdd& f, const Bdd& g, const Bdd& h);

  /// Conjunction of the listed variables, for use as a quantification set.
  Bdd cube(const std::vector<unsigned>& vars);
  Bdd exists(const std::vector<unsigned>& vars, const Bdd& f);
  Bdd exists_cube(const Bdd& var_cube, const Bdd& f);
  Bdd forall(const std::vector<unsigned>& vars, const Bdd& f);
  /// exists vars. (f & g), without building f & g in full.
  Bdd and_exists(const Bdd& f, const Bdd& g, const Bdd& var_cube);
  /// Substitutes variable map[i] for variable i wherever map[i] >= 0.
  Bdd rename(const Bdd& f, const std::vector<int>& map);

  /// Variables f depends on, ascending.
  std::vector<unsigned> support(const Bdd& f);
  bool eval(const Bdd& f, const std::vector<bool>& assignment);

  /// Disjoint cubes covering f after quantifying out every variable not in
  /// `restrict_to`. Each cube mentions only variables of `restrict_to`.
  std::vector<BddCube> all_sat_cubes(const Bdd& f, const std::vector<unsigned>& restrict_to);
  /// One satisfying cube, taking the low branch whenever it leads to true.
  BddCube pick_one_cube(const Bdd& f);
  /// A satisfying cube with the fewest variables set to true; variables left
  /// out of the cube may be taken as false.
  BddCube min_true_cube(const Bdd& f);
  /// Number of satisfying assignments over variables 0..num_vars-1.
  double sat_count(const Bdd& f, unsigned num_vars);

  std::size_t node_count() const noexcept { return nodes_.size(); }
  /// Nodes reachable from f, terminals included.
  std::size_t dag_size(const Bdd& f);
  std::string to_dot(const Bdd& f, const std::vector<std::string>& names = {});

  void set_deadline(Deadline d) { deadline_ = d; }
  void check_deadline() const { deadline_.check(); }

private:
  struct Node {
    std::uint32_t var;
    std::uint32_t lo;
    std::uint32_t hi;
  };
  struct Key {
    std::uint64_t a, b;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return std::hash<std::uint64_t>{}(k.a * 0x9e3779b97f4a7c15ULL ^ k.b);
    }
  };
  enum CacheOp : std::uint64_t { kIte = 1, kExists = 2, kAndExists = 3 };

  static constexpr std::uint32_t kTerminalVar = 0xffffffffU;

  void check_same(const Bdd& f) const;
  Bdd wrap(std::uint32_t id) { return Bdd(this, id); }
  std::uint32_t mk(std::uint32_t var, std::uint32_t lo, std::uint32_t hi);
  std::uint32_t ite_rec(std::uint32_t f, std::uint32_t g, std::uint32_t h);
  std::uint32_t exists_rec(std::uint32_t f, std::uint32_t cube);
  std::uint32_t and_exists_rec(std::uint32_t f, std::uint32_t g, std::uint32_t cube);
  std::uint32_t top_var(std::uint32_t f) const { return nodes_[f].var; }
  std::uint32_t cofactor(std::uint32_t f, std::uint32_t var, bool hi) const;
  void tick();

  std::vector<Node> nodes_;
  std::unordered_map<Key, std::uint32_t, KeyHash> unique_;
  std::unordered_map<Key, std::uint32_t, KeyHash> ite_cache_;
  std::unordered_map<Key, std::uint32_t, KeyHash> quant_cache_;
  std::size_t budget_;
  Deadline deadline_;
  std::uint64_t ticks_ = 0;
};

} // namespace ltlfuc

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace ltlf {

/// Reference to a node of one BddManager. 0 and 1 are the terminals.
using BddRef = std::uint32_t;

/// Reduced ordered BDD store with hash-consing. Variable i is tested before
/// variable j whenever i < j.
class BddManager {
 public:
  static constexpr BddRef kFalse = 0;
  static constexpr BddRef kTrue = 1;
  static constexpr std::size_t kDefaultNodeCap = std::size_t{1} << 20;

  explicit BddManager(unsigned num_vars, std::size_t node_cap = kDefaultNodeCap);

  unsigned num_vars() const noexcept { return num_vars_; }
  std::size_t node_cap() const noexcept { return node_cap_; }
  /// Nodes in the store, terminals included.
  std::size_t size() const noexcept { return nodes_.size(); }

  BddRef zero() const noexcept { return kFalse; }
  BddRef one() const noexcept { return kTrue; }
  BddRef constant(bool v) const noexcept { return v ? kTrue : kFalse; }
  BddRef var(unsigned v);
  BddRef nvar(unsigned v);

  bool is_terminal(BddRef f) const noexcept { return f <= kTrue; }
  /// Variable tested at f; num_vars() for terminals.
  unsigned var_of(BddRef f) const noexcept { return nodes_[f].var; }
  BddRef low(BddRef f) const noexcept { return nodes_[f].lo; }
  BddRef high(BddRef f) const noexcept { return nodes_[f].hi; }

  /// The unique node (v, lo, hi), or lo itself when lo == hi.
  BddRef make(unsigned v, BddRef lo, BddRef hi);

  BddRef ite(BddRef f, BddRef g, BddRef h);
  BddRef negate(BddRef f) { return ite(f, kFalse, kTrue); }
  BddRef conj(BddRef f, BddRef g) { return ite(f, g, kFalse); }
  BddRef disj(BddRef f, BddRef g) { return ite(f, kTrue, g); }
  BddRef exclusive_or(BddRef f, BddRef g) { return ite(f, negate(g), g); }
  BddRef implies(BddRef f, BddRef g) { return ite(f, g, kTrue); }
  BddRef equiv(BddRef f, BddRef g) { return ite(f, g, negate(g)); }

  BddRef restrict(BddRef f, unsigned v, bool value);
  /// f with variable v replaced by g.
  BddRef compose(BddRef f, unsigned v, BddRef g);
  /// Simultaneous substitution; entries equal to kNoSubstitution keep the
  /// variable.
  static constexpr BddRef kNoSubstitution = ~BddRef{0};
  BddRef vector_compose(BddRef f, const std::vector<BddRef>& substitution);
  /// Existential quantification of the variables flagged in `vars`.
  BddRef exists(BddRef f, const std::vector<bool>& vars);
  /// exists(conj(f, g), vars) without building the conjunction.
  BddRef and_exists(BddRef f, BddRef g, const std::vector<bool>& vars);
  /// Renames variable v to map[v]; map must be strictly increasing on the
  /// support of f.
  BddRef rename_monotone(BddRef f, const std::vector<unsigned>& map);

  bool eval(BddRef f, const std::vector<bool>& assignment) const;
  /// Variables occurring in f, sorted.
  std::vector<unsigned> support(BddRef f) const;
  /// Nonterminal nodes reachable from the given roots.
  std::size_t count_nodes(const std::vector<BddRef>& roots) const;
  /// True when every reachable node is ordered, reduced and unique.
  bool check_invariants(BddRef f) const;

  /// Copies the nodes reachable from `keep` into a fresh store, drops
  /// everything else and the operation caches, and returns the new
  /// references in the same order.
  std::vector<BddRef> collect_garbage(const std::vector<BddRef>& keep);

  /// Nodes labelled by variable index (or `names` when given), dashed low
  /// edges.
  std::string to_dot(const std::vector<BddRef>& roots,
                     const std::vector<std::string>& names = {}) const;

 private:
  struct Node {
    unsigned var;
    BddRef lo, hi;
  };
  struct CacheEntry {
    BddRef f = 0, g = 0, h = 0, result = 0;
    std::uint32_t generation = 0;
  };

  static std::uint64_t key(unsigned v, BddRef lo, BddRef hi) {
    return (std::uint64_t{v} << 48) ^ (std::uint64_t{lo} << 24) ^ hi;
  }
  unsigned top(BddRef f) const noexcept { return nodes_[f].var; }
  BddRef cofactor(BddRef f, unsigned v, bool value) const noexcept {
    if (nodes_[f].var != v) return f;
    return value ? nodes_[f].hi : nodes_[f].lo;
  }

  unsigned num_vars_;
  std::size_t node_cap_;
  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, BddRef> unique_;
  std::vector<CacheEntry> cache_;
  std::uint32_t generation_ = 1;
};

}  // namespace ltlf

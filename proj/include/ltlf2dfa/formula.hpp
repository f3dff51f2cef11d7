#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ltlf {

/// Node kinds shared by the future (LTLf) and past (PLTLf) logics.
enum class Op : std::uint8_t {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Next,      // X
  WeakNext,  // N
  Until,     // U
  Release,   // R
  Yesterday, // Y
  Since,     // S
};

enum class Logic : std::uint8_t { Future, Past };

int arity(Op op) noexcept;
bool allowed_in(Op op, Logic logic) noexcept;
std::string_view op_symbol(Op op) noexcept;

/// Hash-consed formula node. Owned by a FormulaStore and never mutated.
class FormulaNode {
 public:
  Op op() const noexcept { return op_; }
  const std::string& name() const noexcept { return name_; }
  const FormulaNode* left() const noexcept { return left_; }
  const FormulaNode* right() const noexcept { return right_; }
  std::size_t hash() const noexcept { return hash_; }
  int depth() const noexcept { return depth_; }
  /// Creation index inside the owning store; gives a deterministic order.
  std::size_t id() const noexcept { return id_; }

 private:
  friend class FormulaStore;
  Op op_ = Op::True;
  std::string name_;
  const FormulaNode* left_ = nullptr;
  const FormulaNode* right_ = nullptr;
  std::size_t hash_ = 0;
  int depth_ = 0;
  std::size_t id_ = 0;
};

/// Typed handle to an interned formula. Two handles from the same store are
/// equal iff the formulas are structurally identical.
template <Logic L>
class Formula {
 public:
  static constexpr Logic logic = L;

  Formula() = default;
  explicit Formula(const FormulaNode* node) : node_(node) {}

  const FormulaNode* node() const noexcept { return node_; }
  explicit operator bool() const noexcept { return node_ != nullptr; }

  Op op() const noexcept { return node_->op(); }
  int arity() const noexcept { return ltlf::arity(op()); }
  const std::string& atom_name() const noexcept { return node_->name(); }
  int depth() const noexcept { return node_->depth(); }

  /// Only child of a unary node, or left child of a binary node.
  Formula child() const { return Formula(node_->left()); }
  Formula lhs() const { return Formula(node_->left()); }
  Formula rhs() const { return Formula(node_->right()); }

  bool is_atomic() const noexcept {
    return op() == Op::Atom || op() == Op::True || op() == Op::False;
  }

  friend bool operator==(Formula a, Formula b) noexcept { return a.node_ == b.node_; }
  friend bool operator!=(Formula a, Formula b) noexcept { return a.node_ != b.node_; }

 private:
  const FormulaNode* node_ = nullptr;
};

using LtlfFormula = Formula<Logic::Future>;
using PltlfFormula = Formula<Logic::Past>;

/// Interning store for formula nodes. One store per construction context;
/// formulas are moved between stores by re-interning (see transfer()).
class FormulaStore {
 public:
  FormulaStore() = default;
  FormulaStore(const FormulaStore&) = delete;
  FormulaStore& operator=(const FormulaStore&) = delete;

  template <Logic L>
  Formula<L> constant(bool value) {
    return Formula<L>(intern(value ? Op::True : Op::False, {}, nullptr, nullptr));
  }

  template <Logic L>
  Formula<L> atom(std::string_view name) {
    return Formula<L>(intern(Op::Atom, name, nullptr, nullptr));
  }

  /// Builds a unary node; throws std::invalid_argument when `op` is not unary
  /// or not part of logic L.
  template <Logic L>
  Formula<L> unary(Op op, Formula<L> f) {
    check(op, L, 1);
    return Formula<L>(intern(op, {}, f.node(), nullptr));
  }

  template <Logic L>
  Formula<L> binary(Op op, Formula<L> a, Formula<L> b) {
    check(op, L, 2);
    return Formula<L>(intern(op, {}, a.node(), b.node()));
  }

  /// Copies `f` (owned by another store) into this store.
  template <Logic L>
  Formula<L> transfer(Formula<L> f) {
    return Formula<L>(copy_from(f.node()));
  }

  std::size_t size() const noexcept { return nodes_.size(); }

 private:
  struct Key {
    Op op;
    std::string_view name;
    const FormulaNode* left;
    const FormulaNode* right;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  static void check(Op op, Logic logic, int expected_arity);
  const FormulaNode* intern(Op op, std::string_view name, const FormulaNode* l,
                            const FormulaNode* r);
  const FormulaNode* copy_from(const FormulaNode* n);

  std::deque<FormulaNode> nodes_;
  std::unordered_map<Key, const FormulaNode*, KeyHash> table_;
};

// Builders. Each one deduces the logic from its operands.

template <Logic L>
Formula<L> make_not(FormulaStore& s, Formula<L> f) { return s.unary(Op::Not, f); }
template <Logic L>
Formula<L> make_and(FormulaStore& s, Formula<L> a, Formula<L> b) { return s.binary(Op::And, a, b); }
template <Logic L>
Formula<L> make_or(FormulaStore& s, Formula<L> a, Formula<L> b) { return s.binary(Op::Or, a, b); }

inline LtlfFormula make_implies(FormulaStore& s, LtlfFormula a, LtlfFormula b) {
  return s.binary(Op::Implies, a, b);
}
inline LtlfFormula make_next(FormulaStore& s, LtlfFormula f) { return s.unary(Op::Next, f); }
inline LtlfFormula make_weak_next(FormulaStore& s, LtlfFormula f) { return s.unary(Op::WeakNext, f); }
inline LtlfFormula make_until(FormulaStore& s, LtlfFormula a, LtlfFormula b) {
  return s.binary(Op::Until, a, b);
}
inline LtlfFormula make_release(FormulaStore& s, LtlfFormula a, LtlfFormula b) {
  return s.binary(Op::Release, a, b);
}
/// F f, i.e. true U f.
inline LtlfFormula make_eventually(FormulaStore& s, LtlfFormula f) {
  return make_until(s, s.constant<Logic::Future>(true), f);
}
/// G f, i.e. false R f.
inline LtlfFormula make_globally(FormulaStore& s, LtlfFormula f) {
  return make_release(s, s.constant<Logic::Future>(false), f);
}
inline PltlfFormula make_yesterday(FormulaStore& s, PltlfFormula f) { return s.unary(Op::Yesterday, f); }
inline PltlfFormula make_since(FormulaStore& s, PltlfFormula a, PltlfFormula b) {
  return s.binary(Op::Since, a, b);
}

/// Negation that folds constants and double negations.
template <Logic L>
Formula<L> negate(FormulaStore& s, Formula<L> f) {
  switch (f.op()) {
    case Op::True: return s.constant<L>(false);
    case Op::False: return s.constant<L>(true);
    case Op::Not: return f.child();
    default: return make_not(s, f);
  }
}

// Printing ------------------------------------------------------------------

enum class PrintStyle {
  Compact,     // minimal parentheses, F/G re-sugared
  FullParens,  // every non-atomic subformula parenthesized, no sugar
};

std::string to_string(LtlfFormula f, PrintStyle style = PrintStyle::Compact);
std::string to_string(PltlfFormula f, PrintStyle style = PrintStyle::Compact);
std::ostream& operator<<(std::ostream& os, LtlfFormula f);
std::ostream& operator<<(std::ostream& os, PltlfFormula f);

// Parsing -------------------------------------------------------------------

enum class Dialect { Ltlf, Pltlf };

/// Parses LTLf text. Throws ParseError on malformed input or on past
/// operators.
LtlfFormula parse_ltlf(FormulaStore& store, std::string_view text);
/// Parses PLTLf text. `->` is expanded to `!a | b`.
PltlfFormula parse_pltlf(FormulaStore& store, std::string_view text);

// Normal forms ----------------------------------------------------------------

/// Negation normal form: negations only on atoms, N and R introduced.
LtlfFormula to_nnf(FormulaStore& store, LtlfFormula f);
/// Boolean normal form: only true/false/atoms, !, &, |, X and U.
LtlfFormula to_bnf(FormulaStore& store, LtlfFormula f);
bool is_nnf(LtlfFormula f);
bool is_bnf(LtlfFormula f);

/// Maps X to Y and U to S after rewriting to BNF.
PltlfFormula reverse_to_past(FormulaStore& store, LtlfFormula f);

// Closure ---------------------------------------------------------------------

/// Distinct subformulas in post-order of first occurrence.
template <Logic L>
struct Closure {
  std::vector<Formula<L>> members;
  std::size_t non_atomic = 0;  // m
  std::size_t temporal = 0;    // n: U/R subformulas (S for the past logic)

  std::size_t size() const noexcept { return members.size(); }
  /// Index of `f` in members, or members.size() when absent.
  std::size_t index_of(Formula<L> f) const;
  bool contains(Formula<L> f) const { return index_of(f) != members.size(); }
};

Closure<Logic::Future> closure(LtlfFormula f);
Closure<Logic::Past> closure(PltlfFormula f);

/// True for U and R nodes.
inline bool is_until_release(LtlfFormula f) {
  return f.op() == Op::Until || f.op() == Op::Release;
}

/// Sorted, duplicate-free atom names.
std::vector<std::string> atoms_of(LtlfFormula f);
std::vector<std::string> atoms_of(PltlfFormula f);

}  // namespace ltlf

template <ltlf::Logic L>
struct std::hash<ltlf::Formula<L>> {
  std::size_t operator()(ltlf::Formula<L> f) const noexcept {
    return std::hash<const void*>{}(f.node());
  }
};

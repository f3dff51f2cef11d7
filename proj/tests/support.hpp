#pragma once

// Test-only oracles and generators.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltlf2dfa/automata.hpp"
#include "ltlf2dfa/bdd.hpp"
#include "ltlf2dfa/formula.hpp"
#include "ltlf2dfa/semantics.hpp"

namespace ltlf::testing {

/// Minimal DFA by reversing and determinizing twice.
inline ExplicitDfa brzozowski(const ExplicitDfa& d) {
  return determinize(reverse(determinize(reverse(d))));
}

/// DFA by formula progression on the NNF. A state is a monotone DNF over
/// obligations "the next position exists and satisfies chi" (strong) or
/// "there is no next position or it satisfies chi" (weak), kept as the set of
/// its minimal cubes.
class ProgressionDfa {
 public:
  ProgressionDfa(FormulaStore& store, LtlfFormula f, const Alphabet& alphabet)
      : alphabet_(alphabet) {
    root_ = to_nnf(store, f);
  }

  ExplicitDfa build(std::size_t budget = 100000) {
    ExplicitDfa d;
    d.alphabet = alphabet_;
    const Dnf start{{obligation(root_, true)}};
    std::map<Dnf, State> index{{start, 0}};
    std::vector<Dnf> states{start};
    for (std::size_t i = 0; i < states.size(); ++i) {
      d.accepting.push_back(accepting(states[i]));
      for (Letter l = 0; l < d.letters(); ++l) {
        Dnf next = step(states[i], l);
        auto [it, fresh] = index.emplace(next, static_cast<State>(states.size()));
        if (fresh) {
          if (states.size() >= budget) throw std::runtime_error("progression budget");
          states.push_back(next);
        }
        d.delta.push_back(it->second);
      }
    }
    d.num_states = states.size();
    return d;
  }

 private:
  using Cube = std::set<int>;
  using Dnf = std::set<Cube>;

  static Dnf minimal(const Dnf& d) {
    Dnf out;
    for (const Cube& c : d) {
      bool subsumed = false;
      for (const Cube& o : d)
        if (o != c && std::includes(c.begin(), c.end(), o.begin(), o.end())) {
          subsumed = true;
          break;
        }
      if (!subsumed) out.insert(c);
    }
    return out;
  }
  static Dnf conj(const Dnf& a, const Dnf& b) {
    Dnf out;
    for (const Cube& x : a)
      for (const Cube& y : b) {
        Cube c = x;
        c.insert(y.begin(), y.end());
        out.insert(c);
      }
    return minimal(out);
  }
  static Dnf disj(const Dnf& a, const Dnf& b) {
    Dnf out = a;
    out.insert(b.begin(), b.end());
    return minimal(out);
  }
  static Dnf top() { return {Cube{}}; }
  static Dnf bottom() { return {}; }

  int obligation(LtlfFormula chi, bool strong) {
    auto key = std::make_pair(chi.node(), strong);
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    const int id = static_cast<int>(obligations_.size());
    obligations_.push_back({chi, strong});
    ids_.emplace(key, id);
    return id;
  }

  Dnf progress(LtlfFormula f, Letter l) {
    switch (f.op()) {
      case Op::True: return top();
      case Op::False: return bottom();
      case Op::Atom: return alphabet_.contains(l, alphabet_.index_of(f.atom_name())) ? top() : bottom();
      case Op::Not: return progress(f.child(), l) == top() ? bottom() : top();
      case Op::And: return conj(progress(f.lhs(), l), progress(f.rhs(), l));
      case Op::Or: return disj(progress(f.lhs(), l), progress(f.rhs(), l));
      case Op::Next: return {{obligation(f.child(), true)}};
      case Op::WeakNext: return {{obligation(f.child(), false)}};
      case Op::Until:
        return disj(progress(f.rhs(), l), conj(progress(f.lhs(), l), {{obligation(f, true)}}));
      case Op::Release:
        return conj(progress(f.rhs(), l), disj(progress(f.lhs(), l), {{obligation(f, false)}}));
      default: throw std::logic_error("unexpected operator after nnf");
    }
  }

  Dnf step(const Dnf& d, Letter l) {
    Dnf out = bottom();
    for (const Cube& c : d) {
      Dnf term = top();
      for (int o : c) term = conj(term, progress(obligations_[o].first, l));
      out = disj(out, term);
    }
    return out;
  }

  bool accepting(const Dnf& d) const {
    for (const Cube& c : d) {
      bool ok = true;
      for (int o : c) ok = ok && !obligations_[o].second;
      if (ok) return true;
    }
    return false;
  }

  Alphabet alphabet_;
  LtlfFormula root_;
  std::vector<std::pair<LtlfFormula, bool>> obligations_;
  std::map<std::pair<const FormulaNode*, bool>, int> ids_;
};

/// Minimal DFA size of an LTLf formula from the progression oracle.
inline ExplicitDfa oracle_dfa(FormulaStore& store, LtlfFormula f, const Alphabet& alphabet) {
  return brzozowski(ProgressionDfa(store, f, alphabet).build());
}

// Generators --------------------------------------------------------------------------

/// Random LTLf formula of operator depth exactly `depth` (when depth > 0).
inline LtlfFormula random_ltlf(FormulaStore& s, std::mt19937& rng, int depth,
                               const std::vector<std::string>& atoms) {
  using F = Logic;
  auto pick = [&](int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng)); };
  if (depth == 0) {
    const int k = pick(static_cast<int>(atoms.size()) + 2);
    if (k == 0) return s.constant<F::Future>(true);
    if (k == 1) return s.constant<F::Future>(false);
    return s.atom<F::Future>(atoms[k - 2]);
  }
  auto sub = [&](bool full) { return random_ltlf(s, rng, full ? depth - 1 : pick(depth), atoms); };
  const int op = pick(10);
  if (op < 5) {
    LtlfFormula c = sub(true);
    switch (op) {
      case 0: return make_not(s, c);
      case 1: return make_next(s, c);
      case 2: return make_weak_next(s, c);
      case 3: return make_eventually(s, c);
      default: return make_globally(s, c);
    }
  }
  const bool left_full = pick(2) == 0;
  LtlfFormula a = sub(left_full), b = sub(!left_full);
  switch (op) {
    case 5: return make_and(s, a, b);
    case 6: return make_or(s, a, b);
    case 7: return make_implies(s, a, b);
    case 8: return make_until(s, a, b);
    default: return make_release(s, a, b);
  }
}

/// Random PLTLf formula of operator depth at most `depth`.
inline PltlfFormula random_pltlf(FormulaStore& s, std::mt19937& rng, int depth,
                                 const std::vector<std::string>& atoms) {
  using F = Logic;
  auto pick = [&](int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng)); };
  if (depth == 0 || pick(4) == 0) {
    const int k = pick(static_cast<int>(atoms.size()) + 2);
    if (k == 0) return s.constant<F::Past>(true);
    if (k == 1) return s.constant<F::Past>(false);
    return s.atom<F::Past>(atoms[k - 2]);
  }
  switch (pick(5)) {
    case 0: return make_not(s, random_pltlf(s, rng, depth - 1, atoms));
    case 1: return make_yesterday(s, random_pltlf(s, rng, depth - 1, atoms));
    case 2:
      return make_and(s, random_pltlf(s, rng, depth - 1, atoms), random_pltlf(s, rng, depth - 1, atoms));
    case 3:
      return make_or(s, random_pltlf(s, rng, depth - 1, atoms), random_pltlf(s, rng, depth - 1, atoms));
    default:
      return make_since(s, random_pltlf(s, rng, depth - 1, atoms), random_pltlf(s, rng, depth - 1, atoms));
  }
}

/// Every formula over `atoms` of operator depth <= 1, in a fixed order.
inline std::vector<LtlfFormula> shallow_formulas(FormulaStore& s, const std::vector<std::string>& atoms) {
  std::vector<LtlfFormula> leaves{s.constant<Logic::Future>(true), s.constant<Logic::Future>(false)};
  for (const auto& a : atoms) leaves.push_back(s.atom<Logic::Future>(a));
  std::vector<LtlfFormula> out = leaves;
  for (LtlfFormula c : leaves) {
    out.push_back(make_not(s, c));
    out.push_back(make_next(s, c));
    out.push_back(make_weak_next(s, c));
    out.push_back(make_eventually(s, c));
    out.push_back(make_globally(s, c));
  }
  for (LtlfFormula a : leaves)
    for (LtlfFormula b : leaves) {
      out.push_back(make_and(s, a, b));
      out.push_back(make_or(s, a, b));
      out.push_back(make_implies(s, a, b));
      out.push_back(make_until(s, a, b));
      out.push_back(make_release(s, a, b));
    }
  return out;
}

/// The theorem grid: all depth <= 1 formulas over {a, b}, then distinct
/// sampled formulas of depth 2 and 3 up to `cap` in total.
inline std::vector<LtlfFormula> theorem_grid(FormulaStore& s, std::size_t cap = 500,
                                             unsigned seed = 20240611) {
  const std::vector<std::string> atoms{"a", "b"};
  std::vector<LtlfFormula> out;
  std::set<const FormulaNode*> seen;
  for (LtlfFormula f : shallow_formulas(s, atoms))
    if (seen.insert(f.node()).second) out.push_back(f);
  std::mt19937 rng(seed);
  for (int attempts = 0; out.size() < cap && attempts < 100000; ++attempts) {
    LtlfFormula f = random_ltlf(s, rng, 2 + attempts % 2, atoms);
    if (seen.insert(f.node()).second) out.push_back(f);
  }
  if (out.size() > cap) out.resize(cap);
  return out;
}

/// Pattern families up to n = 3 plus hand-picked formulas: 50 in total.
inline std::vector<std::string> consistency_corpus() {
  return {
      "F p1", "F p1 & F p2", "F p1 & F p2 & F p3",
      "G(p1 -> F q1)", "G(p1 -> F q1) & G(p2 -> F q2)",
      "G(p1 -> F q1) & G(p2 -> F q2) & G(p3 -> F q3)",
      "p1 U p2", "p1 U (p2 U p3)", "p1 U (p2 U (p3 U p4))",
      "!F a", "G(a -> X b)", "a U (b U c)",
      "p", "a", "true", "false", "a & !a", "a | !a",
      "F a", "G a", "X a", "N a", "X X a", "N N a",
      "a U b", "a R b", "!(a U b)", "!(a R b)", "G F a", "F G a",
      "X(a U b)", "N(a R b)", "(a U b) U c", "a R (b R c)",
      "G(a -> N b)", "F(a & X b)", "F(a & N b)", "G(a | X a)",
      "a -> F b", "(a U b) & (b U a)", "X a U X b", "!(X a) & N a",
      "G(a -> (b U c))", "F a & G !b", "(F a) R (G b)", "a U (X X b)",
      "G(a -> X(b | X c))", "!G(a -> F b)", "X true", "N false",
  };
}

/// Random traces for property tests.
inline Trace random_trace(std::mt19937& rng, const Alphabet& alphabet, std::size_t max_len) {
  Trace t;
  t.alphabet = alphabet;
  const std::size_t len = std::uniform_int_distribution<std::size_t>(1, max_len)(rng);
  std::uniform_int_distribution<Letter> letter(0, static_cast<Letter>(alphabet.letter_count() - 1));
  for (std::size_t i = 0; i < len; ++i) t.letters.push_back(letter(rng));
  return t;
}

// BDD fuzzing ------------------------------------------------------------------------

/// Random apply sequences over at most six variables. Every result is
/// checked against its truth table, against a second apply sequence for the
/// same function, and against a Shannon rebuild from the truth table.
class BddFuzzer {
 public:
  BddFuzzer(unsigned vars, unsigned seed) : n_(vars), mgr_(vars), rng_(seed) {
    for (unsigned v = 0; v < n_; ++v) push(mgr_.var(v), var_table(v));
    push(mgr_.zero(), 0);
    push(mgr_.one(), full());
  }

  BddManager& mgr() { return mgr_; }
  std::size_t checks() const { return checks_; }

  /// One pair of apply sequences; returns an empty string or a diagnosis.
  std::string round() {
    auto pick = [&] { return std::uniform_int_distribution<std::size_t>(0, pool_.size() - 1)(rng_); };
    const Entry x = pool_[pick()], y = pool_[pick()], z = pool_[pick()];
    const unsigned v = std::uniform_int_distribution<unsigned>(0, n_ - 1)(rng_);
    const bool b = rng_() & 1;
    BddManager& m = mgr_;
    BddRef first = 0, second = 0;
    std::uint64_t table = 0;
    std::string op;
    switch (rng_() % 10) {
      case 0:
        op = "and";
        first = m.conj(x.f, y.f);
        second = m.negate(m.disj(m.negate(x.f), m.negate(y.f)));
        table = x.t & y.t;
        break;
      case 1:
        op = "or";
        first = m.disj(x.f, y.f);
        second = m.negate(m.conj(m.negate(x.f), m.negate(y.f)));
        table = x.t | y.t;
        break;
      case 2:
        op = "xor";
        first = m.exclusive_or(x.f, y.f);
        second = m.disj(m.conj(x.f, m.negate(y.f)), m.conj(m.negate(x.f), y.f));
        table = x.t ^ y.t;
        break;
      case 3:
        op = "ite";
        first = m.ite(x.f, y.f, z.f);
        second = m.disj(m.conj(x.f, y.f), m.conj(m.negate(x.f), z.f));
        table = (x.t & y.t) | (~x.t & z.t & full());
        break;
      case 4:
        op = "implies";
        first = m.implies(x.f, y.f);
        second = m.disj(m.negate(x.f), y.f);
        table = (~x.t | y.t) & full();
        break;
      case 5:
        op = "equiv";
        first = m.equiv(x.f, y.f);
        second = m.negate(m.exclusive_or(x.f, y.f));
        table = ~(x.t ^ y.t) & full();
        break;
      case 6:
        op = "restrict";
        first = m.restrict(x.f, v, b);
        second = m.compose(x.f, v, m.constant(b));
        table = restrict_table(x.t, v, b);
        break;
      case 7:
        op = "compose";
        first = m.compose(x.f, v, y.f);
        second = m.ite(y.f, m.restrict(x.f, v, true), m.restrict(x.f, v, false));
        table = (y.t & restrict_table(x.t, v, true)) | (~y.t & restrict_table(x.t, v, false) & full());
        break;
      case 8: {
        op = "exists";
        std::vector<bool> vars(n_, false);
        vars[v] = true;
        first = m.exists(x.f, vars);
        second = m.disj(m.restrict(x.f, v, false), m.restrict(x.f, v, true));
        table = restrict_table(x.t, v, false) | restrict_table(x.t, v, true);
        break;
      }
      default: {
        op = "and_exists";
        std::vector<bool> vars(n_, false);
        vars[v] = true;
        first = m.and_exists(x.f, y.f, vars);
        second = m.exists(m.conj(x.f, y.f), vars);
        const std::uint64_t c = x.t & y.t;
        table = restrict_table(c, v, false) | restrict_table(c, v, true);
        break;
      }
    }
    ++checks_;
    if (!m.check_invariants(first) || !m.check_invariants(second)) return op + ": invariant violated";
    if (first != second) return op + ": two apply sequences gave different roots";
    if (table_of(first) != table) return op + ": wrong function";
    if (shannon(table, 0, 0) != first) return op + ": rebuild from the truth table gave another root";
    if (pool_.size() < 48)
      push(first, table);
    else
      pool_[pick()] = {first, table};
    if (m.size() > 50000) compact();
    return {};
  }

 private:
  struct Entry {
    BddRef f;
    std::uint64_t t;
  };

  std::uint64_t full() const { return n_ >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (1u << n_)) - 1; }
  std::uint64_t var_table(unsigned v) const {
    std::uint64_t t = 0;
    for (unsigned a = 0; a < (1u << n_); ++a)
      if ((a >> v) & 1) t |= std::uint64_t{1} << a;
    return t;
  }
  std::uint64_t restrict_table(std::uint64_t t, unsigned v, bool b) const {
    std::uint64_t out = 0;
    for (unsigned a = 0; a < (1u << n_); ++a) {
      const unsigned fixed = b ? (a | (1u << v)) : (a & ~(1u << v));
      if ((t >> fixed) & 1) out |= std::uint64_t{1} << a;
    }
    return out;
  }
  std::uint64_t table_of(BddRef f) const {
    std::uint64_t out = 0;
    std::vector<bool> assignment(n_);
    for (unsigned a = 0; a < (1u << n_); ++a) {
      for (unsigned v = 0; v < n_; ++v) assignment[v] = (a >> v) & 1;
      if (mgr_.eval(f, assignment)) out |= std::uint64_t{1} << a;
    }
    return out;
  }
  BddRef shannon(std::uint64_t t, unsigned v, unsigned partial) {
    if (v == n_) return mgr_.constant((t >> partial) & 1);
    BddRef lo = shannon(t, v + 1, partial);
    BddRef hi = shannon(t, v + 1, partial | (1u << v));
    return mgr_.make(v, lo, hi);
  }
  void push(BddRef f, std::uint64_t t) { pool_.push_back({f, t}); }
  void compact() {
    std::vector<BddRef> keep;
    for (const Entry& e : pool_) keep.push_back(e.f);
    keep = mgr_.collect_garbage(keep);
    for (std::size_t i = 0; i < pool_.size(); ++i) pool_[i].f = keep[i];
  }

  unsigned n_;
  BddManager mgr_;
  std::mt19937 rng_;
  std::vector<Entry> pool_;
  std::size_t checks_ = 0;
};

}  // namespace ltlf::testing

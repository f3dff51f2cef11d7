#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "ltlf2dfa/alphabet.hpp"
#include "ltlf2dfa/automata.hpp"
#include "ltlf2dfa/bdd.hpp"
#include "ltlf2dfa/deadline.hpp"
#include "ltlf2dfa/formula.hpp"
#include "ltlf2dfa/semantics.hpp"

namespace ltlf {

/// F = (P, X, X0, eta, f) with BDDs over the state variables x_0..x_{k-1}
/// (BDD variables 0..k-1) followed by the atoms (variables k..k+|P|-1).
struct SymbolicDfa {
  std::shared_ptr<BddManager> mgr;
  Alphabet alphabet;
  std::vector<std::string> state_names;
  std::vector<bool> initial;  // X0
  std::vector<BddRef> eta;    // one transition function per state variable
  BddRef accept = BddManager::kFalse;

  std::size_t k() const noexcept { return eta.size(); }
  unsigned state_var(std::size_t q) const noexcept { return static_cast<unsigned>(q); }
  unsigned atom_var(std::size_t i) const noexcept { return static_cast<unsigned>(k() + i); }
  /// Names of all BDD variables: state names then atoms.
  std::vector<std::string> var_names() const;

  std::vector<bool> step(const std::vector<bool>& state, Letter l) const;
  bool accepting(const std::vector<bool>& state) const;
};

/// Sequence of states X0, X1, ..., X_e visited on a trace.
struct RunTrace {
  std::vector<std::vector<bool>> states;
  bool accepted = false;
};

/// One state bit per closure member holding its truth at the last read
/// position, plus an at-start bit (the last state variable). Atoms default to
/// those of `psi`.
SymbolicDfa pltlf_to_symbolic_dfa(PltlfFormula psi, const std::vector<std::string>& atoms = {},
                                  std::size_t node_cap = BddManager::kDefaultNodeCap);

/// Reachable-state expansion. Throws BudgetExceeded beyond `budget` states.
ExplicitDfa symbolic_to_explicit(const SymbolicDfa& f, std::size_t budget = kDefaultStateBudget,
                                 const Deadline& deadline = Deadline::none());

RunTrace simulate(const SymbolicDfa& f, const Trace& t);

/// B_f' = f(eta(X, P)): true iff the transition lands in an accepting state.
BddRef compose_acceptance(SymbolicDfa& f);

/// Edge (beta, v, d): the d-edge of a node testing v.
struct BddEdge {
  int node;  // source in pre and pre_terminal, target in post
  unsigned var;
  bool value;
  friend bool operator==(const BddEdge&, const BddEdge&) = default;
};

/// Edge tables over the given roots. Shared subgraphs are duplicated per
/// root, so every nonterminal id alpha (1..u) belongs to exactly one root.
struct EdgeTables {
  std::size_t u = 0;
  std::vector<unsigned> node_var;       // [alpha - 1]
  std::vector<std::size_t> node_owner;  // [alpha - 1], root index
  std::vector<BddRef> node_ref;         // [alpha - 1], underlying BDD node
  /// Per root: alpha of the root node, or 0 when the root is a terminal.
  std::vector<int> root_node;
  /// Per root: terminal value when root_node is 0.
  std::vector<bool> root_constant;
  std::vector<std::vector<BddEdge>> pre;   // [alpha - 1]: edges into alpha
  /// [alpha - 1]: (target, v, d) for edges from alpha to a nonterminal.
  std::vector<std::vector<BddEdge>> post;
  /// [root][c]: edges from a node of that root into terminal c.
  std::vector<std::array<std::vector<BddEdge>, 2>> pre_terminal;

  std::size_t edge_count() const;
};

EdgeTables extract_edges(const BddManager& mgr, const std::vector<BddRef>& roots);
std::string to_string(const EdgeTables& e, const std::vector<std::string>& var_names = {});

}  // namespace ltlf

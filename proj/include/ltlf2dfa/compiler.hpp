#pragma once

#include <cstddef>

#include "ltlf2dfa/automata.hpp"
#include "ltlf2dfa/bdd.hpp"
#include "ltlf2dfa/deadline.hpp"
#include "ltlf2dfa/mso.hpp"

namespace ltlf {

struct CompileOptions {
  /// Column cap for compile_explicit, which enumerates extended letters.
  std::size_t width_cap = 16;
  /// Column cap for compile.
  std::size_t symbolic_width_cap = 2048;
  std::size_t state_budget = kDefaultStateBudget;
  std::size_t node_cap = BddManager::kDefaultNodeCap;
  Deadline deadline = Deadline::none();
};

struct CompileStats {
  std::size_t columns = 0;
  std::size_t clauses = 0;
  /// Letters kept by the sliding window (positions before the new one).
  std::size_t buffer = 0;
  /// States of the matrix automaton (explicit route only).
  std::size_t matrix_states = 0;
  /// States of the determinized automaton before minimization.
  std::size_t subset_states = 0;
  std::size_t final_states = 0;
  std::size_t final_transitions = 0;
};

/// Minimized DFA for the words over the free columns that extend to a model
/// of the sentence; the empty word is rejected. Subsets of window contents
/// are tracked as BDDs while reading, so the quantified columns are
/// projected during determinization.
ExplicitDfa compile(const MonadicSentence& s, const CompileOptions& opt = {},
                    CompileStats* stats = nullptr);

/// Same language through an explicit matrix automaton over all columns,
/// projection to an NFA over the free columns, subset construction and
/// minimization. Throws BudgetExceeded beyond `width_cap` columns.
ExplicitDfa compile_explicit(const MonadicSentence& s, const CompileOptions& opt = {},
                             CompileStats* stats = nullptr);

}  // namespace ltlf

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ltlf2dfa/alphabet.hpp"
#include "ltlf2dfa/deadline.hpp"
#include "ltlf2dfa/semantics.hpp"

namespace ltlf {

using State = std::uint32_t;

/// Complete DFA over 2^P. delta is laid out state-major:
/// delta[s * letter_count + letter].
struct ExplicitDfa {
  Alphabet alphabet;
  std::size_t num_states = 0;
  State initial = 0;
  std::vector<State> delta;
  std::vector<bool> accepting;

  std::size_t letters() const { return static_cast<std::size_t>(alphabet.letter_count()); }
  State next(State s, Letter l) const { return delta[s * letters() + l]; }
  /// Number of distinct (source, target) pairs.
  std::size_t transition_count() const;
  /// Throws Error when the table is malformed.
  void validate() const;
};

struct Nfa {
  Alphabet alphabet;
  std::size_t num_states = 0;
  std::vector<State> initial;
  /// succ[s * letter_count + letter]
  std::vector<std::vector<State>> succ;
  std::vector<bool> accepting;

  std::size_t letters() const { return static_cast<std::size_t>(alphabet.letter_count()); }
};

inline constexpr std::size_t kDefaultStateBudget = 1'000'000;

/// Subset construction over reachable subsets. Throws BudgetExceeded beyond
/// `budget` states.
ExplicitDfa determinize(const Nfa& n, std::size_t budget = kDefaultStateBudget,
                        const Deadline& deadline = Deadline::none());
/// Hopcroft refinement on the reachable part, then canonical renumbering.
ExplicitDfa minimize(const ExplicitDfa& d, const Deadline& deadline = Deadline::none());
/// Breadth-first renumbering from the initial state (letters in integer
/// order); unreachable states are dropped.
ExplicitDfa canonicalize(const ExplicitDfa& d);
/// Initial states become the accepting ones and vice versa, edges inverted.
Nfa reverse(const ExplicitDfa& d);
Nfa as_nfa(const ExplicitDfa& d);
ExplicitDfa complement(const ExplicitDfa& d);

/// Language equality by product reachability (the empty word is ignored).
bool equivalent(const ExplicitDfa& a, const ExplicitDfa& b);
/// Equality of canonical minimal automata.
bool isomorphic(const ExplicitDfa& a, const ExplicitDfa& b);
/// No non-empty word accepted.
bool is_empty(const ExplicitDfa& d);
/// Every non-empty word accepted.
bool is_universal(const ExplicitDfa& d);
/// The empty trace is never accepted.
bool accepts(const ExplicitDfa& d, const Trace& t);
bool accepts(const Nfa& n, const Trace& t);

/// Accepted traces of length 1..max_length in the order of all_traces.
std::vector<Trace> bounded_language(const ExplicitDfa& d, std::size_t max_length);

/// `dfa |S| |P| s0`, `acc: ...`, then `i <bits> j` rows sorted by (i, letter).
std::string to_explicit(const ExplicitDfa& d);
ExplicitDfa parse_explicit(const Alphabet& alphabet, std::string_view text);
std::string to_dot(const ExplicitDfa& d);

}  // namespace ltlf

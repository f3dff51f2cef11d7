#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ltlf2dfa/alphabet.hpp"
#include "ltlf2dfa/formula.hpp"

namespace ltlf {

/// Finite word over 2^P. Positions run from 0 to last() = size()-1.
struct Trace {
  Alphabet alphabet;
  std::vector<Letter> letters;

  std::size_t size() const noexcept { return letters.size(); }
  std::size_t last() const noexcept { return letters.size() - 1; }
  bool holds(std::size_t position, std::size_t atom) const {
    return alphabet.contains(letters[position], atom);
  }

  Trace reversed() const;
  friend bool operator==(const Trace& a, const Trace& b) {
    return a.alphabet == b.alphabet && a.letters == b.letters;
  }
  friend bool operator<(const Trace& a, const Trace& b);
};

/// Parses `a;a,b;` style text; `-` is the empty letter, the trailing `;` is
/// optional. Atoms must belong to `alphabet`.
Trace parse_trace(const Alphabet& alphabet, std::string_view text);
std::string format_trace(const Trace& t);

/// Satisfaction of an LTLf formula at position x.
bool eval_ltlf_at(const Trace& t, LtlfFormula f, std::size_t x);
/// Satisfaction of a PLTLf formula at position x.
bool eval_pltlf_at(const Trace& t, PltlfFormula f, std::size_t x);

/// Whole-trace satisfaction: LTLf at position 0, PLTLf at the last position.
inline bool satisfies(const Trace& t, LtlfFormula f) { return eval_ltlf_at(t, f, 0); }
inline bool satisfies(const Trace& t, PltlfFormula f) { return eval_pltlf_at(t, f, t.last()); }

/// Every trace of length 1..max_length over `alphabet` in dictionary order
/// (a trace precedes its extensions; letters compare as integers).
std::vector<Trace> all_traces(const Alphabet& alphabet, std::size_t max_length,
                              std::uint64_t cap = 2'000'000);

/// Satisfying traces of length 1..max_length in the order of all_traces.
/// Throws BudgetExceeded when more than `cap` traces would be evaluated.
std::vector<Trace> bounded_language(LtlfFormula f, const Alphabet& alphabet,
                                    std::size_t max_length, std::uint64_t cap = 2'000'000);
std::vector<Trace> bounded_language(PltlfFormula f, const Alphabet& alphabet,
                                    std::size_t max_length, std::uint64_t cap = 2'000'000);

}  // namespace ltlf

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ltlf2dfa/mso.hpp"
#include "ltlf2dfa/semantics.hpp"
#include "ltlf2dfa/symbolic.hpp"

namespace ltlf {

enum class RevFlavor { Fussy, Sloppy };

std::string to_string(RevFlavor f);
RevFlavor parse_flavor(const std::string& name);

/// Second-order sentence that runs a symbolic DFA backwards over the input.
/// Columns: atoms, then V_0..V_{k-1}, then N_1..N_u.
struct RevSentence {
  MonadicSentence sentence;
  RevFlavor flavor = RevFlavor::Fussy;
  std::size_t k = 0;
  EdgeTables edges;  // roots B_0..B_{k-1}, then B_f'
  std::vector<std::string> var_names;

  std::size_t u() const { return edges.u; }
  int v_column(std::size_t q) const { return static_cast<int>(sentence.free_count + q); }
  int n_column(int alpha) const {
    return static_cast<int>(sentence.free_count + k) + alpha - 1;
  }
  std::size_t clause_count() const { return sentence.matrix.size(); }
  std::size_t edge_count() const { return edges.edge_count(); }
};

/// Rev(F) for the fussy flavor, Rev_s(F) for the sloppy one. Compiling the
/// result yields the reversal of L(F).
RevSentence build_rev(SymbolicDfa& f, RevFlavor flavor);

/// V_q(x) holds the state bit before reading position x of the backward
/// run, N_a(x) the nodes on the evaluation paths at x.
Extents canonical_rev_witness(const Trace& t, const SymbolicDfa& f, const RevSentence& rev);
bool eval_rev_witness(const Trace& t, const SymbolicDfa& f, const RevSentence& rev);

}  // namespace ltlf

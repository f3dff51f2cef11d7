#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ltlf2dfa/formula.hpp"
#include "ltlf2dfa/semantics.hpp"

namespace ltlf {

/// Finite linear order 0..last with one extent per predicate name, packed as
/// a bitmask (bit x set iff x is in the extent).
struct MonadicStructure {
  static constexpr std::size_t kMaxSize = 64;

  std::size_t size = 0;
  std::map<std::string, std::uint64_t> extents;

  std::size_t last() const noexcept { return size - 1; }
  std::uint64_t domain() const noexcept {
    return size >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size) - 1;
  }
  /// Structure of a trace: one predicate per atom of the trace alphabet.
  static MonadicStructure of(const Trace& t);
};

struct FolTerm;
struct FolFormula;
using FolTermPtr = std::shared_ptr<const FolTerm>;
using FolPtr = std::shared_ptr<const FolFormula>;

struct FolTerm {
  enum class Kind { Var, Zero, Last, Succ, Pred };
  Kind kind;
  std::string var;
  FolTermPtr arg;
};

struct FolFormula {
  enum class Kind { True, False, Apply, Eq, Neq, Lt, Le, Not, And, Or, Implies, Exists, Forall };
  Kind kind;
  std::string name;  // predicate for Apply, bound variable for quantifiers
  FolTermPtr lhs, rhs;
  FolPtr a, b;
};

namespace fol {
FolTermPtr var(std::string name);
FolTermPtr zero();
FolTermPtr last();
FolTermPtr succ(FolTermPtr t);
FolTermPtr pred(FolTermPtr t);

FolPtr truth(bool value);
FolPtr apply(std::string predicate, FolTermPtr t);
FolPtr compare(FolFormula::Kind kind, FolTermPtr l, FolTermPtr r);
FolPtr negation(FolPtr f);
FolPtr conjunction(FolPtr a, FolPtr b);
FolPtr disjunction(FolPtr a, FolPtr b);
FolPtr implication(FolPtr a, FolPtr b);
FolPtr exists(std::string v, FolPtr body);
FolPtr forall(std::string v, FolPtr body);
}  // namespace fol

/// fol(φ, 0): the first-order sentence for an LTLf formula. Predicates are
/// named after atoms.
FolPtr encode_fol(LtlfFormula f);
/// fol_p(ψ, last) for a PLTLf formula.
FolPtr encode_fol_past(PltlfFormula f);

/// Tarskian evaluation with quantifiers ranging over 0..last. Applying a
/// predicate to a term outside the domain yields false. Throws Error on an
/// unknown predicate or an unbound variable.
bool eval_fol(const MonadicStructure& s, const FolPtr& f);

std::string to_string(const FolPtr& f);
std::string to_string(const FolTermPtr& t);

/// Number of quantifiers in `f`.
std::size_t quantifier_count(const FolPtr& f);

}  // namespace ltlf

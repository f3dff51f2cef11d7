#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ltlf2dfa/alphabet.hpp"
#include "ltlf2dfa/fol.hpp"
#include "ltlf2dfa/formula.hpp"
#include "ltlf2dfa/semantics.hpp"

namespace ltlf {

// Second-order terms ----------------------------------------------------------

struct SetTerm;
using SetTermPtr = std::shared_ptr<const SetTerm>;

/// Pointwise-evaluable second-order term.
struct SetTerm {
  enum class Kind {
    Pred,           // a column of the sentence
    Alive,          // {0..last}
    Empty,
    LastSingleton,  // {last}
    Union,
    Inter,
    Diff,
    ShiftBack,      // T-1 = {y : y+1 in T}
  };
  Kind kind;
  int column = -1;
  SetTermPtr a, b;
};

namespace term {
SetTermPtr pred(int column);
SetTermPtr alive();
SetTermPtr empty();
SetTermPtr last();
SetTermPtr unite(SetTermPtr a, SetTermPtr b);
SetTermPtr inter(SetTermPtr a, SetTermPtr b);
SetTermPtr diff(SetTermPtr a, SetTermPtr b);
SetTermPtr shift_back(SetTermPtr a);
}  // namespace term

// Matrix expressions ------------------------------------------------------------

enum class Guard { First, Last, NotLast, Positive };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Quantifier-free formula in the free position variable x.
struct Expr {
  enum class Kind { True, False, Guard, Member, In, Not, And, Or, Implies, Iff };
  Kind kind;
  Guard guard = Guard::First;
  int column = -1;  // Member
  int offset = 0;   // Member, In: position x+offset
  SetTermPtr set;   // In
  std::vector<ExprPtr> args;
};

namespace expr {
ExprPtr truth(bool value);
ExprPtr guard(Guard g);
ExprPtr member(int column, int offset = 0);
ExprPtr in(SetTermPtr set, int offset = 0);
ExprPtr negation(ExprPtr e);
ExprPtr conjunction(std::vector<ExprPtr> args);
ExprPtr disjunction(std::vector<ExprPtr> args);
ExprPtr implication(ExprPtr a, ExprPtr b);
ExprPtr iff(ExprPtr a, ExprPtr b);
}  // namespace expr

/// Generic evaluation of an expression under a valuation context C, which
/// provides V top(), bottom(), member(column, offset), exists(offset),
/// negate(V), conj(V, V), disj(V, V). exists(0) must be true.
template <class C>
auto evaluate(const Expr& e, C& ctx) -> decltype(ctx.top());
template <class C>
auto evaluate_set(const SetTerm& t, int offset, C& ctx) -> decltype(ctx.top());

// Sentences ---------------------------------------------------------------------

struct Clause {
  std::string label;
  ExprPtr body;
};

/// ∃(quantified columns) (Init(0) ∧ ∀x ⋀ matrix). Columns are the free atom
/// predicates (first `free_count`, sorted) followed by the quantified ones.
struct MonadicSentence {
  std::vector<std::string> columns;
  std::size_t free_count = 0;
  ExprPtr init;
  std::vector<Clause> matrix;

  std::size_t quantified_count() const { return columns.size() - free_count; }
  Alphabet alphabet() const;
};

/// Smallest and largest position offsets referenced by `e`, including guard
/// lookups (x=0 looks at x-1, x=last at x+1).
struct Window {
  int lo = 0;
  int hi = 0;
};
Window window_of(const Expr& e);

std::string to_string(const SetTerm& t, const MonadicSentence& s);
std::string to_string(const Expr& e, const MonadicSentence& s);
/// Human-readable form: quantifier line, init line, one clause per line.
std::string to_string(const MonadicSentence& s);

// Encodings -----------------------------------------------------------------------

enum class NormalForm { Bnf, Nnf };
enum class Constraint { Fussy, Sloppy };
enum class Variables { Full, Lean };

struct EncodingConfig {
  NormalForm norm = NormalForm::Bnf;
  Constraint constraint = Constraint::Fussy;
  Variables vars = Variables::Full;

  /// Throws ConfigError for bnf+sloppy.
  void validate() const;
  std::string name() const;  // e.g. "nnf-sloppy-lean"
  friend bool operator==(const EncodingConfig&, const EncodingConfig&) = default;
};

/// The six valid configurations in a fixed order.
std::vector<EncodingConfig> all_configs();
/// Parses names such as "bnf-fussy-full".
EncodingConfig parse_config(const std::string& name);

struct MsoEncoding {
  MonadicSentence sentence;
  /// Subformula whose truth set each quantified column stands for.
  std::vector<LtlfFormula> predicate_for;
  EncodingConfig config;
};

/// Validates `cfg` and that `f` is in the configured normal form, then
/// encodes. Atom columns are `alphabet` (defaults to the atoms of `f`).
MsoEncoding encode_mso(LtlfFormula f, const EncodingConfig& cfg,
                       const std::vector<std::string>& alphabet = {});
/// Same construction without any validation; used to demonstrate why the
/// bnf+sloppy combination is rejected.
MsoEncoding encode_mso_unchecked(LtlfFormula f, const EncodingConfig& cfg,
                                 const std::vector<std::string>& alphabet = {});

/// Second-order term lean(θ) for a subformula of an encoded formula.
SetTermPtr lean_term(const MsoEncoding& enc, LtlfFormula theta);

// Evaluation ----------------------------------------------------------------------

/// Extents for every column, bit x of entry c set iff x is in column c.
using Extents = std::vector<std::uint64_t>;

/// Init(0) ∧ ∀x matrix under fully specified extents.
bool eval_sentence_under(const MonadicSentence& s, std::size_t size, const Extents& ext);
/// Positions of a set term under fully specified extents.
std::uint64_t eval_set_under(const SetTerm& t, std::size_t size, const Extents& ext);

/// Free-column extents of a structure; throws Error when an atom is missing.
Extents free_extents(const MonadicSentence& s, const MonadicStructure& m);

/// Exhaustive search over all extents of the quantified columns. Throws
/// BudgetExceeded when quantified_count * size exceeds `max_bits`.
bool eval_sentence_bruteforce(const MonadicStructure& m, const MonadicSentence& s,
                              std::size_t max_bits = 20);

/// Canonical witness: each quantified column gets the truth set of its
/// subformula on `t`.
Extents canonical_witness(const Trace& t, const MsoEncoding& enc);
bool eval_sentence_witness(const Trace& t, LtlfFormula f, const MsoEncoding& enc);

// Template definitions --------------------------------------------------------------

template <class C>
auto evaluate_set(const SetTerm& t, int offset, C& ctx) -> decltype(ctx.top()) {
  using K = SetTerm::Kind;
  switch (t.kind) {
    case K::Pred: return ctx.member(t.column, offset);
    case K::Alive: return ctx.exists(offset);
    case K::Empty: return ctx.bottom();
    case K::LastSingleton: return ctx.conj(ctx.exists(offset), ctx.negate(ctx.exists(offset + 1)));
    case K::Union: return ctx.disj(evaluate_set(*t.a, offset, ctx), evaluate_set(*t.b, offset, ctx));
    case K::Inter: return ctx.conj(evaluate_set(*t.a, offset, ctx), evaluate_set(*t.b, offset, ctx));
    case K::Diff:
      return ctx.conj(evaluate_set(*t.a, offset, ctx), ctx.negate(evaluate_set(*t.b, offset, ctx)));
    case K::ShiftBack: return ctx.conj(ctx.exists(offset), evaluate_set(*t.a, offset + 1, ctx));
  }
  return ctx.bottom();
}

template <class C>
auto evaluate(const Expr& e, C& ctx) -> decltype(ctx.top()) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::True: return ctx.top();
    case K::False: return ctx.bottom();
    case K::Guard:
      switch (e.guard) {
        case Guard::First: return ctx.negate(ctx.exists(-1));
        case Guard::Last: return ctx.negate(ctx.exists(1));
        case Guard::NotLast: return ctx.exists(1);
        case Guard::Positive: return ctx.exists(-1);
      }
      return ctx.bottom();
    case K::Member: return ctx.member(e.column, e.offset);
    case K::In: return evaluate_set(*e.set, e.offset, ctx);
    case K::Not: return ctx.negate(evaluate(*e.args[0], ctx));
    case K::And: {
      auto v = ctx.top();
      for (const auto& a : e.args) v = ctx.conj(v, evaluate(*a, ctx));
      return v;
    }
    case K::Or: {
      auto v = ctx.bottom();
      for (const auto& a : e.args) v = ctx.disj(v, evaluate(*a, ctx));
      return v;
    }
    case K::Implies:
      return ctx.disj(ctx.negate(evaluate(*e.args[0], ctx)), evaluate(*e.args[1], ctx));
    case K::Iff: {
      auto a = evaluate(*e.args[0], ctx);
      auto b = evaluate(*e.args[1], ctx);
      return ctx.disj(ctx.conj(a, b), ctx.conj(ctx.negate(a), ctx.negate(b)));
    }
  }
  return ctx.bottom();
}

}  // namespace ltlf

#include "ltlf2dfa/mso.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>

#include "ltlf2dfa/errors.hpp"

namespace ltlf {

namespace term {
namespace {
SetTermPtr make(SetTerm::Kind k, int col = -1, SetTermPtr a = nullptr, SetTermPtr b = nullptr) {
  return std::make_shared<SetTerm>(SetTerm{k, col, std::move(a), std::move(b)});
}
}  // namespace
SetTermPtr pred(int column) { return make(SetTerm::Kind::Pred, column); }
SetTermPtr alive() { return make(SetTerm::Kind::Alive); }
SetTermPtr empty() { return make(SetTerm::Kind::Empty); }
SetTermPtr last() { return make(SetTerm::Kind::LastSingleton); }
SetTermPtr unite(SetTermPtr a, SetTermPtr b) { return make(SetTerm::Kind::Union, -1, std::move(a), std::move(b)); }
SetTermPtr inter(SetTermPtr a, SetTermPtr b) { return make(SetTerm::Kind::Inter, -1, std::move(a), std::move(b)); }
SetTermPtr diff(SetTermPtr a, SetTermPtr b) { return make(SetTerm::Kind::Diff, -1, std::move(a), std::move(b)); }
SetTermPtr shift_back(SetTermPtr a) { return make(SetTerm::Kind::ShiftBack, -1, std::move(a)); }
}  // namespace term

namespace expr {
namespace {
ExprPtr make(Expr e) { return std::make_shared<Expr>(std::move(e)); }
}  // namespace
ExprPtr truth(bool value) { return make(Expr{value ? Expr::Kind::True : Expr::Kind::False}); }
ExprPtr guard(Guard g) {
  Expr e{Expr::Kind::Guard};
  e.guard = g;
  return make(std::move(e));
}
ExprPtr member(int column, int offset) {
  Expr e{Expr::Kind::Member};
  e.column = column;
  e.offset = offset;
  return make(std::move(e));
}
ExprPtr in(SetTermPtr set, int offset) {
  if (set->kind == SetTerm::Kind::Pred) return member(set->column, offset);
  Expr e{Expr::Kind::In};
  e.set = std::move(set);
  e.offset = offset;
  return make(std::move(e));
}
ExprPtr negation(ExprPtr a) {
  Expr e{Expr::Kind::Not};
  e.args = {std::move(a)};
  return make(std::move(e));
}
ExprPtr conjunction(std::vector<ExprPtr> args) {
  if (args.size() == 1) return args[0];
  Expr e{Expr::Kind::And};
  e.args = std::move(args);
  return make(std::move(e));
}
ExprPtr disjunction(std::vector<ExprPtr> args) {
  if (args.size() == 1) return args[0];
  Expr e{Expr::Kind::Or};
  e.args = std::move(args);
  return make(std::move(e));
}
ExprPtr implication(ExprPtr a, ExprPtr b) {
  Expr e{Expr::Kind::Implies};
  e.args = {std::move(a), std::move(b)};
  return make(std::move(e));
}
ExprPtr iff(ExprPtr a, ExprPtr b) {
  Expr e{Expr::Kind::Iff};
  e.args = {std::move(a), std::move(b)};
  return make(std::move(e));
}
}  // namespace expr

Alphabet MonadicSentence::alphabet() const {
  return Alphabet(std::vector<std::string>(columns.begin(), columns.begin() + free_count));
}

// Window and printing -------------------------------------------------------------

namespace {

struct WindowRecorder {
  Window w;
  bool top() { return true; }
  bool bottom() { return false; }
  bool member(int, int off) {
    note(off);
    return true;
  }
  bool exists(int off) {
    note(off);
    return true;
  }
  bool negate(bool v) { return v; }
  bool conj(bool a, bool) { return a; }
  bool disj(bool a, bool) { return a; }
  void note(int off) {
    w.lo = std::min(w.lo, off);
    w.hi = std::max(w.hi, off);
  }
};

std::string position(int offset) {
  if (offset == 0) return "x";
  if (offset > 0) return "x+" + std::to_string(offset);
  return "x-" + std::to_string(-offset);
}

void print_set(std::ostream& os, const SetTerm& t, const MonadicSentence& s) {
  using K = SetTerm::Kind;
  switch (t.kind) {
    case K::Pred: os << s.columns.at(t.column); return;
    case K::Alive: os << "ALIVE"; return;
    case K::Empty: os << "empty"; return;
    case K::LastSingleton: os << "{last}"; return;
    case K::ShiftBack: os << "("; print_set(os, *t.a, s); os << " - 1)"; return;
    default: break;
  }
  const char* op = t.kind == K::Union ? " union " : t.kind == K::Inter ? " inter " : " \\ ";
  os << "(";
  print_set(os, *t.a, s);
  os << op;
  print_set(os, *t.b, s);
  os << ")";
}

void print_expr(std::ostream& os, const Expr& e, const MonadicSentence& s) {
  using K = Expr::Kind;
  auto nary = [&](const char* op) {
    os << "(";
    for (std::size_t i = 0; i < e.args.size(); ++i) {
      if (i) os << op;
      print_expr(os, *e.args[i], s);
    }
    os << ")";
  };
  switch (e.kind) {
    case K::True: os << "true"; return;
    case K::False: os << "false"; return;
    case K::Guard:
      switch (e.guard) {
        case Guard::First: os << "x=0"; return;
        case Guard::Last: os << "x=last"; return;
        case Guard::NotLast: os << "x!=last"; return;
        case Guard::Positive: os << "x>0"; return;
      }
      return;
    case K::Member: os << s.columns.at(e.column) << "(" << position(e.offset) << ")"; return;
    case K::In: os << position(e.offset) << " in "; print_set(os, *e.set, s); return;
    case K::Not: os << "!"; print_expr(os, *e.args[0], s); return;
    case K::And: nary(" & "); return;
    case K::Or: nary(" | "); return;
    case K::Implies: nary(" -> "); return;
    case K::Iff: nary(" <-> "); return;
  }
}

}  // namespace

Window window_of(const Expr& e) {
  WindowRecorder r;
  evaluate(e, r);
  return r.w;
}

std::string to_string(const SetTerm& t, const MonadicSentence& s) {
  std::ostringstream os;
  print_set(os, t, s);
  return os.str();
}

std::string to_string(const Expr& e, const MonadicSentence& s) {
  std::ostringstream os;
  print_expr(os, e, s);
  return os.str();
}

std::string to_string(const MonadicSentence& s) {
  std::ostringstream os;
  os << "ex2";
  for (std::size_t c = s.free_count; c < s.columns.size(); ++c)
    os << (c == s.free_count ? " " : ", ") << s.columns[c];
  os << ":\n";
  os << "init[x=0]: " << to_string(*s.init, s) << "\n";
  for (const Clause& c : s.matrix) os << c.label << ": " << to_string(*c.body, s) << "\n";
  return os.str();
}

// Configurations ----------------------------------------------------------------------

void EncodingConfig::validate() const {
  if (norm == NormalForm::Bnf && constraint == Constraint::Sloppy)
    throw ConfigError("the sloppy constraint form requires negation normal form");
}

std::string EncodingConfig::name() const {
  std::string s = norm == NormalForm::Bnf ? "bnf" : "nnf";
  s += constraint == Constraint::Fussy ? "-fussy" : "-sloppy";
  s += vars == Variables::Full ? "-full" : "-lean";
  return s;
}

std::vector<EncodingConfig> all_configs() {
  using enum NormalForm;
  using enum Constraint;
  using enum Variables;
  return {{Bnf, Fussy, Full}, {Bnf, Fussy, Lean},   {Nnf, Fussy, Full},
          {Nnf, Fussy, Lean}, {Nnf, Sloppy, Full}, {Nnf, Sloppy, Lean}};
}

EncodingConfig parse_config(const std::string& name) {
  for (const EncodingConfig& c : all_configs())
    if (c.name() == name) return c;
  if (name == "bnf-sloppy-full")
    return {NormalForm::Bnf, Constraint::Sloppy, Variables::Full};
  if (name == "bnf-sloppy-lean")
    return {NormalForm::Bnf, Constraint::Sloppy, Variables::Lean};
  throw ConfigError("unknown encoding '" + name + "'");
}

// Encoding ------------------------------------------------------------------------------

namespace {

class MsoBuilder {
 public:
  MsoBuilder(LtlfFormula f, const EncodingConfig& cfg, const std::vector<std::string>& alphabet)
      : f_(f), cfg_(cfg) {
    std::vector<std::string> atoms = alphabet.empty() ? atoms_of(f) : alphabet;
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    for (const std::string& a : atoms_of(f))
      if (!std::binary_search(atoms.begin(), atoms.end(), a))
        throw Error("atom '" + a + "' missing from the encoding alphabet");
    enc_.config = cfg;
    enc_.sentence.columns = atoms;
    enc_.sentence.free_count = atoms.size();
    for (std::size_t i = 0; i < atoms.size(); ++i) atom_col_[atoms[i]] = static_cast<int>(i);
  }

  MsoEncoding build() {
    const auto cl = closure(f_);
    const bool lean = cfg_.vars == Variables::Lean;
    int ordinal = 0;
    for (LtlfFormula theta : cl.members) {
      if (theta.is_atomic()) continue;
      if (lean && !is_until_release(theta)) continue;
      std::string name = "Q" + std::to_string(++ordinal);
      while (atom_col_.count(name)) name += "_";
      pred_col_[theta.node()] = static_cast<int>(enc_.sentence.columns.size());
      enc_.sentence.columns.push_back(name);
      enc_.predicate_for.push_back(theta);
    }
    enc_.sentence.init = ref(f_, 0);
    for (LtlfFormula theta : enc_.predicate_for)
      enc_.sentence.matrix.push_back({"t(" + to_string(theta) + ")", clause(theta)});
    return std::move(enc_);
  }

  SetTermPtr lean(LtlfFormula theta) const {
    switch (theta.op()) {
      case Op::True: return term::alive();
      case Op::False: return term::empty();
      case Op::Atom: return term::pred(atom_col_.at(theta.atom_name()));
      case Op::Not: return term::diff(term::alive(), lean(theta.child()));
      case Op::And: return term::inter(lean(theta.lhs()), lean(theta.rhs()));
      case Op::Or: return term::unite(lean(theta.lhs()), lean(theta.rhs()));
      case Op::Implies:
        return term::unite(term::diff(term::alive(), lean(theta.lhs())), lean(theta.rhs()));
      case Op::Next: return term::diff(term::shift_back(lean(theta.child())), term::last());
      case Op::WeakNext: return term::unite(term::shift_back(lean(theta.child())), term::last());
      default: {
        auto it = pred_col_.find(theta.node());
        if (it == pred_col_.end()) throw Error("no predicate for " + to_string(theta));
        return term::pred(it->second);
      }
    }
  }

  void adopt(const MsoEncoding& enc) {
    for (std::size_t i = 0; i < enc.predicate_for.size(); ++i)
      pred_col_[enc.predicate_for[i].node()] =
          static_cast<int>(enc.sentence.free_count + i);
  }

 private:
  ExprPtr ref(LtlfFormula theta, int offset) const {
    if (cfg_.vars == Variables::Lean) return expr::in(lean(theta), offset);
    switch (theta.op()) {
      case Op::True: return expr::truth(true);
      case Op::False: return expr::truth(false);
      case Op::Atom: return expr::member(atom_col_.at(theta.atom_name()), offset);
      default: return expr::member(pred_col_.at(theta.node()), offset);
    }
  }

  ExprPtr clause(LtlfFormula theta) const {
    using namespace expr;
    ExprPtr self = member(pred_col_.at(theta.node()), 0);
    ExprPtr self_next = member(pred_col_.at(theta.node()), 1);
    ExprPtr rhs;
    switch (theta.op()) {
      case Op::Not: rhs = negation(ref(theta.child(), 0)); break;
      case Op::And: rhs = conjunction({ref(theta.lhs(), 0), ref(theta.rhs(), 0)}); break;
      case Op::Or: rhs = disjunction({ref(theta.lhs(), 0), ref(theta.rhs(), 0)}); break;
      case Op::Implies: rhs = implication(ref(theta.lhs(), 0), ref(theta.rhs(), 0)); break;
      case Op::Next: rhs = conjunction({guard(Guard::NotLast), ref(theta.child(), 1)}); break;
      case Op::WeakNext: rhs = disjunction({guard(Guard::Last), ref(theta.child(), 1)}); break;
      case Op::Until:
        rhs = disjunction({ref(theta.rhs(), 0),
                           conjunction({guard(Guard::NotLast), ref(theta.lhs(), 0), self_next})});
        break;
      case Op::Release:
        rhs = conjunction({ref(theta.rhs(), 0),
                           disjunction({guard(Guard::Last), ref(theta.lhs(), 0), self_next})});
        break;
      default:
        throw std::logic_error("no clause for this operator");
    }
    return cfg_.constraint == Constraint::Fussy ? iff(self, rhs) : implication(self, rhs);
  }

  LtlfFormula f_;
  EncodingConfig cfg_;
  MsoEncoding enc_;
  std::map<std::string, int> atom_col_;
  std::unordered_map<const FormulaNode*, int> pred_col_;
};

}  // namespace

MsoEncoding encode_mso_unchecked(LtlfFormula f, const EncodingConfig& cfg,
                                 const std::vector<std::string>& alphabet) {
  return MsoBuilder(f, cfg, alphabet).build();
}

MsoEncoding encode_mso(LtlfFormula f, const EncodingConfig& cfg,
                       const std::vector<std::string>& alphabet) {
  cfg.validate();
  if (cfg.norm == NormalForm::Bnf && !is_bnf(f))
    throw ConfigError("formula is not in boolean normal form: " + to_string(f));
  if (cfg.norm == NormalForm::Nnf && !is_nnf(f))
    throw ConfigError("formula is not in negation normal form: " + to_string(f));
  return encode_mso_unchecked(f, cfg, alphabet);
}

SetTermPtr lean_term(const MsoEncoding& enc, LtlfFormula theta) {
  const auto& cols = enc.sentence.columns;
  std::vector<std::string> atoms(cols.begin(), cols.begin() + enc.sentence.free_count);
  EncodingConfig cfg = enc.config;
  cfg.vars = Variables::Lean;
  MsoBuilder b(theta, cfg, atoms);
  b.adopt(enc);
  return b.lean(theta);
}

// Evaluation ------------------------------------------------------------------------------

namespace {

struct MaskContext {
  const Extents& ext;
  std::uint64_t domain;

  std::uint64_t top() const { return domain; }
  std::uint64_t bottom() const { return 0; }
  std::uint64_t shifted(std::uint64_t v, int off) const {
    if (off >= 64 || off <= -64) return 0;
    return (off >= 0 ? v >> off : v << -off) & domain;
  }
  std::uint64_t member(int col, int off) const { return shifted(ext[col], off); }
  std::uint64_t exists(int off) const { return shifted(domain, off); }
  std::uint64_t negate(std::uint64_t v) const { return ~v & domain; }
  std::uint64_t conj(std::uint64_t a, std::uint64_t b) const { return a & b; }
  std::uint64_t disj(std::uint64_t a, std::uint64_t b) const { return a | b; }
};

std::uint64_t domain_of(std::size_t size) {
  if (size == 0 || size > 64) throw Error("structure size must be 1..64");
  return size == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size) - 1;
}

bool init_holds(const MonadicSentence& s, const MaskContext& ctx) {
  MaskContext c = ctx;
  return evaluate(*s.init, c) & 1;
}

bool clause_holds(const Expr& e, const MaskContext& ctx) {
  MaskContext c = ctx;
  return evaluate(e, c) == ctx.domain;
}

void collect_columns(const Expr& e, std::vector<int>& out);

void collect_set_columns(const SetTerm& t, std::vector<int>& out) {
  if (t.kind == SetTerm::Kind::Pred) out.push_back(t.column);
  if (t.a) collect_set_columns(*t.a, out);
  if (t.b) collect_set_columns(*t.b, out);
}

void collect_columns(const Expr& e, std::vector<int>& out) {
  if (e.kind == Expr::Kind::Member) out.push_back(e.column);
  if (e.kind == Expr::Kind::In) collect_set_columns(*e.set, out);
  for (const auto& a : e.args) collect_columns(*a, out);
}

int max_column(const Expr& e) {
  std::vector<int> cols;
  collect_columns(e, cols);
  return cols.empty() ? -1 : *std::max_element(cols.begin(), cols.end());
}

}  // namespace

bool eval_sentence_under(const MonadicSentence& s, std::size_t size, const Extents& ext) {
  MaskContext ctx{ext, domain_of(size)};
  if (!init_holds(s, ctx)) return false;
  for (const Clause& c : s.matrix)
    if (!clause_holds(*c.body, ctx)) return false;
  return true;
}

std::uint64_t eval_set_under(const SetTerm& t, std::size_t size, const Extents& ext) {
  MaskContext ctx{ext, domain_of(size)};
  return evaluate_set(t, 0, ctx);
}

Extents free_extents(const MonadicSentence& s, const MonadicStructure& m) {
  Extents ext(s.columns.size(), 0);
  for (std::size_t c = 0; c < s.free_count; ++c) {
    auto it = m.extents.find(s.columns[c]);
    if (it == m.extents.end()) throw Error("structure lacks predicate '" + s.columns[c] + "'");
    ext[c] = it->second;
  }
  return ext;
}

bool eval_sentence_bruteforce(const MonadicStructure& m, const MonadicSentence& s,
                              std::size_t max_bits) {
  const std::size_t q = s.quantified_count();
  if (q * m.size > max_bits)
    throw BudgetExceeded("brute force needs " + std::to_string(q * m.size) + " bits, cap is " +
                         std::to_string(max_bits));
  Extents ext = free_extents(s, m);
  MaskContext ctx{ext, domain_of(m.size)};

  // Each check runs as soon as the last column it mentions is assigned.
  const int first_q = static_cast<int>(s.free_count);
  std::vector<std::vector<const Expr*>> checks(q + 1);
  auto slot = [&](const Expr& e) {
    int c = max_column(e);
    return c < first_q ? 0 : static_cast<std::size_t>(c - first_q + 1);
  };
  for (const Clause& c : s.matrix) checks[slot(*c.body)].push_back(c.body.get());
  const std::size_t init_slot = slot(*s.init);

  auto passes = [&](std::size_t level) {
    if (level == init_slot && !init_holds(s, ctx)) return false;
    for (const Expr* e : checks[level])
      if (!clause_holds(*e, ctx)) return false;
    return true;
  };

  const std::uint64_t limit = std::uint64_t{1} << m.size;
  std::function<bool(std::size_t)> search = [&](std::size_t level) -> bool {
    if (level == q) return true;
    const std::size_t col = s.free_count + level;
    for (std::uint64_t v = 0; v < limit; ++v) {
      ext[col] = v;
      if (passes(level + 1) && search(level + 1)) return true;
    }
    ext[col] = 0;
    return false;
  };
  return passes(0) && search(0);
}

Extents canonical_witness(const Trace& t, const MsoEncoding& enc) {
  Extents ext = free_extents(enc.sentence, MonadicStructure::of(t));
  for (std::size_t i = 0; i < enc.predicate_for.size(); ++i) {
    std::uint64_t v = 0;
    for (std::size_t x = 0; x < t.size(); ++x)
      if (eval_ltlf_at(t, enc.predicate_for[i], x)) v |= std::uint64_t{1} << x;
    ext[enc.sentence.free_count + i] = v;
  }
  return ext;
}

bool eval_sentence_witness(const Trace& t, LtlfFormula f, const MsoEncoding& enc) {
  const auto cl = closure(f);
  std::size_t expected = 0;
  for (LtlfFormula theta : cl.members) {
    if (theta.is_atomic()) continue;
    if (enc.config.vars == Variables::Lean && !is_until_release(theta)) continue;
    ++expected;
  }
  if (expected != enc.predicate_for.size() ||
      enc.predicate_for.size() != enc.sentence.quantified_count())
    throw Error("sentence does not match the closure of " + to_string(f));
  for (LtlfFormula theta : enc.predicate_for)
    if (!cl.contains(theta)) throw Error("sentence predicate outside the closure of " + to_string(f));
  return eval_sentence_under(enc.sentence, t.size(), canonical_witness(t, enc));
}

}  // namespace ltlf

#include "ltlf2dfa/fol.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>

#include "ltlf2dfa/errors.hpp"

namespace ltlf {

MonadicStructure MonadicStructure::of(const Trace& t) {
  if (t.size() == 0 || t.size() > kMaxSize)
    throw Error("monadic structures need 1.." + std::to_string(kMaxSize) + " positions");
  MonadicStructure s;
  s.size = t.size();
  for (std::size_t i = 0; i < t.alphabet.size(); ++i) {
    std::uint64_t ext = 0;
    for (std::size_t x = 0; x < t.size(); ++x)
      if (t.holds(x, i)) ext |= std::uint64_t{1} << x;
    s.extents[t.alphabet.atom(i)] = ext;
  }
  return s;
}

namespace fol {

using K = FolFormula::Kind;
using TK = FolTerm::Kind;

FolTermPtr var(std::string name) { return std::make_shared<FolTerm>(FolTerm{TK::Var, std::move(name), nullptr}); }
FolTermPtr zero() { return std::make_shared<FolTerm>(FolTerm{TK::Zero, {}, nullptr}); }
FolTermPtr last() { return std::make_shared<FolTerm>(FolTerm{TK::Last, {}, nullptr}); }
FolTermPtr succ(FolTermPtr t) { return std::make_shared<FolTerm>(FolTerm{TK::Succ, {}, std::move(t)}); }
FolTermPtr pred(FolTermPtr t) { return std::make_shared<FolTerm>(FolTerm{TK::Pred, {}, std::move(t)}); }

namespace {
FolPtr make(K kind, std::string name = {}, FolTermPtr l = nullptr, FolTermPtr r = nullptr,
            FolPtr a = nullptr, FolPtr b = nullptr) {
  return std::make_shared<FolFormula>(
      FolFormula{kind, std::move(name), std::move(l), std::move(r), std::move(a), std::move(b)});
}
}  // namespace

FolPtr truth(bool value) { return make(value ? K::True : K::False); }
FolPtr apply(std::string predicate, FolTermPtr t) { return make(K::Apply, std::move(predicate), std::move(t)); }
FolPtr compare(K kind, FolTermPtr l, FolTermPtr r) { return make(kind, {}, std::move(l), std::move(r)); }
FolPtr negation(FolPtr f) { return make(K::Not, {}, nullptr, nullptr, std::move(f)); }
FolPtr conjunction(FolPtr a, FolPtr b) { return make(K::And, {}, nullptr, nullptr, std::move(a), std::move(b)); }
FolPtr disjunction(FolPtr a, FolPtr b) { return make(K::Or, {}, nullptr, nullptr, std::move(a), std::move(b)); }
FolPtr implication(FolPtr a, FolPtr b) { return make(K::Implies, {}, nullptr, nullptr, std::move(a), std::move(b)); }
FolPtr exists(std::string v, FolPtr body) { return make(K::Exists, std::move(v), nullptr, nullptr, std::move(body)); }
FolPtr forall(std::string v, FolPtr body) { return make(K::Forall, std::move(v), nullptr, nullptr, std::move(body)); }

}  // namespace fol

namespace {

using namespace fol;
using K = FolFormula::Kind;
using TK = FolTerm::Kind;

class Encoder {
 public:
  FolPtr future(const FormulaNode* n, const FolTermPtr& x) {
    switch (n->op()) {
      case Op::True: return truth(true);
      case Op::False: return truth(false);
      case Op::Atom: return apply(n->name(), x);
      case Op::Not: return negation(future(n->left(), x));
      case Op::And: return conjunction(future(n->left(), x), future(n->right(), x));
      case Op::Or: return disjunction(future(n->left(), x), future(n->right(), x));
      case Op::Implies: return implication(future(n->left(), x), future(n->right(), x));
      case Op::Next: return next(n->left(), x);
      case Op::WeakNext:
        return disjunction(compare(K::Eq, x, last()), next(n->left(), x));
      case Op::Until: {
        auto y = fresh("y"), z = fresh("z");
        auto vy = var(y), vz = var(z);
        auto inner = forall(z, implication(conjunction(compare(K::Le, x, vz), compare(K::Lt, vz, vy)),
                                           future(n->left(), vz)));
        return exists(y, conjunction(conjunction(between(x, vy, last()), future(n->right(), vy)), inner));
      }
      case Op::Release: {
        auto y = fresh("y"), z = fresh("z");
        auto vy = var(y), vz = var(z);
        auto inner = forall(z, implication(conjunction(compare(K::Le, x, vz), compare(K::Le, vz, vy)),
                                           future(n->right(), vz)));
        auto some = exists(y, conjunction(conjunction(between(x, vy, last()), future(n->left(), vy)), inner));
        auto w = fresh("z");
        auto vw = var(w);
        auto always = forall(w, implication(between(x, vw, last()), future(n->right(), vw)));
        return disjunction(some, always);
      }
      default:
        throw std::logic_error("past operator in LTLf formula");
    }
  }

  FolPtr past(const FormulaNode* n, const FolTermPtr& x) {
    switch (n->op()) {
      case Op::True: return truth(true);
      case Op::False: return truth(false);
      case Op::Atom: return apply(n->name(), x);
      case Op::Not: return negation(past(n->left(), x));
      case Op::And: return conjunction(past(n->left(), x), past(n->right(), x));
      case Op::Or: return disjunction(past(n->left(), x), past(n->right(), x));
      case Op::Yesterday: {
        auto y = fresh("y");
        auto vy = var(y);
        return exists(y, conjunction(conjunction(compare(K::Eq, vy, pred(x)), compare(K::Le, zero(), vy)),
                                     past(n->left(), vy)));
      }
      case Op::Since: {
        auto y = fresh("y"), z = fresh("z");
        auto vy = var(y), vz = var(z);
        auto inner = forall(z, implication(conjunction(compare(K::Lt, vy, vz), compare(K::Le, vz, x)),
                                           past(n->left(), vz)));
        return exists(y, conjunction(conjunction(between(zero(), vy, x), past(n->right(), vy)), inner));
      }
      default:
        throw std::logic_error("future operator in PLTLf formula");
    }
  }

 private:
  FolPtr next(const FormulaNode* child, const FolTermPtr& x) {
    auto y = fresh("y");
    auto vy = var(y);
    return exists(y, conjunction(compare(K::Eq, vy, succ(x)), future(child, vy)));
  }

  static FolPtr between(const FolTermPtr& lo, const FolTermPtr& v, const FolTermPtr& hi) {
    return conjunction(compare(K::Le, lo, v), compare(K::Le, v, hi));
  }

  std::string fresh(const char* prefix) { return prefix + std::to_string(++counter_); }

  int counter_ = 0;
};

using Env = std::map<std::string, long>;

long term_value(const MonadicStructure& s, const FolTermPtr& t, const Env& env) {
  switch (t->kind) {
    case TK::Var: {
      auto it = env.find(t->var);
      if (it == env.end()) throw Error("unbound variable '" + t->var + "'");
      return it->second;
    }
    case TK::Zero: return 0;
    case TK::Last: return static_cast<long>(s.last());
    case TK::Succ: return term_value(s, t->arg, env) + 1;
    case TK::Pred: return term_value(s, t->arg, env) - 1;
  }
  return 0;
}

bool eval(const MonadicStructure& s, const FolPtr& f, Env& env) {
  switch (f->kind) {
    case K::True: return true;
    case K::False: return false;
    case K::Apply: {
      auto it = s.extents.find(f->name);
      if (it == s.extents.end()) throw Error("unknown predicate '" + f->name + "'");
      long v = term_value(s, f->lhs, env);
      if (v < 0 || v > static_cast<long>(s.last())) return false;
      return (it->second >> v) & 1;
    }
    case K::Eq: return term_value(s, f->lhs, env) == term_value(s, f->rhs, env);
    case K::Neq: return term_value(s, f->lhs, env) != term_value(s, f->rhs, env);
    case K::Lt: return term_value(s, f->lhs, env) < term_value(s, f->rhs, env);
    case K::Le: return term_value(s, f->lhs, env) <= term_value(s, f->rhs, env);
    case K::Not: return !eval(s, f->a, env);
    case K::And: return eval(s, f->a, env) && eval(s, f->b, env);
    case K::Or: return eval(s, f->a, env) || eval(s, f->b, env);
    case K::Implies: return !eval(s, f->a, env) || eval(s, f->b, env);
    case K::Exists:
    case K::Forall: {
      const bool want = f->kind == K::Exists;
      auto saved = env.find(f->name) != env.end() ? std::optional<long>(env[f->name]) : std::nullopt;
      bool result = !want;
      for (long v = 0; v <= static_cast<long>(s.last()); ++v) {
        env[f->name] = v;
        if (eval(s, f->a, env) == want) {
          result = want;
          break;
        }
      }
      if (saved)
        env[f->name] = *saved;
      else
        env.erase(f->name);
      return result;
    }
  }
  return false;
}

void print_term(std::ostream& os, const FolTermPtr& t) {
  switch (t->kind) {
    case TK::Var: os << t->var; break;
    case TK::Zero: os << "0"; break;
    case TK::Last: os << "last"; break;
    case TK::Succ: print_term(os, t->arg); os << "+1"; break;
    case TK::Pred: print_term(os, t->arg); os << "-1"; break;
  }
}

void print(std::ostream& os, const FolPtr& f) {
  auto binop = [&](const char* sym) {
    os << "(";
    print(os, f->a);
    os << " " << sym << " ";
    print(os, f->b);
    os << ")";
  };
  auto cmp = [&](const char* sym) {
    print_term(os, f->lhs);
    os << " " << sym << " ";
    print_term(os, f->rhs);
  };
  switch (f->kind) {
    case K::True: os << "true"; break;
    case K::False: os << "false"; break;
    case K::Apply: os << f->name << "("; print_term(os, f->lhs); os << ")"; break;
    case K::Eq: cmp("="); break;
    case K::Neq: cmp("!="); break;
    case K::Lt: cmp("<"); break;
    case K::Le: cmp("<="); break;
    case K::Not: os << "!"; print(os, f->a); break;
    case K::And: binop("&"); break;
    case K::Or: binop("|"); break;
    case K::Implies: binop("->"); break;
    case K::Exists: os << "(ex " << f->name << ". "; print(os, f->a); os << ")"; break;
    case K::Forall: os << "(all " << f->name << ". "; print(os, f->a); os << ")"; break;
  }
}

}  // namespace

FolPtr encode_fol(LtlfFormula f) { return Encoder().future(f.node(), fol::zero()); }
FolPtr encode_fol_past(PltlfFormula f) { return Encoder().past(f.node(), fol::last()); }

bool eval_fol(const MonadicStructure& s, const FolPtr& f) {
  Env env;
  return eval(s, f, env);
}

std::string to_string(const FolPtr& f) {
  std::ostringstream os;
  print(os, f);
  return os.str();
}

std::string to_string(const FolTermPtr& t) {
  std::ostringstream os;
  print_term(os, t);
  return os.str();
}

std::size_t quantifier_count(const FolPtr& f) {
  if (!f) return 0;
  std::size_t own = (f->kind == K::Exists || f->kind == K::Forall) ? 1 : 0;
  return own + quantifier_count(f->a) + quantifier_count(f->b);
}

}  // namespace ltlf

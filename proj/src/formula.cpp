#include "ltlf2dfa/formula.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "ltlf2dfa/errors.hpp"

namespace ltlf {

int arity(Op op) noexcept {
  switch (op) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return 0;
    case Op::Not:
    case Op::Next:
    case Op::WeakNext:
    case Op::Yesterday:
      return 1;
    default:
      return 2;
  }
}

bool allowed_in(Op op, Logic logic) noexcept {
  switch (op) {
    case Op::Implies:
    case Op::Next:
    case Op::WeakNext:
    case Op::Until:
    case Op::Release:
      return logic == Logic::Future;
    case Op::Yesterday:
    case Op::Since:
      return logic == Logic::Past;
    default:
      return true;
  }
}

std::string_view op_symbol(Op op) noexcept {
  switch (op) {
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Atom: return "atom";
    case Op::Not: return "!";
    case Op::And: return "&";
    case Op::Or: return "|";
    case Op::Implies: return "->";
    case Op::Next: return "X";
    case Op::WeakNext: return "N";
    case Op::Until: return "U";
    case Op::Release: return "R";
    case Op::Yesterday: return "Y";
    case Op::Since: return "S";
  }
  return "?";
}

// FormulaStore ----------------------------------------------------------------

std::size_t FormulaStore::KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = static_cast<std::size_t>(k.op) * 0x9e3779b97f4a7c15ULL;
  h ^= std::hash<std::string_view>{}(k.name) + 0x9e3779b9 + (h << 6) + (h >> 2);
  h ^= std::hash<const void*>{}(k.left) + 0x9e3779b9 + (h << 6) + (h >> 2);
  h ^= std::hash<const void*>{}(k.right) + 0x9e3779b9 + (h << 6) + (h >> 2);
  return h;
}

void FormulaStore::check(Op op, Logic logic, int expected_arity) {
  if (ltlf::arity(op) != expected_arity)
    throw std::invalid_argument("operator " + std::string(op_symbol(op)) +
                                " has the wrong arity");
  if (!allowed_in(op, logic))
    throw std::invalid_argument("operator " + std::string(op_symbol(op)) +
                                " is not part of this logic");
}

const FormulaNode* FormulaStore::intern(Op op, std::string_view name, const FormulaNode* l,
                                        const FormulaNode* r) {
  Key probe{op, name, l, r};
  if (auto it = table_.find(probe); it != table_.end()) return it->second;

  FormulaNode& n = nodes_.emplace_back();
  n.op_ = op;
  n.name_ = std::string(name);
  n.left_ = l;
  n.right_ = r;
  n.hash_ = KeyHash{}(probe);
  n.depth_ = 0;
  if (l) n.depth_ = std::max(n.depth_, l->depth() + 1);
  if (r) n.depth_ = std::max(n.depth_, r->depth() + 1);
  n.id_ = nodes_.size() - 1;
  table_.emplace(Key{op, n.name_, l, r}, &n);
  return &n;
}

const FormulaNode* FormulaStore::copy_from(const FormulaNode* n) {
  const FormulaNode* l = n->left() ? copy_from(n->left()) : nullptr;
  const FormulaNode* r = n->right() ? copy_from(n->right()) : nullptr;
  return intern(n->op(), n->name(), l, r);
}

// Printing ----------------------------------------------------------------------

namespace {

int precedence(Op op) {
  switch (op) {
    case Op::Implies: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    case Op::Until:
    case Op::Release:
    case Op::Since: return 4;
    case Op::Not:
    case Op::Next:
    case Op::WeakNext:
    case Op::Yesterday: return 5;
    default: return 6;
  }
}

bool is_eventually(const FormulaNode* n) {
  return n->op() == Op::Until && n->left()->op() == Op::True;
}
bool is_globally(const FormulaNode* n) {
  return n->op() == Op::Release && n->left()->op() == Op::False;
}

int effective_precedence(const FormulaNode* n) {
  if (is_eventually(n) || is_globally(n)) return 5;
  return precedence(n->op());
}

void print_full(std::ostream& os, const FormulaNode* n) {
  switch (n->op()) {
    case Op::True: os << "true"; return;
    case Op::False: os << "false"; return;
    case Op::Atom: os << n->name(); return;
    case Op::Not: os << "(!"; print_full(os, n->left()); os << ")"; return;
    case Op::Next:
    case Op::WeakNext:
    case Op::Yesterday:
      os << "(" << op_symbol(n->op()) << " ";
      print_full(os, n->left());
      os << ")";
      return;
    default:
      os << "(";
      print_full(os, n->left());
      os << " " << op_symbol(n->op()) << " ";
      print_full(os, n->right());
      os << ")";
  }
}

void print_compact(std::ostream& os, const FormulaNode* n);

void print_child(std::ostream& os, const FormulaNode* child, int min_prec) {
  if (effective_precedence(child) < min_prec) {
    os << "(";
    print_compact(os, child);
    os << ")";
  } else {
    print_compact(os, child);
  }
}

void print_compact(std::ostream& os, const FormulaNode* n) {
  if (is_eventually(n) || is_globally(n)) {
    os << (is_eventually(n) ? "F " : "G ");
    print_child(os, n->right(), 5);
    return;
  }
  const int prec = precedence(n->op());
  switch (n->op()) {
    case Op::True: os << "true"; return;
    case Op::False: os << "false"; return;
    case Op::Atom: os << n->name(); return;
    case Op::Not: os << "!"; print_child(os, n->left(), 5); return;
    case Op::Next:
    case Op::WeakNext:
    case Op::Yesterday:
      os << op_symbol(n->op()) << " ";
      print_child(os, n->left(), 5);
      return;
    case Op::And:
    case Op::Or:
      // left-associative
      print_child(os, n->left(), prec);
      os << " " << op_symbol(n->op()) << " ";
      print_child(os, n->right(), prec + 1);
      return;
    default:
      // right-associative: ->, U, R, S
      print_child(os, n->left(), prec + 1);
      os << " " << op_symbol(n->op()) << " ";
      print_child(os, n->right(), prec);
      return;
  }
}

std::string print(const FormulaNode* n, PrintStyle style) {
  std::ostringstream os;
  if (style == PrintStyle::FullParens)
    print_full(os, n);
  else
    print_compact(os, n);
  return os.str();
}

}  // namespace

std::string to_string(LtlfFormula f, PrintStyle style) { return print(f.node(), style); }
std::string to_string(PltlfFormula f, PrintStyle style) { return print(f.node(), style); }
std::ostream& operator<<(std::ostream& os, LtlfFormula f) { return os << to_string(f); }
std::ostream& operator<<(std::ostream& os, PltlfFormula f) { return os << to_string(f); }

// Parsing -----------------------------------------------------------------------

namespace {

enum class Tok { Ident, True, False, Not, And, Or, Implies, LParen, RParen, Unary, Binary, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      std::string word(s.substr(i, j - i));
      Tok kind = Tok::Ident;
      if (word == "true")
        kind = Tok::True;
      else if (word == "false")
        kind = Tok::False;
      else if (word == "X" || word == "N" || word == "F" || word == "G" || word == "Y")
        kind = Tok::Unary;
      else if (word == "U" || word == "R" || word == "S")
        kind = Tok::Binary;
      out.push_back({kind, std::move(word), i});
      i = j;
      continue;
    }
    switch (c) {
      case '!': out.push_back({Tok::Not, "!", i}); ++i; continue;
      case '&': out.push_back({Tok::And, "&", i}); ++i; continue;
      case '|': out.push_back({Tok::Or, "|", i}); ++i; continue;
      case '(': out.push_back({Tok::LParen, "(", i}); ++i; continue;
      case ')': out.push_back({Tok::RParen, ")", i}); ++i; continue;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          out.push_back({Tok::Implies, "->", i});
          i += 2;
          continue;
        }
        break;
      default:
        break;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

template <Logic L>
class Parser {
 public:
  Parser(FormulaStore& store, std::string_view text)
      : store_(store), tokens_(tokenize(text)) {}

  Formula<L> parse() {
    Formula<L> f = implication();
    if (peek().kind != Tok::End) throw ParseError("unexpected token '" + peek().text + "'", peek().pos);
    return f;
  }

 private:
  using F = Formula<L>;

  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }

  F implication() {
    F lhs = disjunction();
    if (peek().kind == Tok::Implies) {
      take();
      F rhs = implication();
      if constexpr (L == Logic::Future)
        return make_implies(store_, lhs, rhs);
      else
        return make_or(store_, make_not(store_, lhs), rhs);
    }
    return lhs;
  }

  F disjunction() {
    F f = conjunction();
    while (peek().kind == Tok::Or) {
      take();
      f = make_or(store_, f, conjunction());
    }
    return f;
  }

  F conjunction() {
    F f = temporal_binary();
    while (peek().kind == Tok::And) {
      take();
      f = make_and(store_, f, temporal_binary());
    }
    return f;
  }

  F temporal_binary() {
    F lhs = unary();
    if (peek().kind == Tok::Binary) {
      const Token& t = take();
      const Op op = t.text == "U" ? Op::Until : t.text == "R" ? Op::Release : Op::Since;
      require_dialect(op, t);
      F rhs = temporal_binary();
      return store_.binary(op, lhs, rhs);
    }
    return lhs;
  }

  F unary() {
    const Token& t = peek();
    if (t.kind == Tok::Not) {
      take();
      return make_not(store_, unary());
    }
    if (t.kind == Tok::Unary) {
      take();
      if (t.text == "F" || t.text == "G") {
        if constexpr (L == Logic::Future) {
          F body = unary();
          return t.text == "F" ? make_eventually(store_, body) : make_globally(store_, body);
        } else {
          throw ParseError("operator '" + t.text + "' is not available in PLTLf", t.pos);
        }
      }
      const Op op = t.text == "X" ? Op::Next : t.text == "N" ? Op::WeakNext : Op::Yesterday;
      require_dialect(op, t);
      return store_.unary(op, unary());
    }
    return primary();
  }

  F primary() {
    const Token& t = take();
    switch (t.kind) {
      case Tok::True: return store_.template constant<L>(true);
      case Tok::False: return store_.template constant<L>(false);
      case Tok::Ident: return store_.template atom<L>(t.text);
      case Tok::LParen: {
        F f = implication();
        if (peek().kind != Tok::RParen) throw ParseError("expected ')'", peek().pos);
        take();
        return f;
      }
      case Tok::End: throw ParseError("unexpected end of input", t.pos);
      default: throw ParseError("unexpected token '" + t.text + "'", t.pos);
    }
  }

  void require_dialect(Op op, const Token& t) const {
    if (!allowed_in(op, L))
      throw ParseError("operator '" + t.text + "' is not available in " +
                           (L == Logic::Future ? "LTLf" : "PLTLf"),
                       t.pos);
  }

  FormulaStore& store_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

LtlfFormula parse_ltlf(FormulaStore& store, std::string_view text) {
  return Parser<Logic::Future>(store, text).parse();
}

PltlfFormula parse_pltlf(FormulaStore& store, std::string_view text) {
  return Parser<Logic::Past>(store, text).parse();
}

// Normal forms --------------------------------------------------------------------

namespace {

LtlfFormula nnf(FormulaStore& s, LtlfFormula f, bool positive) {
  using enum Op;
  switch (f.op()) {
    case True: return s.constant<Logic::Future>(positive);
    case False: return s.constant<Logic::Future>(!positive);
    case Atom: return positive ? f : make_not(s, f);
    case Not: return nnf(s, f.child(), !positive);
    case And:
    case Or: {
      const Op op = positive ? f.op() : (f.op() == And ? Or : And);
      return s.binary(op, nnf(s, f.lhs(), positive), nnf(s, f.rhs(), positive));
    }
    case Implies:
      if (positive) return make_or(s, nnf(s, f.lhs(), false), nnf(s, f.rhs(), true));
      return make_and(s, nnf(s, f.lhs(), true), nnf(s, f.rhs(), false));
    case Next:
      return positive ? make_next(s, nnf(s, f.child(), true))
                      : make_weak_next(s, nnf(s, f.child(), false));
    case WeakNext:
      return positive ? make_weak_next(s, nnf(s, f.child(), true))
                      : make_next(s, nnf(s, f.child(), false));
    case Until:
      return positive ? make_until(s, nnf(s, f.lhs(), true), nnf(s, f.rhs(), true))
                      : make_release(s, nnf(s, f.lhs(), false), nnf(s, f.rhs(), false));
    case Release:
      return positive ? make_release(s, nnf(s, f.lhs(), true), nnf(s, f.rhs(), true))
                      : make_until(s, nnf(s, f.lhs(), false), nnf(s, f.rhs(), false));
    default:
      throw std::logic_error("past operator in LTLf formula");
  }
}

LtlfFormula bnf(FormulaStore& s, LtlfFormula f) {
  using enum Op;
  switch (f.op()) {
    case True:
    case False:
    case Atom: return f;
    case Not: return negate(s, bnf(s, f.child()));
    case And: return make_and(s, bnf(s, f.lhs()), bnf(s, f.rhs()));
    case Or: return make_or(s, bnf(s, f.lhs()), bnf(s, f.rhs()));
    case Implies: return make_or(s, negate(s, bnf(s, f.lhs())), bnf(s, f.rhs()));
    case Next: return make_next(s, bnf(s, f.child()));
    case WeakNext: return negate(s, make_next(s, negate(s, bnf(s, f.child()))));
    case Until: return make_until(s, bnf(s, f.lhs()), bnf(s, f.rhs()));
    case Release:
      return negate(s, make_until(s, negate(s, bnf(s, f.lhs())), negate(s, bnf(s, f.rhs()))));
    default:
      throw std::logic_error("past operator in LTLf formula");
  }
}

PltlfFormula reverse_bnf(FormulaStore& s, LtlfFormula f) {
  using enum Op;
  switch (f.op()) {
    case True: return s.constant<Logic::Past>(true);
    case False: return s.constant<Logic::Past>(false);
    case Atom: return s.atom<Logic::Past>(f.atom_name());
    case Not: return make_not(s, reverse_bnf(s, f.child()));
    case And: return make_and(s, reverse_bnf(s, f.lhs()), reverse_bnf(s, f.rhs()));
    case Or: return make_or(s, reverse_bnf(s, f.lhs()), reverse_bnf(s, f.rhs()));
    case Next: return make_yesterday(s, reverse_bnf(s, f.child()));
    case Until: return make_since(s, reverse_bnf(s, f.lhs()), reverse_bnf(s, f.rhs()));
    default:
      throw std::logic_error("reverse_to_past expects a BNF formula");
  }
}

template <Logic L>
void collect_closure(Formula<L> f, std::unordered_set<const FormulaNode*>& seen,
                     Closure<L>& out) {
  if (seen.count(f.node())) return;
  if (f.arity() >= 1) collect_closure(f.lhs(), seen, out);
  if (f.arity() == 2) collect_closure(f.rhs(), seen, out);
  seen.insert(f.node());
  out.members.push_back(f);
  if (!f.is_atomic()) ++out.non_atomic;
  if (f.op() == Op::Until || f.op() == Op::Release || f.op() == Op::Since) ++out.temporal;
}

template <Logic L>
Closure<L> closure_of(Formula<L> f) {
  Closure<L> c;
  std::unordered_set<const FormulaNode*> seen;
  collect_closure(f, seen, c);
  return c;
}

void collect_atoms(const FormulaNode* n, std::vector<std::string>& out) {
  if (n->op() == Op::Atom) out.push_back(n->name());
  if (n->left()) collect_atoms(n->left(), out);
  if (n->right()) collect_atoms(n->right(), out);
}

std::vector<std::string> atoms_of_node(const FormulaNode* n) {
  std::vector<std::string> out;
  collect_atoms(n, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool all_nodes(const FormulaNode* n, const std::function<bool(const FormulaNode*)>& pred) {
  if (!pred(n)) return false;
  if (n->left() && !all_nodes(n->left(), pred)) return false;
  if (n->right() && !all_nodes(n->right(), pred)) return false;
  return true;
}

}  // namespace

LtlfFormula to_nnf(FormulaStore& store, LtlfFormula f) { return nnf(store, f, true); }
LtlfFormula to_bnf(FormulaStore& store, LtlfFormula f) { return bnf(store, f); }

bool is_nnf(LtlfFormula f) {
  return all_nodes(f.node(), [](const FormulaNode* n) {
    if (n->op() == Op::Implies) return false;
    return n->op() != Op::Not || n->left()->op() == Op::Atom;
  });
}

bool is_bnf(LtlfFormula f) {
  return all_nodes(f.node(), [](const FormulaNode* n) {
    switch (n->op()) {
      case Op::True:
      case Op::False:
      case Op::Atom:
      case Op::Not:
      case Op::And:
      case Op::Or:
      case Op::Next:
      case Op::Until:
        return true;
      default:
        return false;
    }
  });
}

PltlfFormula reverse_to_past(FormulaStore& store, LtlfFormula f) {
  return reverse_bnf(store, to_bnf(store, f));
}

template <Logic L>
std::size_t Closure<L>::index_of(Formula<L> f) const {
  auto it = std::find(members.begin(), members.end(), f);
  return static_cast<std::size_t>(it - members.begin());
}

template struct Closure<Logic::Future>;
template struct Closure<Logic::Past>;

Closure<Logic::Future> closure(LtlfFormula f) { return closure_of(f); }
Closure<Logic::Past> closure(PltlfFormula f) { return closure_of(f); }

std::vector<std::string> atoms_of(LtlfFormula f) { return atoms_of_node(f.node()); }
std::vector<std::string> atoms_of(PltlfFormula f) { return atoms_of_node(f.node()); }

}  // namespace ltlf

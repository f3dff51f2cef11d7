#include "ltlf2dfa/semantics.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "ltlf2dfa/errors.hpp"

namespace ltlf {

// Alphabet -------------------------------------------------------------------

Alphabet::Alphabet() : atoms_(std::make_shared<const std::vector<std::string>>()) {}

Alphabet::Alphabet(std::vector<std::string> atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  if (atoms.size() > kMaxAtoms)
    throw BudgetExceeded("alphabet has " + std::to_string(atoms.size()) + " atoms, at most " +
                         std::to_string(kMaxAtoms) + " supported");
  atoms_ = std::make_shared<const std::vector<std::string>>(std::move(atoms));
}

std::size_t Alphabet::index_of(const std::string& name) const {
  auto it = std::lower_bound(atoms_->begin(), atoms_->end(), name);
  if (it == atoms_->end() || *it != name) return size();
  return static_cast<std::size_t>(it - atoms_->begin());
}

std::string Alphabet::bits(Letter l) const {
  std::string s;
  for (std::size_t i = 0; i < size(); ++i) s += contains(l, i) ? '1' : '0';
  return s;
}

std::string Alphabet::letter_text(Letter l) const {
  std::string s;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!contains(l, i)) continue;
    if (!s.empty()) s += ',';
    s += atom(i);
  }
  return s.empty() ? "-" : s;
}

// Traces ------------------------------------------------------------------------

Trace Trace::reversed() const {
  Trace r{alphabet, letters};
  std::reverse(r.letters.begin(), r.letters.end());
  return r;
}

bool operator<(const Trace& a, const Trace& b) {
  return std::lexicographical_compare(a.letters.begin(), a.letters.end(), b.letters.begin(),
                                      b.letters.end());
}

Trace parse_trace(const Alphabet& alphabet, std::string_view text) {
  Trace t{alphabet, {}};
  std::size_t pos = 0;
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  while (pos < text.size()) {
    std::size_t end = text.find(';', pos);
    const bool terminated = end != std::string_view::npos;
    if (!terminated) end = text.size();
    std::string_view chunk = text.substr(pos, end - pos);
    if (!terminated && trim(chunk).empty()) break;
    chunk = trim(chunk);
    if (chunk.empty()) throw ParseError("empty letter (write '-' for no atoms)", pos);
    Letter l = 0;
    if (chunk != "-") {
      std::size_t start = 0;
      while (start <= chunk.size()) {
        std::size_t comma = chunk.find(',', start);
        if (comma == std::string_view::npos) comma = chunk.size();
        std::string name(trim(chunk.substr(start, comma - start)));
        std::size_t idx = alphabet.index_of(name);
        if (idx == alphabet.size()) throw ParseError("unknown atom '" + name + "'", pos + start);
        l |= alphabet.mask(idx);
        start = comma + 1;
      }
    }
    t.letters.push_back(l);
    pos = end + 1;
  }
  if (t.letters.empty()) throw ParseError("empty trace", 0);
  return t;
}

std::string format_trace(const Trace& t) {
  std::string s;
  for (Letter l : t.letters) {
    s += t.alphabet.letter_text(l);
    s += ';';
  }
  return s;
}

// Evaluation ----------------------------------------------------------------------

namespace {

std::size_t atom_index(const Trace& t, const std::string& name) {
  std::size_t i = t.alphabet.index_of(name);
  if (i == t.alphabet.size()) throw Error("atom '" + name + "' is not in the trace alphabet");
  return i;
}

bool ltl(const Trace& t, const FormulaNode* n, std::size_t x) {
  const std::size_t last = t.last();
  switch (n->op()) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom: return t.holds(x, atom_index(t, n->name()));
    case Op::Not: return !ltl(t, n->left(), x);
    case Op::And: return ltl(t, n->left(), x) && ltl(t, n->right(), x);
    case Op::Or: return ltl(t, n->left(), x) || ltl(t, n->right(), x);
    case Op::Implies: return !ltl(t, n->left(), x) || ltl(t, n->right(), x);
    case Op::Next: return x < last && ltl(t, n->left(), x + 1);
    case Op::WeakNext: return x == last || ltl(t, n->left(), x + 1);
    case Op::Until:
      for (std::size_t y = x; y <= last; ++y) {
        if (ltl(t, n->right(), y)) return true;
        if (!ltl(t, n->left(), y)) return false;
      }
      return false;
    case Op::Release:
      for (std::size_t y = x; y <= last; ++y) {
        if (!ltl(t, n->right(), y)) return false;
        if (ltl(t, n->left(), y)) return true;
      }
      return true;
    default:
      throw std::logic_error("past operator in LTLf formula");
  }
}

bool pltl(const Trace& t, const FormulaNode* n, std::size_t x) {
  switch (n->op()) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom: return t.holds(x, atom_index(t, n->name()));
    case Op::Not: return !pltl(t, n->left(), x);
    case Op::And: return pltl(t, n->left(), x) && pltl(t, n->right(), x);
    case Op::Or: return pltl(t, n->left(), x) || pltl(t, n->right(), x);
    case Op::Yesterday: return x > 0 && pltl(t, n->left(), x - 1);
    case Op::Since:
      for (std::size_t y = x + 1; y-- > 0;) {
        if (pltl(t, n->right(), y)) return true;
        if (!pltl(t, n->left(), y)) return false;
      }
      return false;
    default:
      throw std::logic_error("future operator in PLTLf formula");
  }
}

void check_position(const Trace& t, std::size_t x) {
  if (t.letters.empty()) throw Error("empty trace");
  if (x > t.last())
    throw Error("position " + std::to_string(x) + " outside trace of length " +
                            std::to_string(t.size()));
}

template <class F>
std::vector<Trace> language(F f, const Alphabet& alphabet, std::size_t max_length,
                            std::uint64_t cap) {
  std::vector<Trace> out;
  for (Trace& t : all_traces(alphabet, max_length, cap))
    if (satisfies(t, f)) out.push_back(std::move(t));
  return out;
}

}  // namespace

bool eval_ltlf_at(const Trace& t, LtlfFormula f, std::size_t x) {
  check_position(t, x);
  return ltl(t, f.node(), x);
}

bool eval_pltlf_at(const Trace& t, PltlfFormula f, std::size_t x) {
  check_position(t, x);
  return pltl(t, f.node(), x);
}

std::vector<Trace> all_traces(const Alphabet& alphabet, std::size_t max_length,
                              std::uint64_t cap) {
  if (max_length < 1) throw std::invalid_argument("maximum trace length must be at least 1");
  const std::uint64_t letters = alphabet.letter_count();
  std::uint64_t total = 0, level = 1;
  for (std::size_t len = 1; len <= max_length; ++len) {
    if (level > cap / letters + 1) throw BudgetExceeded("trace enumeration exceeds cap");
    level *= letters;
    total += level;
    if (total > cap) throw BudgetExceeded("trace enumeration exceeds cap");
  }

  std::vector<Trace> out;
  out.reserve(total);
  Trace cur{alphabet, {}};
  auto rec = [&](auto&& self) -> void {
    for (std::uint64_t l = 0; l < letters; ++l) {
      cur.letters.push_back(static_cast<Letter>(l));
      out.push_back(cur);
      if (cur.letters.size() < max_length) self(self);
      cur.letters.pop_back();
    }
  };
  rec(rec);
  return out;
}

std::vector<Trace> bounded_language(LtlfFormula f, const Alphabet& alphabet,
                                    std::size_t max_length, std::uint64_t cap) {
  return language(f, alphabet, max_length, cap);
}

std::vector<Trace> bounded_language(PltlfFormula f, const Alphabet& alphabet,
                                    std::size_t max_length, std::uint64_t cap) {
  return language(f, alphabet, max_length, cap);
}

}  // namespace ltlf

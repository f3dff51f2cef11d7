#include "ltlf2dfa/compiler.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "ltlf2dfa/errors.hpp"

namespace ltlf {

namespace {

struct ClauseInfo {
  ExprPtr body;
  int lo = 0;
  int hi = 0;
};

/// Records the (column, offset) pairs a clause reads.
struct UseRecorder {
  std::vector<std::pair<int, int>> uses;
  bool top() { return true; }
  bool bottom() { return false; }
  bool member(int col, int off) {
    uses.emplace_back(col, off);
    return true;
  }
  bool exists(int) { return true; }
  bool negate(bool v) { return v; }
  bool conj(bool a, bool) { return a; }
  bool disj(bool a, bool) { return a; }
};

struct Layout {
  std::vector<ClauseInfo> clauses;
  std::size_t width = 0;
  std::size_t free = 0;
  int buffer = 1;  // B: letters stored before the incoming one
};

// Init is checked as the clause x=0 -> Init.
Layout layout_of(const MonadicSentence& s) {
  Layout l;
  l.width = s.columns.size();
  l.free = s.free_count;
  if (l.free > l.width) throw Error("sentence has more free columns than columns");
  auto add = [&](ExprPtr body) {
    UseRecorder r;
    evaluate(*body, r);
    for (auto [col, off] : r.uses)
      if (col < 0 || static_cast<std::size_t>(col) >= l.width)
        throw Error("clause reads column " + std::to_string(col) + " outside the sentence");
    Window w = window_of(*body);
    l.clauses.push_back({body, w.lo, w.hi});
    l.buffer = std::max(l.buffer, w.hi - w.lo);
  };
  add(expr::implication(expr::guard(Guard::First), s.init));
  for (const Clause& c : s.matrix) add(c.body);
  return l;
}

/// needed[col][t]: slot t (position n-t after reading position n) is read by
/// a later check or by the end-of-word check.
std::vector<std::vector<bool>> needed_slots(const Layout& l) {
  std::vector<std::vector<bool>> needed(l.width, std::vector<bool>(l.buffer, false));
  for (const ClauseInfo& c : l.clauses) {
    UseRecorder r;
    evaluate(*c.body, r);
    for (auto [col, off] : r.uses)
      for (int t = 0; t <= std::min(c.hi - off - 1, l.buffer - 1); ++t) needed[col][t] = true;
  }
  return needed;
}

// Explicit route ------------------------------------------------------------------

using ExtLetter = std::uint32_t;

/// Window view: index j = base - offset into `win`; absent outside.
struct LetterCtx {
  const std::vector<ExtLetter>& win;
  int base;
  bool present(int off) const {
    const int j = base - off;
    return j >= 0 && j < static_cast<int>(win.size());
  }
  bool top() { return true; }
  bool bottom() { return false; }
  bool member(int col, int off) {
    return present(off) && ((win[base - off] >> col) & 1U);
  }
  bool exists(int off) { return present(off); }
  bool negate(bool v) { return !v; }
  bool conj(bool a, bool b) { return a && b; }
  bool disj(bool a, bool b) { return a || b; }
};

Letter to_letter(ExtLetter e, const Alphabet& a) {
  Letter l = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if ((e >> i) & 1U) l |= a.mask(i);
  return l;
}

// Symbolic route --------------------------------------------------------------------

struct VarMap {
  int buffer;
  unsigned presence(int t) const { return static_cast<unsigned>(t); }
  unsigned incoming(std::size_t col) const {
    return static_cast<unsigned>(buffer + static_cast<int>(col) * (buffer + 1));
  }
  unsigned slot(std::size_t col, int t) const { return incoming(col) + 1 + static_cast<unsigned>(t); }
  unsigned count(std::size_t width) const { return incoming(width); }
};

/// Step mode (shift 1): index 0 is the incoming letter, index j the slot
/// j-1. Acceptance mode (shift 0): index j is slot j.
struct BddCtx {
  BddManager& m;
  const VarMap& vars;
  int base;
  int shift;

  BddRef top() { return BddManager::kTrue; }
  BddRef bottom() { return BddManager::kFalse; }
  BddRef exists(int off) {
    const int j = base - off;
    if (j < 0) return BddManager::kFalse;
    const int t = j - shift;
    if (t < 0) return BddManager::kTrue;
    if (t >= vars.buffer) throw Error("clause reads outside the compiled window");
    return m.var(vars.presence(t));
  }
  BddRef member(int col, int off) {
    const int j = base - off;
    if (j < 0) return BddManager::kFalse;
    const int t = j - shift;
    const auto c = static_cast<std::size_t>(col);
    if (t < 0) return m.var(vars.incoming(c));
    return m.conj(exists(off), m.var(vars.slot(c, t)));
  }
  BddRef negate(BddRef a) { return m.negate(a); }
  BddRef conj(BddRef a, BddRef b) { return m.conj(a, b); }
  BddRef disj(BddRef a, BddRef b) { return m.disj(a, b); }
};

void finish(ExplicitDfa& d, CompileStats* stats) {
  if (!stats) return;
  stats->final_states = d.num_states;
  stats->final_transitions = d.transition_count();
}

}  // namespace

ExplicitDfa compile(const MonadicSentence& s, const CompileOptions& opt, CompileStats* stats) {
  const Layout l = layout_of(s);
  if (l.width > opt.symbolic_width_cap)
    throw BudgetExceeded(std::to_string(l.width) + " columns exceed the cap of " +
                         std::to_string(opt.symbolic_width_cap));
  const Alphabet alphabet = s.alphabet();
  const VarMap vars{l.buffer};
  const unsigned nvars = vars.count(l.width);
  if (nvars >= 0xfff0) throw BudgetExceeded("too many BDD variables");
  BddManager m(nvars, opt.node_cap);
  const auto needed = needed_slots(l);
  const int B = l.buffer;

  // Transition constraint with early quantification of incoming quantified
  // columns that no later step reads.
  std::vector<BddRef> checks;
  for (const ClauseInfo& c : l.clauses) {
    BddCtx ctx{m, vars, c.hi, 1};
    BddRef body = evaluate(*c.body, ctx);
    checks.push_back(m.implies(ctx.exists(0), body));
  }
  // Clauses are conjoined by decreasing first early-quantifiable variable,
  // which for BDD path encodings quantifies children before parents.
  std::vector<bool> early(nvars, false);
  for (std::size_t col = l.free; col < l.width; ++col)
    if (!needed[col][0]) early[vars.incoming(col)] = true;
  std::vector<std::pair<int, BddRef>> keyed;
  for (BddRef c : checks) {
    int key = -1;
    for (unsigned v : m.support(c))
      if (early[v]) {
        key = static_cast<int>(v);
        break;
      }
    keyed.emplace_back(key, c);
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; i < checks.size(); ++i) checks[i] = keyed[i].second;

  std::vector<int> last_use(nvars, -1);
  for (std::size_t i = 0; i < checks.size(); ++i)
    for (unsigned v : m.support(checks[i])) last_use[v] = static_cast<int>(i);
  BddRef trans = BddManager::kTrue;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    opt.deadline.check();
    if (m.size() > opt.node_cap / 4 * 3) {
      std::vector<BddRef> keep(checks.begin() + static_cast<std::ptrdiff_t>(i), checks.end());
      keep.push_back(trans);
      keep = m.collect_garbage(keep);
      trans = keep.back();
      std::copy(keep.begin(), keep.end() - 1, checks.begin() + static_cast<std::ptrdiff_t>(i));
    }
    std::vector<bool> q(nvars, false);
    bool any = false;
    for (std::size_t col = l.free; col < l.width; ++col) {
      const unsigned w = vars.incoming(col);
      if (!needed[col][0] && last_use[w] == static_cast<int>(i)) q[w] = any = true;
    }
    trans = any ? m.and_exists(trans, checks[i], q) : m.conj(trans, checks[i]);
  }

  BddRef acc = m.var(vars.presence(0));
  for (const ClauseInfo& c : l.clauses)
    for (int t = 0; t < c.hi; ++t) {
      BddCtx ctx{m, vars, t, 0};
      acc = m.conj(acc, m.implies(m.var(vars.presence(t)), evaluate(*c.body, ctx)));
    }

  const std::size_t letters = static_cast<std::size_t>(alphabet.letter_count());
  std::vector<BddRef> step(letters);
  for (Letter a = 0; a < letters; ++a) {
    BddRef cube = BddManager::kTrue;
    for (std::size_t i = l.free; i-- > 0;)
      cube = m.conj(cube, alphabet.contains(a, i) ? m.var(vars.incoming(i))
                                                  : m.nvar(vars.incoming(i)));
    step[a] = m.conj(trans, cube);
  }

  std::vector<bool> dropped(nvars, false);
  std::vector<unsigned> rename(nvars);
  for (unsigned v = 0; v < nvars; ++v) rename[v] = v;
  dropped[vars.presence(B - 1)] = true;
  for (int t = 0; t + 1 < B; ++t) rename[vars.presence(t)] = vars.presence(t + 1);
  for (std::size_t col = 0; col < l.width; ++col) {
    dropped[vars.slot(col, B - 1)] = true;
    if (!needed[col][0]) dropped[vars.incoming(col)] = true;
    rename[vars.incoming(col)] = vars.slot(col, 0);
    for (int t = 0; t + 1 < B; ++t) {
      if (!needed[col][t + 1]) dropped[vars.slot(col, t)] = true;
      rename[vars.slot(col, t)] = vars.slot(col, t + 1);
    }
  }

  BddRef start = BddManager::kTrue;
  for (int t = B; t-- > 0;) start = m.conj(start, m.nvar(vars.presence(t)));

  ExplicitDfa d;
  d.alphabet = alphabet;
  std::vector<BddRef> states{start};
  std::unordered_map<BddRef, State> index{{start, 0}};
  for (std::size_t i = 0; i < states.size(); ++i) {
    opt.deadline.check();
    if (m.size() > opt.node_cap / 4 * 3) {
      std::vector<BddRef> keep = states;
      keep.push_back(acc);
      keep.insert(keep.end(), step.begin(), step.end());
      keep = m.collect_garbage(keep);
      std::copy(keep.begin(), keep.begin() + states.size(), states.begin());
      acc = keep[states.size()];
      std::copy(keep.begin() + states.size() + 1, keep.end(), step.begin());
      index.clear();
      for (std::size_t j = 0; j < states.size(); ++j) index.emplace(states[j], static_cast<State>(j));
    }
    const BddRef cur = states[i];
    d.accepting.push_back(m.conj(cur, acc) != BddManager::kFalse);
    for (Letter a = 0; a < letters; ++a) {
      BddRef next = m.and_exists(cur, step[a], dropped);
      if (next != BddManager::kFalse)
        next = m.conj(m.var(vars.presence(0)), m.rename_monotone(next, rename));
      auto [it, fresh] = index.emplace(next, static_cast<State>(states.size()));
      if (fresh) {
        if (states.size() >= opt.state_budget)
          throw BudgetExceeded("subset construction exceeds " +
                               std::to_string(opt.state_budget) + " states");
        states.push_back(next);
      }
      d.delta.push_back(it->second);
    }
  }
  d.num_states = states.size();
  d.initial = 0;

  if (stats) {
    stats->columns = l.width;
    stats->clauses = s.matrix.size();
    stats->buffer = static_cast<std::size_t>(B);
    stats->subset_states = d.num_states;
  }
  ExplicitDfa out = minimize(d, opt.deadline);
  finish(out, stats);
  return out;
}

ExplicitDfa compile_explicit(const MonadicSentence& s, const CompileOptions& opt,
                             CompileStats* stats) {
  const Layout l = layout_of(s);
  if (l.width > opt.width_cap || l.width > 31)
    throw BudgetExceeded(std::to_string(l.width) + " columns exceed the cap of " +
                         std::to_string(opt.width_cap));
  const Alphabet alphabet = s.alphabet();
  const std::size_t B = static_cast<std::size_t>(l.buffer);
  const ExtLetter ext_count = ExtLetter{1} << l.width;

  // Matrix states: the last min(n+1, B) extended letters, newest first.
  std::vector<std::vector<ExtLetter>> states{{}};
  std::map<std::vector<ExtLetter>, State> index{{{}, 0}};
  Nfa n;
  n.alphabet = alphabet;
  n.initial = {0};
  const std::size_t letters = n.letters();

  std::vector<ExtLetter> win;
  for (std::size_t i = 0; i < states.size(); ++i) {
    opt.deadline.check();
    n.succ.resize((i + 1) * letters);
    {
      bool ok = !states[i].empty();
      for (const ClauseInfo& c : l.clauses)
        for (int t = 0; ok && t < c.hi; ++t) {
          LetterCtx ctx{states[i], t};
          if (ctx.present(0) && !evaluate(*c.body, ctx)) ok = false;
        }
      n.accepting.push_back(ok);
    }
    for (ExtLetter e = 0; e < ext_count; ++e) {
      win.assign(1, e);
      win.insert(win.end(), states[i].begin(), states[i].end());
      bool ok = true;
      for (const ClauseInfo& c : l.clauses) {
        LetterCtx ctx{win, c.hi};
        if (ctx.present(0) && !evaluate(*c.body, ctx)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (win.size() > B) win.resize(B);
      auto [it, fresh] = index.emplace(win, static_cast<State>(states.size()));
      if (fresh) {
        if (states.size() >= opt.state_budget)
          throw BudgetExceeded("matrix automaton exceeds " + std::to_string(opt.state_budget) +
                               " states");
        states.push_back(win);
      }
      auto& succ = n.succ[i * letters + to_letter(e, alphabet)];
      if (std::find(succ.begin(), succ.end(), it->second) == succ.end()) succ.push_back(it->second);
    }
  }
  n.num_states = states.size();
  for (auto& succ : n.succ) std::sort(succ.begin(), succ.end());

  ExplicitDfa d = determinize(n, opt.state_budget, opt.deadline);
  if (stats) {
    stats->columns = l.width;
    stats->clauses = s.matrix.size();
    stats->buffer = B;
    stats->matrix_states = n.num_states;
    stats->subset_states = d.num_states;
  }
  ExplicitDfa out = minimize(d, opt.deadline);
  finish(out, stats);
  return out;
}

}  // namespace ltlf


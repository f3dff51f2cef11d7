#include "ltlf2dfa/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "ltlf2dfa/errors.hpp"

namespace ltlf {

std::size_t ExplicitDfa::transition_count() const {
  std::set<std::pair<State, State>> pairs;
  for (State s = 0; s < num_states; ++s)
    for (Letter l = 0; l < letters(); ++l) pairs.emplace(s, next(s, l));
  return pairs.size();
}

void ExplicitDfa::validate() const {
  if (num_states == 0) throw Error("DFA without states");
  if (initial >= num_states) throw Error("initial state out of range");
  if (delta.size() != num_states * letters()) throw Error("transition table has the wrong size");
  if (accepting.size() != num_states) throw Error("acceptance vector has the wrong size");
  for (State t : delta)
    if (t >= num_states) throw Error("transition target out of range");
}

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<State>& v) const noexcept {
    std::size_t h = v.size();
    for (State s : v) h ^= s + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Copy of the initial state that is never accepting, so that the result
// describes L \ {ε} regardless of how the input treated the empty word.
ExplicitDfa without_empty_word(const ExplicitDfa& d) {
  if (!d.accepting[d.initial]) return d;
  ExplicitDfa r = d;
  const State fresh = static_cast<State>(d.num_states);
  r.num_states += 1;
  for (Letter l = 0; l < d.letters(); ++l) r.delta.push_back(d.next(d.initial, l));
  r.accepting.push_back(false);
  r.initial = fresh;
  return r;
}

}  // namespace

ExplicitDfa canonicalize(const ExplicitDfa& d) {
  const std::size_t L = d.letters();
  std::vector<State> order;
  std::vector<std::int64_t> id(d.num_states, -1);
  id[d.initial] = 0;
  order.push_back(d.initial);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Letter l = 0; l < L; ++l) {
      State t = d.next(order[i], l);
      if (id[t] < 0) {
        id[t] = static_cast<std::int64_t>(order.size());
        order.push_back(t);
      }
    }
  ExplicitDfa r;
  r.alphabet = d.alphabet;
  r.num_states = order.size();
  r.initial = 0;
  r.delta.resize(order.size() * L);
  r.accepting.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    r.accepting[i] = d.accepting[order[i]];
    for (Letter l = 0; l < L; ++l) r.delta[i * L + l] = static_cast<State>(id[d.next(order[i], l)]);
  }
  return r;
}

ExplicitDfa determinize(const Nfa& n, std::size_t budget, const Deadline& deadline) {
  const std::size_t L = n.letters();
  std::unordered_map<std::vector<State>, State, VectorHash> ids;
  std::vector<std::vector<State>> subsets;
  ExplicitDfa d;
  d.alphabet = n.alphabet;

  auto intern = [&](std::vector<State> set) -> State {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    auto it = ids.find(set);
    if (it != ids.end()) return it->second;
    if (subsets.size() >= budget)
      throw BudgetExceeded("subset construction exceeds " + std::to_string(budget) + " states");
    State id = static_cast<State>(subsets.size());
    ids.emplace(set, id);
    subsets.push_back(std::move(set));
    return id;
  };

  d.initial = intern(n.initial);
  std::vector<State> next;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    deadline.check();
    for (Letter l = 0; l < L; ++l) {
      next.clear();
      for (State s : subsets[i]) {
        const auto& succ = n.succ[s * L + l];
        next.insert(next.end(), succ.begin(), succ.end());
      }
      State t = intern(next);
      d.delta.push_back(t);
    }
    bool acc = false;
    for (State s : subsets[i]) acc = acc || n.accepting[s];
    d.accepting.push_back(acc);
  }
  d.num_states = subsets.size();
  return d;
}

ExplicitDfa minimize(const ExplicitDfa& input, const Deadline& deadline) {
  const ExplicitDfa d = canonicalize(without_empty_word(canonicalize(input)));
  const std::size_t n = d.num_states, L = d.letters();

  // inverse[l][t] = sources reaching t on l
  std::vector<std::vector<std::vector<State>>> inverse(L, std::vector<std::vector<State>>(n));
  for (State s = 0; s < n; ++s)
    for (Letter l = 0; l < L; ++l) inverse[l][d.next(s, l)].push_back(s);

  std::vector<std::vector<State>> blocks;
  std::vector<std::size_t> block_of(n);
  {
    std::vector<State> acc, rej;
    for (State s = 0; s < n; ++s) (d.accepting[s] ? acc : rej).push_back(s);
    for (auto* part : {&acc, &rej})
      if (!part->empty()) {
        for (State s : *part) block_of[s] = blocks.size();
        blocks.push_back(std::move(*part));
      }
  }

  std::deque<std::size_t> work;
  std::vector<bool> in_work(blocks.size(), false);
  if (blocks.size() == 2) {
    std::size_t smaller = blocks[0].size() <= blocks[1].size() ? 0 : 1;
    work.push_back(smaller);
    in_work[smaller] = true;
  }

  std::vector<std::size_t> hits(n, 0);
  std::vector<bool> marked(n, false);
  while (!work.empty()) {
    deadline.check();
    const std::size_t a = work.front();
    work.pop_front();
    in_work[a] = false;
    const std::vector<State> splitter = blocks[a];
    for (Letter l = 0; l < L; ++l) {
      std::vector<State> pre;
      for (State t : splitter)
        for (State s : inverse[l][t])
          if (!marked[s]) {
            marked[s] = true;
            pre.push_back(s);
          }
      std::vector<std::size_t> touched;
      for (State s : pre)
        if (hits[block_of[s]]++ == 0) touched.push_back(block_of[s]);
      for (std::size_t y : touched) {
        if (hits[y] < blocks[y].size()) {
          std::vector<State> inside, outside;
          for (State s : blocks[y]) (marked[s] ? inside : outside).push_back(s);
          const std::size_t z = blocks.size();
          blocks[y] = std::move(outside);
          for (State s : inside) block_of[s] = z;
          blocks.push_back(std::move(inside));
          in_work.push_back(false);
          if (in_work[y]) {
            work.push_back(z);
            in_work[z] = true;
          } else {
            std::size_t smaller = blocks[y].size() <= blocks[z].size() ? y : z;
            work.push_back(smaller);
            in_work[smaller] = true;
          }
        }
        hits[y] = 0;
      }
      for (State s : pre) marked[s] = false;
    }
  }

  ExplicitDfa q;
  q.alphabet = d.alphabet;
  q.num_states = blocks.size();
  q.initial = static_cast<State>(block_of[d.initial]);
  q.delta.resize(blocks.size() * L);
  q.accepting.resize(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const State rep = blocks[b].front();
    q.accepting[b] = d.accepting[rep];
    for (Letter l = 0; l < L; ++l) q.delta[b * L + l] = static_cast<State>(block_of[d.next(rep, l)]);
  }
  return canonicalize(q);
}

Nfa as_nfa(const ExplicitDfa& d) {
  Nfa n;
  n.alphabet = d.alphabet;
  n.num_states = d.num_states;
  n.initial = {d.initial};
  n.accepting = d.accepting;
  n.succ.resize(d.num_states * d.letters());
  for (State s = 0; s < d.num_states; ++s)
    for (Letter l = 0; l < d.letters(); ++l) n.succ[s * d.letters() + l] = {d.next(s, l)};
  return n;
}

Nfa reverse(const ExplicitDfa& d) {
  Nfa n;
  n.alphabet = d.alphabet;
  n.num_states = d.num_states;
  n.accepting.assign(d.num_states, false);
  n.accepting[d.initial] = true;
  for (State s = 0; s < d.num_states; ++s)
    if (d.accepting[s]) n.initial.push_back(s);
  const std::size_t L = d.letters();
  n.succ.resize(d.num_states * L);
  for (State s = 0; s < d.num_states; ++s)
    for (Letter l = 0; l < L; ++l) n.succ[d.next(s, l) * L + l].push_back(s);
  return n;
}

ExplicitDfa complement(const ExplicitDfa& d) {
  ExplicitDfa c = d;
  for (std::size_t s = 0; s < c.num_states; ++s) c.accepting[s] = !c.accepting[s];
  return c;
}

bool equivalent(const ExplicitDfa& a, const ExplicitDfa& b) {
  if (!(a.alphabet == b.alphabet)) throw Error("automata over different alphabets");
  const std::size_t L = a.letters();
  std::set<std::pair<State, State>> seen;
  std::deque<std::pair<State, State>> queue;
  for (Letter l = 0; l < L; ++l) {
    auto p = std::make_pair(a.next(a.initial, l), b.next(b.initial, l));
    if (seen.insert(p).second) queue.push_back(p);
  }
  while (!queue.empty()) {
    auto [s, t] = queue.front();
    queue.pop_front();
    if (a.accepting[s] != b.accepting[t]) return false;
    for (Letter l = 0; l < L; ++l) {
      auto p = std::make_pair(a.next(s, l), b.next(t, l));
      if (seen.insert(p).second) queue.push_back(p);
    }
  }
  return true;
}

bool isomorphic(const ExplicitDfa& a, const ExplicitDfa& b) {
  if (!(a.alphabet == b.alphabet)) throw Error("automata over different alphabets");
  ExplicitDfa ma = minimize(a), mb = minimize(b);
  return ma.num_states == mb.num_states && ma.delta == mb.delta && ma.accepting == mb.accepting;
}

bool is_empty(const ExplicitDfa& d) {
  const std::size_t L = d.letters();
  std::vector<bool> seen(d.num_states, false);
  std::vector<State> stack;
  for (Letter l = 0; l < L; ++l) {
    State t = d.next(d.initial, l);
    if (!seen[t]) {
      seen[t] = true;
      stack.push_back(t);
    }
  }
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    if (d.accepting[s]) return false;
    for (Letter l = 0; l < L; ++l) {
      State t = d.next(s, l);
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  return true;
}

bool is_universal(const ExplicitDfa& d) { return is_empty(complement(d)); }

bool accepts(const ExplicitDfa& d, const Trace& t) {
  if (t.letters.empty()) return false;
  State s = d.initial;
  for (Letter l : t.letters) s = d.next(s, l);
  return d.accepting[s];
}

bool accepts(const Nfa& n, const Trace& t) {
  if (t.letters.empty()) return false;
  std::vector<State> cur = n.initial;
  for (Letter l : t.letters) {
    std::set<State> next;
    for (State s : cur)
      for (State u : n.succ[s * n.letters() + l]) next.insert(u);
    cur.assign(next.begin(), next.end());
  }
  for (State s : cur)
    if (n.accepting[s]) return true;
  return false;
}

std::vector<Trace> bounded_language(const ExplicitDfa& d, std::size_t max_length) {
  std::vector<Trace> out;
  for (Trace& t : all_traces(d.alphabet, max_length))
    if (accepts(d, t)) out.push_back(std::move(t));
  return out;
}

std::string to_explicit(const ExplicitDfa& d) {
  std::ostringstream os;
  os << "dfa " << d.num_states << " " << d.alphabet.size() << " " << d.initial << "\n";
  os << "acc:";
  for (State s = 0; s < d.num_states; ++s)
    if (d.accepting[s]) os << " " << s;
  os << "\n";
  for (State s = 0; s < d.num_states; ++s)
    for (Letter l = 0; l < d.letters(); ++l)
      os << s << " " << (d.alphabet.size() ? d.alphabet.bits(l) : "-") << " " << d.next(s, l)
         << "\n";
  return os.str();
}

ExplicitDfa parse_explicit(const Alphabet& alphabet, std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string word;
  ExplicitDfa d;
  d.alphabet = alphabet;
  std::size_t atoms = 0;
  if (!(is >> word) || word != "dfa" || !(is >> d.num_states >> atoms >> d.initial))
    throw ParseError("expected 'dfa <states> <atoms> <initial>' header", 0);
  if (atoms != alphabet.size()) throw ParseError("atom count does not match the alphabet", 0);
  if (!(is >> word) || word != "acc:") throw ParseError("expected 'acc:' line", 0);
  d.accepting.assign(d.num_states, false);
  std::string rest;
  std::getline(is, rest);
  std::istringstream acc(rest);
  State s;
  while (acc >> s) {
    if (s >= d.num_states) throw ParseError("accepting state out of range", 0);
    d.accepting[s] = true;
  }
  d.delta.assign(d.num_states * d.letters(), 0);
  std::vector<bool> filled(d.delta.size(), false);
  std::string bits;
  State t;
  while (is >> s >> bits >> t) {
    if (bits == "-") bits.clear();
    if (bits.size() != alphabet.size() || s >= d.num_states || t >= d.num_states)
      throw ParseError("malformed transition row", 0);
    Letter l = 0;
    for (char c : bits) l = (l << 1) | (c == '1' ? 1u : 0u);
    d.delta[s * d.letters() + l] = t;
    filled[s * d.letters() + l] = true;
  }
  if (std::find(filled.begin(), filled.end(), false) != filled.end())
    throw ParseError("transition table is not total", 0);
  d.validate();
  return d;
}

std::string to_dot(const ExplicitDfa& d) {
  std::ostringstream os;
  os << "digraph dfa {\n  rankdir=LR;\n  init [shape=point];\n";
  for (State s = 0; s < d.num_states; ++s)
    os << "  " << s << " [shape=" << (d.accepting[s] ? "doublecircle" : "circle") << "];\n";
  os << "  init -> " << d.initial << ";\n";
  for (State s = 0; s < d.num_states; ++s) {
    std::map<State, std::vector<std::string>> labels;
    for (Letter l = 0; l < d.letters(); ++l) labels[d.next(s, l)].push_back(d.alphabet.bits(l));
    for (const auto& [t, ls] : labels) {
      os << "  " << s << " -> " << t << " [label=\"";
      for (std::size_t i = 0; i < ls.size(); ++i) os << (i ? "," : "") << ls[i];
      os << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace ltlf

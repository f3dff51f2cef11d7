#include "ltlf2dfa/symbolic.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "ltlf2dfa/errors.hpp"

namespace ltlf {

std::vector<std::string> SymbolicDfa::var_names() const {
  std::vector<std::string> names = state_names;
  for (const auto& a : alphabet.atoms()) names.push_back(a);
  return names;
}

namespace {
std::vector<bool> assignment(const SymbolicDfa& f, const std::vector<bool>& state, Letter l) {
  std::vector<bool> a(f.k() + f.alphabet.size(), false);
  for (std::size_t q = 0; q < f.k(); ++q) a[q] = state[q];
  for (std::size_t i = 0; i < f.alphabet.size(); ++i) a[f.k() + i] = f.alphabet.contains(l, i);
  return a;
}
}  // namespace

std::vector<bool> SymbolicDfa::step(const std::vector<bool>& state, Letter l) const {
  const auto a = assignment(*this, state, l);
  std::vector<bool> out(k());
  for (std::size_t q = 0; q < k(); ++q) out[q] = mgr->eval(eta[q], a);
  return out;
}

bool SymbolicDfa::accepting(const std::vector<bool>& state) const {
  return mgr->eval(accept, assignment(*this, state, 0));
}

SymbolicDfa pltlf_to_symbolic_dfa(PltlfFormula psi, const std::vector<std::string>& atoms,
                                  std::size_t node_cap) {
  SymbolicDfa f;
  f.alphabet = Alphabet(atoms.empty() ? atoms_of(psi) : atoms);
  for (const auto& a : atoms_of(psi))
    if (f.alphabet.index_of(a) == f.alphabet.size())
      throw Error("atom " + a + " missing from the alphabet");

  const auto cl = closure(psi);
  const std::size_t k = cl.size() + 1;
  const std::size_t start = k - 1;
  f.mgr = std::make_shared<BddManager>(static_cast<unsigned>(k + f.alphabet.size()), node_cap);
  BddManager& m = *f.mgr;

  f.eta.assign(k, BddManager::kFalse);
  for (std::size_t i = 0; i < cl.size(); ++i) {
    const PltlfFormula theta = cl.members[i];
    f.state_names.push_back(to_string(theta));
    auto at = [&](PltlfFormula g) { return f.eta[cl.index_of(g)]; };
    switch (theta.op()) {
      case Op::True: f.eta[i] = m.one(); break;
      case Op::False: f.eta[i] = m.zero(); break;
      case Op::Atom:
        f.eta[i] = m.var(static_cast<unsigned>(k + f.alphabet.index_of(theta.atom_name())));
        break;
      case Op::Not: f.eta[i] = m.negate(at(theta.child())); break;
      case Op::And: f.eta[i] = m.conj(at(theta.lhs()), at(theta.rhs())); break;
      case Op::Or: f.eta[i] = m.disj(at(theta.lhs()), at(theta.rhs())); break;
      case Op::Yesterday:
        f.eta[i] = m.var(static_cast<unsigned>(cl.index_of(theta.child())));
        break;
      case Op::Since:
        f.eta[i] = m.disj(at(theta.rhs()),
                          m.conj(at(theta.lhs()), m.var(static_cast<unsigned>(i))));
        break;
      default: throw std::invalid_argument("operator outside the past fragment");
    }
  }
  f.state_names.push_back("start");
  f.eta[start] = m.zero();

  f.initial.assign(k, false);
  f.initial[start] = true;
  f.accept = m.conj(m.var(static_cast<unsigned>(cl.index_of(psi))),
                    m.nvar(static_cast<unsigned>(start)));
  return f;
}

ExplicitDfa symbolic_to_explicit(const SymbolicDfa& f, std::size_t budget,
                                 const Deadline& deadline) {
  ExplicitDfa d;
  d.alphabet = f.alphabet;
  const std::size_t letters = d.letters();
  std::map<std::vector<bool>, State> index;
  std::vector<std::vector<bool>> states{f.initial};
  index.emplace(f.initial, 0);
  for (std::size_t s = 0; s < states.size(); ++s) {
    deadline.check();
    d.accepting.push_back(f.accepting(states[s]));
    for (Letter l = 0; l < letters; ++l) {
      auto next = f.step(states[s], l);
      auto [it, fresh] = index.emplace(next, static_cast<State>(states.size()));
      if (fresh) {
        if (states.size() >= budget)
          throw BudgetExceeded("symbolic expansion exceeds " + std::to_string(budget) + " states");
        states.push_back(std::move(next));
      }
      d.delta.push_back(it->second);
    }
  }
  d.num_states = states.size();
  d.initial = 0;
  return d;
}

RunTrace simulate(const SymbolicDfa& f, const Trace& t) {
  RunTrace r;
  r.states.push_back(f.initial);
  for (Letter l : t.letters) r.states.push_back(f.step(r.states.back(), l));
  r.accepted = f.accepting(r.states.back());
  return r;
}

BddRef compose_acceptance(SymbolicDfa& f) {
  std::vector<BddRef> sub(f.k() + f.alphabet.size(), BddManager::kNoSubstitution);
  for (std::size_t q = 0; q < f.k(); ++q) sub[q] = f.eta[q];
  return f.mgr->vector_compose(f.accept, sub);
}

std::size_t EdgeTables::edge_count() const {
  std::size_t n = 0;
  for (const auto& p : post) n += p.size();
  for (const auto& pt : pre_terminal) n += pt[0].size() + pt[1].size();
  return n;
}

EdgeTables extract_edges(const BddManager& mgr, const std::vector<BddRef>& roots) {
  EdgeTables e;
  e.pre_terminal.resize(roots.size());
  for (std::size_t r = 0; r < roots.size(); ++r) {
    if (mgr.is_terminal(roots[r])) {
      e.root_node.push_back(0);
      e.root_constant.push_back(roots[r] == BddManager::kTrue);
      continue;
    }
    std::unordered_map<BddRef, int> id;
    std::vector<BddRef> order;
    std::function<void(BddRef)> visit = [&](BddRef n) {
      if (mgr.is_terminal(n) || id.count(n)) return;
      id.emplace(n, static_cast<int>(e.u + order.size() + 1));
      order.push_back(n);
      visit(mgr.low(n));
      visit(mgr.high(n));
    };
    visit(roots[r]);
    e.root_node.push_back(id.at(roots[r]));
    e.root_constant.push_back(false);
    for (BddRef n : order) {
      e.node_var.push_back(mgr.var_of(n));
      e.node_owner.push_back(r);
      e.node_ref.push_back(n);
    }
    e.u += order.size();
    e.pre.resize(e.u);
    e.post.resize(e.u);
    for (BddRef n : order) {
      const int alpha = id.at(n);
      const unsigned v = mgr.var_of(n);
      for (bool d : {false, true}) {
        const BddRef child = d ? mgr.high(n) : mgr.low(n);
        if (mgr.is_terminal(child)) {
          e.pre_terminal[r][child == BddManager::kTrue ? 1 : 0].push_back({alpha, v, d});
        } else {
          const int beta = id.at(child);
          e.post[alpha - 1].push_back({beta, v, d});
          e.pre[beta - 1].push_back({alpha, v, d});
        }
      }
    }
  }
  return e;
}

std::string to_string(const EdgeTables& e, const std::vector<std::string>& var_names) {
  auto name = [&](unsigned v) {
    return v < var_names.size() ? var_names[v] : "v" + std::to_string(v);
  };
  auto edge = [&](const BddEdge& b) {
    return "(" + std::to_string(b.node) + "," + name(b.var) + "," + (b.value ? "1" : "0") + ")";
  };
  std::ostringstream os;
  os << "u = " << e.u << "\n";
  for (std::size_t r = 0; r < e.root_node.size(); ++r) {
    os << "root " << r << ": ";
    if (e.root_node[r] == 0)
      os << "terminal " << (e.root_constant[r] ? 1 : 0);
    else
      os << "N" << e.root_node[r];
    os << "\n";
    for (int c : {0, 1}) {
      os << "  PreT(" << c << "):";
      for (const auto& b : e.pre_terminal[r][c]) os << " " << edge(b);
      os << "\n";
    }
  }
  for (std::size_t a = 0; a < e.u; ++a) {
    os << "N" << a + 1 << " [" << name(e.node_var[a]) << ", root " << e.node_owner[a] << "] pre:";
    for (const auto& b : e.pre[a]) os << " " << edge(b);
    os << " post:";
    for (const auto& b : e.post[a]) os << " " << edge(b);
    os << "\n";
  }
  return os.str();
}

}  // namespace ltlf

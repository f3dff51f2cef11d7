#include "ltlf2dfa/compact.hpp"

#include <map>
#include <set>

#include "ltlf2dfa/errors.hpp"

namespace ltlf {

std::string to_string(RevFlavor f) { return f == RevFlavor::Fussy ? "fussy" : "sloppy"; }

RevFlavor parse_flavor(const std::string& name) {
  if (name == "fussy") return RevFlavor::Fussy;
  if (name == "sloppy") return RevFlavor::Sloppy;
  throw ConfigError("unknown flavor '" + name + "'");
}

namespace {

std::string edge_label(const BddEdge& e, const std::vector<std::string>& names) {
  return std::to_string(e.node) + "," + names[e.var] + "," + (e.value ? "1" : "0");
}

}  // namespace

RevSentence build_rev(SymbolicDfa& f, RevFlavor flavor) {
  using namespace expr;
  RevSentence rev;
  rev.flavor = flavor;
  rev.k = f.k();
  rev.var_names = f.var_names();

  std::vector<BddRef> roots = f.eta;
  roots.push_back(compose_acceptance(f));
  rev.edges = extract_edges(*f.mgr, roots);
  const EdgeTables& e = rev.edges;

  MonadicSentence& s = rev.sentence;
  s.columns = f.alphabet.atoms();
  s.free_count = s.columns.size();
  std::set<std::string> taken(s.columns.begin(), s.columns.end());
  auto fresh = [&](std::string name) {
    while (taken.count(name)) name = "_" + name;
    taken.insert(name);
    return name;
  };
  for (std::size_t q = 0; q < rev.k; ++q) s.columns.push_back(fresh("V" + std::to_string(q)));
  for (std::size_t a = 1; a <= e.u; ++a) s.columns.push_back(fresh("N" + std::to_string(a)));
  s.init = truth(true);

  // x in^d v at x+offset, v a BDD variable.
  auto lit = [&](unsigned v, bool d, int offset = 0) {
    const int col = v < rev.k ? rev.v_column(v) : static_cast<int>(v - rev.k);
    ExprPtr m = member(col, offset);
    return d ? m : negation(m);
  };
  auto node = [&](int alpha) { return member(rev.n_column(alpha)); };
  auto took = [&](const BddEdge& b) { return conjunction({node(b.node), lit(b.var, b.value)}); };

  std::vector<ExprPtr> init_bits;
  for (std::size_t q = 0; q < rev.k; ++q)
    init_bits.push_back(lit(static_cast<unsigned>(q), f.initial[q]));
  s.matrix.push_back({"Rinit", implication(guard(Guard::Last), conjunction(init_bits))});

  std::set<int> root_nodes(e.root_node.begin(), e.root_node.end());
  for (int alpha = 1; alpha <= static_cast<int>(e.u); ++alpha) {
    if (flavor == RevFlavor::Fussy && !root_nodes.count(alpha)) {
      std::vector<ExprPtr> from;
      for (const BddEdge& b : e.pre[alpha - 1]) from.push_back(took(b));
      s.matrix.push_back({"PreCon(" + std::to_string(alpha) + ")",
                          implication(node(alpha), disjunction(from))});
    }
    for (const BddEdge& b : e.post[alpha - 1]) {
      const unsigned v = e.node_var[alpha - 1];
      s.matrix.push_back(
          {"PostCon(" + std::to_string(alpha) + "," + edge_label(b, rev.var_names) + ")",
           implication(conjunction({node(alpha), lit(v, b.value)}), node(b.node))});
    }
  }

  for (std::size_t q = 0; q < rev.k; ++q) {
    const unsigned vq = static_cast<unsigned>(q);
    if (e.root_node[q] == 0) {
      s.matrix.push_back({"Rterminal(" + std::to_string(q) + ")",
                          implication(guard(Guard::Positive), lit(vq, e.root_constant[q], -1))});
      continue;
    }
    for (int c : {0, 1})
      for (const BddEdge& b : e.pre_terminal[q][c])
        s.matrix.push_back(
            {"Rterminal(" + std::to_string(q) + "," + edge_label(b, rev.var_names) + ")",
             implication(conjunction({guard(Guard::Positive), took(b)}), lit(vq, c == 1, -1))});
  }

  // Paths of B_f' reaching terminal c at the current position.
  const std::size_t acc = rev.k;
  auto reaching = [&](int c) -> ExprPtr {
    if (e.root_node[acc] == 0) return truth(e.root_constant[acc] == (c == 1));
    std::vector<ExprPtr> paths;
    for (const BddEdge& b : e.pre_terminal[acc][c]) paths.push_back(took(b));
    return paths.empty() ? truth(false) : disjunction(paths);
  };
  if (flavor == RevFlavor::Fussy)
    s.matrix.push_back({"Racc", implication(guard(Guard::First), reaching(1))});
  else
    s.matrix.push_back({"Racc_s", implication(reaching(0), guard(Guard::Positive))});

  for (std::size_t r = 0; r < roots.size(); ++r)
    if (e.root_node[r] != 0)
      s.matrix.push_back({"roots(" + std::to_string(r) + ")", node(e.root_node[r])});
  return rev;
}

Extents canonical_rev_witness(const Trace& t, const SymbolicDfa& f, const RevSentence& rev) {
  if (t.size() == 0) throw Error("witness needs a non-empty trace");
  Extents ext = free_extents(rev.sentence, MonadicStructure::of(t));
  const RunTrace run = simulate(f, t.reversed());
  const EdgeTables& e = rev.edges;

  std::vector<std::map<BddRef, int>> alpha_of(e.root_node.size());
  for (std::size_t a = 0; a < e.u; ++a)
    alpha_of[e.node_owner[a]].emplace(e.node_ref[a], static_cast<int>(a + 1));

  const std::size_t n = t.size();
  for (std::size_t x = 0; x < n; ++x) {
    const auto& state = run.states[n - 1 - x];
    const std::uint64_t bit = std::uint64_t{1} << x;
    std::vector<bool> assignment(rev.k + f.alphabet.size());
    for (std::size_t q = 0; q < rev.k; ++q) {
      assignment[q] = state[q];
      if (state[q]) ext[rev.v_column(q)] |= bit;
    }
    for (std::size_t i = 0; i < f.alphabet.size(); ++i)
      assignment[rev.k + i] = t.holds(x, i);
    for (std::size_t r = 0; r < e.root_node.size(); ++r) {
      if (e.root_node[r] == 0) continue;
      BddRef node = e.node_ref[e.root_node[r] - 1];
      while (!f.mgr->is_terminal(node)) {
        ext[rev.n_column(alpha_of[r].at(node))] |= bit;
        node = assignment[f.mgr->var_of(node)] ? f.mgr->high(node) : f.mgr->low(node);
      }
    }
  }
  return ext;
}

bool eval_rev_witness(const Trace& t, const SymbolicDfa& f, const RevSentence& rev) {
  return eval_sentence_under(rev.sentence, t.size(), canonical_rev_witness(t, f, rev));
}

}  // namespace ltlf

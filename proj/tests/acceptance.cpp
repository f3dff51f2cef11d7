// Acceptance checks, one per command-line index 1..8. Each prints details
// followed by a single "criterion N: PASS|FAIL ..." line.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "ltlf2dfa/compact.hpp"
#include "ltlf2dfa/compiler.hpp"
#include "ltlf2dfa/errors.hpp"
#include "ltlf2dfa/fol.hpp"
#include "ltlf2dfa/harness.hpp"
#include "ltlf2dfa/mso.hpp"
#include "ltlf2dfa/symbolic.hpp"
#include "support.hpp"

using namespace ltlf;

namespace {

struct Verdict {
  bool pass = false;
  std::string summary;
};

std::size_t workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::mutex log_mutex;
void note(const std::string& line) {
  std::lock_guard<std::mutex> lock(log_mutex);
  std::cout << "  " << line << "\n";
}

// 1 ---------------------------------------------------------------------------------------

struct Tally {
  std::atomic<std::size_t> checks{0}, violations{0};
  void record(bool ok, const std::string& what) {
    ++checks;
    if (!ok && violations++ < 5) note("violation: " + what);
  }
};

Verdict theorem_suite() {
  FormulaStore store;
  const auto grid = testing::theorem_grid(store, 500);
  const Alphabet ab({"a", "b"});
  const auto traces = all_traces(ab, 4);
  const auto configs = all_configs();

  struct Prepared {
    LtlfFormula phi;
    PltlfFormula past;
    std::vector<LtlfFormula> normal;  // per config
  };
  std::vector<Prepared> prepared;
  for (LtlfFormula phi : grid) {
    Prepared p{phi, reverse_to_past(store, phi), {}};
    for (const EncodingConfig& cfg : configs)
      p.normal.push_back(cfg.norm == NormalForm::Bnf ? to_bnf(store, phi) : to_nnf(store, phi));
    prepared.push_back(p);
  }

  Tally thm1, thm3, thm4, lemma1, witness;
  std::vector<Tally> per_config(configs.size());
  std::atomic<std::size_t> brute{0}, compiled{0};

  parallel_for(prepared.size(), workers(), [&](std::size_t i) {
    const Prepared& p = prepared[i];
    const std::string name = to_string(p.phi);
    const FolPtr fo = encode_fol(p.phi);
    const FolPtr fo_past = encode_fol_past(p.past);
    std::vector<bool> truth(traces.size());
    for (std::size_t j = 0; j < traces.size(); ++j) {
      const Trace& t = traces[j];
      truth[j] = satisfies(t, p.phi);
      const auto m = MonadicStructure::of(t);
      thm1.record(eval_fol(m, fo) == truth[j], "fol " + name + " on " + format_trace(t));
      thm3.record(satisfies(t.reversed(), p.past) == truth[j],
                  "reversal " + name + " on " + format_trace(t));
      thm4.record(eval_fol(m, fo_past) == satisfies(t, p.past),
                  "fol-past " + name + " on " + format_trace(t));
    }
    for (std::size_t c = 0; c < configs.size(); ++c) {
      const EncodingConfig& cfg = configs[c];
      const LtlfFormula g = p.normal[c];
      const MsoEncoding enc = encode_mso(g, cfg, {"a", "b"});
      const std::size_t q = enc.sentence.quantified_count();
      std::optional<ExplicitDfa> dfa;
      for (std::size_t j = 0; j < traces.size(); ++j) {
        const Trace& t = traces[j];
        const std::string where = cfg.name() + " " + name + " on " + format_trace(t);
        bool got;
        if (q * t.size() <= 20) {
          got = eval_sentence_bruteforce(MonadicStructure::of(t), enc.sentence);
          ++brute;
        } else {
          if (!dfa) dfa = compile(enc.sentence);
          got = accepts(*dfa, t);
          ++compiled;
        }
        per_config[c].record(got == truth[j], where);
        if (truth[j]) witness.record(eval_sentence_witness(t, g, enc), "witness " + where);
      }
      if (cfg.vars != Variables::Lean) continue;
      for (LtlfFormula theta : closure(g).members) {
        if (theta.is_atomic() || is_until_release(theta)) continue;
        const SetTermPtr term = lean_term(enc, theta);
        for (const Trace& t : traces) {
          const std::uint64_t set = eval_set_under(*term, t.size(), canonical_witness(t, enc));
          bool ok = true;
          for (std::size_t x = 0; x < t.size(); ++x)
            ok = ok && (((set >> x) & 1) != 0) == eval_ltlf_at(t, theta, x);
          lemma1.record(ok, cfg.name() + " lean(" + to_string(theta) + ") on " + format_trace(t));
        }
      }
    }
  });

  auto line = [](const std::string& label, const Tally& t) {
    note(label + ": " + std::to_string(t.checks) + " checks, " + std::to_string(t.violations) +
         " violations");
    return t.violations.load();
  };
  std::size_t bad = 0;
  note(std::to_string(grid.size()) + " formulas, " + std::to_string(traces.size()) +
       " traces of length 1-4");
  bad += line("first-order encoding", thm1);
  for (std::size_t c = 0; c < configs.size(); ++c) bad += line("mso " + configs[c].name(), per_config[c]);
  bad += line("language reversal", thm3);
  bad += line("past first-order encoding", thm4);
  bad += line("lean terms pointwise", lemma1);
  bad += line("canonical witnesses", witness);
  note("second-order checks: " + std::to_string(brute) + " brute force, " + std::to_string(compiled) +
       " through the compiled automaton");
  return {bad == 0, std::to_string(bad) + " violations over " + std::to_string(grid.size()) + " formulas"};
}

// 2 ---------------------------------------------------------------------------------------

Verdict cross_pipeline() {
  const auto corpus = testing::consistency_corpus();
  std::vector<FormulaReport> reports(corpus.size());
  parallel_for(corpus.size(), workers(),
               [&](std::size_t i) { reports[i] = check_formula(corpus[i], 4); });
  std::size_t bad = 0;
  for (const FormulaReport& rep : reports) {
    std::size_t states = 0;
    std::vector<const ExplicitDfa*> dfas;
    bool complete = true;
    for (const PipelineRun& r : rep.runs) {
      if (r.pipeline == "fol") continue;
      if (!r.ok) {
        complete = false;
        note(rep.formula + ": " + r.pipeline + "/" + r.variation + " failed: " + r.error);
        continue;
      }
      dfas.push_back(&*r.dfa);
      states = r.dfa->num_states;
    }
    bool iso = true;
    for (std::size_t i = 0; i < dfas.size(); ++i)
      for (std::size_t j = i + 1; j < dfas.size(); ++j) iso = iso && isomorphic(*dfas[i], *dfas[j]);
    const bool ok = complete && iso && rep.consistent() && dfas.size() == 9;
    if (!ok) ++bad;
    for (const auto& p : rep.problems) note(rep.formula + ": " + p);
    note(rep.formula + ": " + std::to_string(states) + " states, " + (ok ? "consistent" : "MISMATCH") +
         ", traces up to length " + std::to_string(rep.trace_len));
  }
  return {bad == 0, std::to_string(corpus.size() - bad) + "/" + std::to_string(corpus.size()) +
                        " formulas consistent across 9 pipelines"};
}

// 3 ---------------------------------------------------------------------------------------

Verdict sloppy_bnf() {
  FormulaStore s;
  const Alphabet a({"a"});
  const Trace t = parse_trace(a, "-;a");
  const LtlfFormula phi = to_bnf(s, parse_ltlf(s, "!F a"));
  const EncodingConfig cfg{NormalForm::Bnf, Constraint::Sloppy, Variables::Full};
  const bool model = eval_sentence_bruteforce(MonadicStructure::of(t), encode_mso_unchecked(phi, cfg).sentence);
  const bool truth = eval_ltlf_at(t, phi, 0);
  bool rejected = false;
  try {
    encode_mso(phi, cfg);
  } catch (const ConfigError&) {
    rejected = true;
  }
  bool rejected_config = false;
  try {
    cfg.validate();
  } catch (const ConfigError&) {
    rejected_config = true;
  }
  note(std::string("sloppy bnf sentence on [{},{a}]: ") + (model ? "satisfied" : "not satisfied"));
  note(std::string("trace evaluation of !F a: ") + (truth ? "true" : "false"));
  note(std::string("configuration ") + (rejected && rejected_config ? "rejected" : "accepted"));
  return {model && !truth && rejected && rejected_config,
          "sloppy bnf admits a non-model and the configuration is refused"};
}

// 4 ---------------------------------------------------------------------------------------

Verdict one_exp_bound() {
  FormulaStore s;
  std::vector<PltlfFormula> corpus;
  for (LtlfFormula f : testing::theorem_grid(s, 500)) corpus.push_back(reverse_to_past(s, f));
  for (const std::string& text : testing::consistency_corpus())
    corpus.push_back(reverse_to_past(s, parse_ltlf(s, text)));
  std::mt19937 rng(4242);
  for (int i = 0; i < 200; ++i) corpus.push_back(testing::random_pltlf(s, rng, 4, {"a", "b", "c"}));

  std::size_t bad = 0, worst_states = 0;
  double tightest = 0;
  for (PltlfFormula psi : corpus) {
    const std::size_t cl = closure(psi).size();
    const std::size_t states = symbolic_to_explicit(pltlf_to_symbolic_dfa(psi)).num_states;
    const double bound = std::ldexp(1.0, static_cast<int>(cl)) + 1;
    if (states > bound) {
      ++bad;
      note("violation: " + to_string(psi) + " has " + std::to_string(states) + " states");
    }
    worst_states = std::max(worst_states, states);
    tightest = std::max(tightest, states / bound);
  }
  note("largest reachable state count " + std::to_string(worst_states) +
       ", highest ratio to the bound " + std::to_string(tightest));
  return {bad == 0, std::to_string(bad) + " violations over " + std::to_string(corpus.size()) + " formulas"};
}

// 5 ---------------------------------------------------------------------------------------

Verdict predicate_economy() {
  FormulaStore s;
  const auto grid = testing::theorem_grid(s, 500);
  std::size_t worse = 0, strict = 0, iff_broken = 0, eligible = 0;
  for (LtlfFormula phi : grid)
    for (NormalForm nf : {NormalForm::Bnf, NormalForm::Nnf}) {
      const Constraint c = nf == NormalForm::Bnf ? Constraint::Fussy : Constraint::Sloppy;
      const LtlfFormula g = nf == NormalForm::Bnf ? to_bnf(s, phi) : to_nnf(s, phi);
      const std::size_t full = encode_mso(g, {nf, c, Variables::Full}).sentence.quantified_count();
      const std::size_t lean = encode_mso(g, {nf, c, Variables::Lean}).sentence.quantified_count();
      const auto cl = closure(g);
      const bool has_other = cl.non_atomic > cl.temporal;
      eligible += has_other;
      if (lean > full) ++worse;
      if (lean < full && has_other) ++strict;
      if ((lean < full) != has_other) ++iff_broken;
    }
  note(std::to_string(grid.size()) + " formulas in both normal forms: " + std::to_string(worse) +
       " with more lean predicates, " + std::to_string(strict) + "/" + std::to_string(eligible) +
       " strictly smaller where a non-U/R subformula exists, " + std::to_string(iff_broken) +
       " breaking the equality condition");
  return {worse == 0 && strict > 0 && iff_broken == 0,
          "lean <= full everywhere, strict on " + std::to_string(strict) + " encodings"};
}

// 6 ---------------------------------------------------------------------------------------

Verdict canonical_sizes() {
  struct Case {
    std::string text;
    std::size_t expected;
  };
  const std::vector<Case> cases{{"p", 3}, {"F a", 2}, {"G a", 2}, {"F p1 & F p2 & F p3", 8}};
  std::size_t bad = 0;
  for (const Case& c : cases) {
    FormulaStore s;
    const LtlfFormula f = parse_ltlf(s, c.text);
    const std::size_t oracle = testing::oracle_dfa(s, f, Alphabet(atoms_of(f))).num_states;
    std::string sizes;
    bool agree = true;
    for (const PipelineRun& r : run_all(s, f)) {
      const std::size_t n = r.ok ? r.dfa->num_states : 0;
      sizes += " " + std::to_string(n);
      agree = agree && n == c.expected;
    }
    const bool ok = agree && oracle == c.expected;
    if (!ok) ++bad;
    note(c.text + ": expected " + std::to_string(c.expected) + ", oracle " + std::to_string(oracle) +
         ", pipelines" + sizes + (ok ? "" : "  <-- mismatch"));
  }
  return {bad == 0, std::to_string(cases.size() - bad) + "/" + std::to_string(cases.size()) +
                        " sizes match exactly"};
}

// 7 ---------------------------------------------------------------------------------------

Verdict size_linearity() {
  const auto corpus = testing::consistency_corpus();
  bool pass = true;
  std::ostringstream summary;
  for (RevFlavor flavor : {RevFlavor::Fussy, RevFlavor::Sloppy}) {
    struct Point {
      double edges, clauses;
    };
    std::vector<Point> points;
    std::size_t skipped = 0;
    for (const std::string& text : corpus) {
      FormulaStore s;
      SymbolicDfa f = pltlf_to_symbolic_dfa(reverse_to_past(s, parse_ltlf(s, text)));
      const RevSentence r = build_rev(f, flavor);
      if (r.edge_count() == 0) {
        ++skipped;
        continue;
      }
      points.push_back({static_cast<double>(r.edge_count()), static_cast<double>(r.clause_count())});
    }
    std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
      return a.edges < b.edges || (a.edges == b.edges && a.clauses < b.clauses);
    });
    auto fit = [&](int part) {
      double xy = 0, xx = 0, worst = 0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (part >= 0 && static_cast<int>(i % 2) != part) continue;
        xy += points[i].edges * points[i].clauses;
        xx += points[i].edges * points[i].edges;
        worst = std::max(worst, points[i].clauses / points[i].edges);
      }
      return std::make_pair(xy / xx, worst);
    };
    const auto [slope, bound] = fit(-1);
    bool stable = true;
    char buf[256];
    for (int part : {0, 1}) {
      const auto [s, b] = fit(part);
      stable = stable && std::abs(s / slope - 1) <= 0.10 && std::abs(b / bound - 1) <= 0.10;
      std::snprintf(buf, sizeof buf, "half %d: slope %.3f, bound %.3f", part, s, b);
      note(to_string(flavor) + " " + buf);
    }
    bool below = true;
    for (const Point& p : points) below = below && p.clauses <= bound * p.edges + 1e-9;
    std::snprintf(buf, sizeof buf, "c = %.3f (least-squares slope %.3f) over %zu formulas, %zu without edges",
                  bound, slope, points.size(), skipped);
    note(to_string(flavor) + " " + buf);
    summary << to_string(flavor) << " c=" << bound << (stable ? " stable" : " UNSTABLE") << "; ";
    pass = pass && stable && below;
  }
  return {pass, summary.str()};
}

// 8 ---------------------------------------------------------------------------------------

Verdict bdd_properties() {
  const std::size_t rounds = 100000;
  std::size_t bad = 0, done = 0;
  for (unsigned seed = 0; seed < 10; ++seed) {
    testing::BddFuzzer fuzz(6, 1000 + seed);
    for (std::size_t i = 0; i < rounds / 10; ++i) {
      const std::string why = fuzz.round();
      if (!why.empty() && bad++ < 5) note("violation: " + why);
    }
    done += fuzz.checks();
  }
  note(std::to_string(done) + " pairs of apply sequences over 6 variables");
  return {bad == 0, std::to_string(bad) + " canonicity or invariant violations in " +
                        std::to_string(done) + " pairs"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance <1-8>\n";
    return 2;
  }
  const int which = std::atoi(argv[1]);
  Verdict (*const checks[])() = {theorem_suite, cross_pipeline, sloppy_bnf, one_exp_bound,
                                 predicate_economy, canonical_sizes, size_linearity, bdd_properties};
  if (which < 1 || which > 8) {
    std::cerr << "criterion must be 1-8\n";
    return 2;
  }
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = checks[which - 1]();
  } catch (const std::exception& e) {
    v = {false, std::string("error: ") + e.what()};
  }
  const auto secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char timing[32];
  std::snprintf(timing, sizeof timing, " (%.1f s)", secs);
  std::cout << "criterion " << which << ": " << (v.pass ? "PASS" : "FAIL") << " - " << v.summary
            << timing << std::endl;
  return v.pass ? 0 : 1;
}

#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ltlf2dfa/automata.hpp"
#include "ltlf2dfa/compact.hpp"
#include "ltlf2dfa/formula.hpp"
#include "ltlf2dfa/mso.hpp"

namespace ltlf {

struct PipelineOptions {
  std::size_t state_budget = kDefaultStateBudget;
  std::size_t node_cap = BddManager::kDefaultNodeCap;
  /// Per pipeline run; zero means no deadline.
  std::chrono::milliseconds timeout{0};
  /// Use the explicit matrix automaton instead of the BDD subset construction.
  bool explicit_compile = false;
  std::size_t width_cap = 16;
};

struct PipelineRun {
  std::string pipeline;   // reverse, mso, cmso, fol
  std::string variation;  // encoding name, flavor, or "-"
  bool ok = false;
  bool timeout = false;
  std::string error;
  std::optional<ExplicitDfa> dfa;
  /// Quantified predicates (m or n for mso, k+u for cmso), state variables
  /// for reverse, quantifiers for fol.
  std::size_t predicates = 0;
  /// Matrix clauses; BDD nodes of the transition family for reverse.
  std::size_t clauses = 0;
  std::size_t max_intermediate_states = 0;
  std::size_t final_states = 0;
  std::size_t final_transitions = 0;
  double millis = 0;
};

/// LTLf -> PLTLf of the reversal -> symbolic DFA -> explicit -> reverse ->
/// determinize -> minimize.
PipelineRun run_reverse(FormulaStore& store, LtlfFormula f, const std::vector<std::string>& atoms,
                        const PipelineOptions& opt = {});
PipelineRun run_mso(FormulaStore& store, LtlfFormula f, const EncodingConfig& cfg,
                    const std::vector<std::string>& atoms, const PipelineOptions& opt = {});
PipelineRun run_cmso(FormulaStore& store, LtlfFormula f, RevFlavor flavor,
                     const std::vector<std::string>& atoms, const PipelineOptions& opt = {});
/// Builds the first-order sentence; no automaton.
PipelineRun run_fol(LtlfFormula f, const PipelineOptions& opt = {});
/// Reverse, the six mso variations and both cmso flavors.
std::vector<PipelineRun> run_all(FormulaStore& store, LtlfFormula f,
                                 const PipelineOptions& opt = {});

/// Upper bound on the traces compared by check_formula.
inline constexpr std::uint64_t kCheckTraceCap = 200'000;

struct FormulaReport {
  std::string formula;
  std::vector<PipelineRun> runs;
  std::vector<std::string> problems;
  bool empty = false;
  bool universal = false;
  /// Longest trace compared; below the requested bound for wide alphabets.
  std::size_t trace_len = 0;
  bool consistent() const { return problems.empty(); }
};

/// Runs every pipeline and compares the minimized automata with each other
/// and with trace evaluation up to `trace_len`. The first-order sentences are
/// evaluated on the same traces. The bound shrinks until at most
/// kCheckTraceCap traces are compared. With `inject_fault` the bnf formula is also
/// encoded with sloppy constraints.
FormulaReport check_formula(const std::string& text, std::size_t trace_len,
                            const PipelineOptions& opt = {}, bool inject_fault = false);

/// Formula texts of a scalable family: conj-F, resp-chain or u-nest.
std::vector<std::string> gen_patterns(const std::string& family, std::size_t n);

/// `formula,pipeline,variation,predicates,clauses,max_intermediate_states,
/// final_states,final_transitions,millis` rows sorted by the first three.
std::string bench_csv(const std::vector<std::string>& formulas, const PipelineOptions& opt,
                      std::size_t jobs = 1);

/// M2L-STR source. `encoding` is fol, fol-past, or an mso variation name.
std::string emit_mona(FormulaStore& store, LtlfFormula f, const std::string& encoding);

/// key=value lines, `#` comments.
std::map<std::string, std::string> parse_config_file(const std::string& text);

/// Runs `work(i)` for i in [0, n) on up to `jobs` threads.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& work);

/// Command-line entry point; returns the process exit status.
int run_cli(int argc, char** argv);

}  // namespace ltlf

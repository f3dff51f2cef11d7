#include "ltlf2dfa/harness.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "ltlf2dfa/compiler.hpp"
#include "ltlf2dfa/errors.hpp"
#include "ltlf2dfa/fol.hpp"
#include "ltlf2dfa/semantics.hpp"
#include "ltlf2dfa/symbolic.hpp"

namespace ltlf {

namespace {

using Clock = std::chrono::steady_clock;

Deadline deadline_for(const PipelineOptions& opt) {
  return opt.timeout.count() > 0 ? Deadline::after(opt.timeout) : Deadline::none();
}

CompileOptions compile_options(const PipelineOptions& opt, const Deadline& d) {
  CompileOptions c;
  c.state_budget = opt.state_budget;
  c.node_cap = opt.node_cap;
  c.width_cap = opt.width_cap;
  c.deadline = d;
  return c;
}

/// Runs `body`, recording time, failures and the final automaton.
template <class Body>
PipelineRun guarded(std::string pipeline, std::string variation, Body body) {
  PipelineRun r;
  r.pipeline = std::move(pipeline);
  r.variation = std::move(variation);
  const auto t0 = Clock::now();
  try {
    body(r);
    r.ok = true;
    if (r.dfa) {
      r.final_states = r.dfa->num_states;
      r.final_transitions = r.dfa->transition_count();
    }
  } catch (const Timeout& e) {
    r.timeout = true;
    r.error = e.what();
  } catch (const Error& e) {
    r.error = e.what();
  }
  r.millis = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return r;
}

ExplicitDfa compile_with(const MonadicSentence& s, const PipelineOptions& opt, const Deadline& d,
                         CompileStats& stats) {
  const CompileOptions c = compile_options(opt, d);
  return opt.explicit_compile ? compile_explicit(s, c, &stats) : compile(s, c, &stats);
}

}  // namespace

PipelineRun run_reverse(FormulaStore& store, LtlfFormula f, const std::vector<std::string>& atoms,
                        const PipelineOptions& opt) {
  return guarded("reverse", "-", [&](PipelineRun& r) {
    const Deadline d = deadline_for(opt);
    SymbolicDfa sym = pltlf_to_symbolic_dfa(reverse_to_past(store, f), atoms, opt.node_cap);
    r.predicates = sym.k();
    r.clauses = sym.mgr->count_nodes(sym.eta);
    ExplicitDfa e = symbolic_to_explicit(sym, opt.state_budget, d);
    ExplicitDfa det = determinize(reverse(e), opt.state_budget, d);
    r.max_intermediate_states = std::max(e.num_states, det.num_states);
    r.dfa = minimize(det, d);
  });
}

PipelineRun run_mso(FormulaStore& store, LtlfFormula f, const EncodingConfig& cfg,
                    const std::vector<std::string>& atoms, const PipelineOptions& opt) {
  return guarded("mso", cfg.name(), [&](PipelineRun& r) {
    const Deadline d = deadline_for(opt);
    LtlfFormula g = cfg.norm == NormalForm::Nnf ? to_nnf(store, f) : to_bnf(store, f);
    MsoEncoding enc = encode_mso(g, cfg, atoms);
    r.predicates = enc.sentence.quantified_count();
    r.clauses = enc.sentence.matrix.size();
    CompileStats stats;
    r.dfa = compile_with(enc.sentence, opt, d, stats);
    r.max_intermediate_states = std::max(stats.matrix_states, stats.subset_states);
  });
}

PipelineRun run_cmso(FormulaStore& store, LtlfFormula f, RevFlavor flavor,
                     const std::vector<std::string>& atoms, const PipelineOptions& opt) {
  return guarded("cmso", to_string(flavor), [&](PipelineRun& r) {
    const Deadline d = deadline_for(opt);
    SymbolicDfa sym = pltlf_to_symbolic_dfa(reverse_to_past(store, f), atoms, opt.node_cap);
    RevSentence rev = build_rev(sym, flavor);
    r.predicates = rev.sentence.quantified_count();
    r.clauses = rev.clause_count();
    CompileStats stats;
    r.dfa = compile_with(rev.sentence, opt, d, stats);
    r.max_intermediate_states = std::max(stats.matrix_states, stats.subset_states);
  });
}

PipelineRun run_fol(LtlfFormula f, const PipelineOptions&) {
  return guarded("fol", "-", [&](PipelineRun& r) {
    FolPtr s = encode_fol(f);
    r.predicates = quantifier_count(s);
  });
}

std::vector<PipelineRun> run_all(FormulaStore& store, LtlfFormula f, const PipelineOptions& opt) {
  const auto atoms = atoms_of(f);
  std::vector<PipelineRun> runs;
  runs.push_back(run_reverse(store, f, atoms, opt));
  for (const EncodingConfig& cfg : all_configs()) runs.push_back(run_mso(store, f, cfg, atoms, opt));
  for (RevFlavor fl : {RevFlavor::Fussy, RevFlavor::Sloppy})
    runs.push_back(run_cmso(store, f, fl, atoms, opt));
  return runs;
}

FormulaReport check_formula(const std::string& text, std::size_t trace_len,
                            const PipelineOptions& opt, bool inject_fault) {
  FormulaReport rep;
  rep.formula = text;
  FormulaStore store;
  LtlfFormula f;
  try {
    f = parse_ltlf(store, text);
  } catch (const ParseError& e) {
    rep.problems.push_back(std::string("parse error: ") + e.what());
    return rep;
  }
  const auto atoms = atoms_of(f);
  const Alphabet alphabet(atoms);
  rep.runs = run_all(store, f, opt);

  if (inject_fault) {
    for (Variables v : {Variables::Full, Variables::Lean}) {
      const EncodingConfig cfg{NormalForm::Bnf, Constraint::Sloppy, v};
      rep.runs.push_back(guarded("mso", cfg.name(), [&](PipelineRun& r) {
        MsoEncoding enc = encode_mso_unchecked(to_bnf(store, f), cfg, atoms);
        r.predicates = enc.sentence.quantified_count();
        r.clauses = enc.sentence.matrix.size();
        CompileStats stats;
        r.dfa = compile_with(enc.sentence, opt, deadline_for(opt), stats);
      }));
    }
  }

  PipelineRun fol = run_fol(f, opt);
  const FolPtr fo = encode_fol(f);
  const FolPtr fo_past = encode_fol_past(reverse_to_past(store, f));
  // Wide alphabets get a shorter bound so the trace check stays small.
  rep.trace_len = std::max<std::size_t>(1, trace_len);
  auto count = [&](std::size_t len) {
    std::uint64_t total = 0, layer = 1;
    for (std::size_t i = 0; i < len; ++i) total += (layer *= alphabet.letter_count());
    return total;
  };
  while (rep.trace_len > 1 && count(rep.trace_len) > kCheckTraceCap) --rep.trace_len;
  const auto traces = all_traces(alphabet, rep.trace_len);

  const PipelineRun* reference = nullptr;
  for (const PipelineRun& r : rep.runs) {
    const std::string name = r.pipeline + "/" + r.variation;
    if (!r.ok) {
      // Budget exhaustion is recorded, not counted as a mismatch.
      continue;
    }
    for (const Trace& t : traces)
      if (accepts(*r.dfa, t) != satisfies(t, f)) {
        rep.problems.push_back(name + " disagrees with trace evaluation on " + format_trace(t));
        break;
      }
    if (!reference) {
      reference = &r;
      rep.empty = is_empty(*r.dfa);
      rep.universal = is_universal(*r.dfa);
    } else if (!isomorphic(*reference->dfa, *r.dfa)) {
      rep.problems.push_back(name + " is not isomorphic to " + reference->pipeline + "/" +
                             reference->variation);
    }
  }
  for (const Trace& t : traces) {
    const bool expected = satisfies(t, f);
    if (eval_fol(MonadicStructure::of(t), fo) != expected) {
      rep.problems.push_back("fol disagrees with trace evaluation on " + format_trace(t));
      break;
    }
    if (eval_fol(MonadicStructure::of(t.reversed()), fo_past) != expected) {
      rep.problems.push_back("fol-past disagrees with trace evaluation on " + format_trace(t));
      break;
    }
  }
  rep.runs.push_back(std::move(fol));
  return rep;
}

std::vector<std::string> gen_patterns(const std::string& family, std::size_t n) {
  if (n == 0) throw ConfigError("pattern scale must be at least 1");
  std::vector<std::string> out;
  std::string s;
  if (family == "conj-F") {
    for (std::size_t i = 1; i <= n; ++i)
      s += (i > 1 ? " & " : "") + std::string("F p") + std::to_string(i);
  } else if (family == "resp-chain") {
    for (std::size_t i = 1; i <= n; ++i) {
      const std::string k = std::to_string(i);
      s += (i > 1 ? " & " : "") + std::string("G(p") + k + " -> F q" + k + ")";
    }
  } else if (family == "u-nest") {
    s = "p" + std::to_string(n + 1);
    for (std::size_t i = n; i >= 1; --i)
      s = "p" + std::to_string(i) + " U " + (i == n ? s : "(" + s + ")");
  } else {
    throw ConfigError("unknown pattern family '" + family + "'");
  }
  out.push_back(s);
  return out;
}

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& work) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t j = 0; j < jobs; ++j)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) work(i);
    });
  for (auto& t : pool) t.join();
}

std::string bench_csv(const std::vector<std::string>& formulas, const PipelineOptions& opt,
                      std::size_t jobs) {
  struct Row {
    std::string formula;
    PipelineRun run;
  };
  std::vector<std::vector<Row>> per(formulas.size());
  parallel_for(formulas.size(), jobs, [&](std::size_t i) {
    FormulaStore store;
    LtlfFormula f = parse_ltlf(store, formulas[i]);
    for (PipelineRun& r : run_all(store, f, opt)) per[i].push_back({to_string(f), std::move(r)});
  });
  std::vector<Row> rows;
  for (auto& v : per)
    for (auto& r : v) rows.push_back(std::move(r));
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.formula, a.run.pipeline, a.run.variation) <
           std::tie(b.formula, b.run.pipeline, b.run.variation);
  });

  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  std::ostringstream os;
  os << "formula,pipeline,variation,predicates,clauses,max_intermediate_states,final_states,"
        "final_transitions,millis\n";
  for (const Row& row : rows) {
    const PipelineRun& r = row.run;
    os << quote(row.formula) << "," << r.pipeline << "," << r.variation << "," << r.predicates
       << "," << r.clauses << ",";
    if (r.ok) {
      os << r.max_intermediate_states << "," << r.final_states << "," << r.final_transitions;
    } else {
      const char* mark = r.timeout ? "TIMEOUT" : "FAILED";
      os << mark << "," << mark << "," << mark;
    }
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", r.millis);
    os << "," << ms << "\n";
  }
  return os.str();
}

// MONA emission --------------------------------------------------------------------------

namespace {

std::string mona_term(const FolTermPtr& t) {
  switch (t->kind) {
    case FolTerm::Kind::Var: return t->var;
    case FolTerm::Kind::Zero: return "0";
    case FolTerm::Kind::Last: return "$";
    case FolTerm::Kind::Succ: return mona_term(t->arg) + "+1";
    case FolTerm::Kind::Pred: return mona_term(t->arg) + "-1";
  }
  return "?";
}

std::string mona_fol(const FolPtr& f) {
  using K = FolFormula::Kind;
  auto bin = [&](const char* op) { return "(" + mona_fol(f->a) + " " + op + " " + mona_fol(f->b) + ")"; };
  auto cmp = [&](const char* op) { return mona_term(f->lhs) + " " + op + " " + mona_term(f->rhs); };
  switch (f->kind) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Apply: return mona_term(f->lhs) + " in " + f->name;
    case K::Eq: return cmp("=");
    case K::Neq: return cmp("~=");
    case K::Lt: return cmp("<");
    case K::Le: return cmp("<=");
    case K::Not: return "~(" + mona_fol(f->a) + ")";
    case K::And: return bin("&");
    case K::Or: return bin("|");
    case K::Implies: return bin("=>");
    case K::Exists: return "(ex1 " + f->name + ": " + mona_fol(f->a) + ")";
    case K::Forall: return "(all1 " + f->name + ": " + mona_fol(f->a) + ")";
  }
  return "?";
}

/// Prints matrix expressions pointwise around a base position.
struct MonaPrinter {
  const MonadicSentence& s;
  std::string base;

  std::string pos(int off) const {
    if (off == 0) return base;
    return base + (off > 0 ? "+" : "-") + std::to_string(off > 0 ? off : -off);
  }
  std::string top() { return "true"; }
  std::string bottom() { return "false"; }
  std::string member(int col, int off) {
    const std::string m = pos(off) + " in " + s.columns[col];
    return off > 0 ? "(" + pos(off) + " <= $ & " + m + ")" : m;
  }
  std::string exists(int off) {
    if (off == 0) return "true";
    return off > 0 ? pos(off) + " <= $" : base + " >= " + std::to_string(-off);
  }
  std::string negate(const std::string& a) { return "~(" + a + ")"; }
  std::string conj(const std::string& a, const std::string& b) {
    if (a == "true") return b;
    if (b == "true") return a;
    return "(" + a + " & " + b + ")";
  }
  std::string disj(const std::string& a, const std::string& b) {
    if (a == "false") return b;
    if (b == "false") return a;
    return "(" + a + " | " + b + ")";
  }
};

std::string mona_expr(const Expr& e, const MonadicSentence& s, const std::string& base) {
  MonaPrinter p{s, base};
  using K = Expr::Kind;
  // Guards and connectives keep their MONA shape; everything else is expanded.
  switch (e.kind) {
    case K::Guard:
      switch (e.guard) {
        case Guard::First: return base + " = 0";
        case Guard::Last: return base + " = $";
        case Guard::NotLast: return base + " ~= $";
        case Guard::Positive: return base + " > 0";
      }
      break;
    case K::Not: return "~(" + mona_expr(*e.args[0], s, base) + ")";
    case K::And:
    case K::Or: {
      const std::string unit = e.kind == K::And ? "true" : "false";
      std::vector<std::string> parts;
      for (const auto& a : e.args)
        if (std::string t = mona_expr(*a, s, base); t != unit) parts.push_back(t);
      if (parts.empty()) return unit;
      if (parts.size() == 1) return parts[0];
      std::string out = "(";
      for (std::size_t i = 0; i < parts.size(); ++i)
        out += (i ? (e.kind == K::And ? " & " : " | ") : "") + parts[i];
      return out + ")";
    }
    case K::Implies:
      return "(" + mona_expr(*e.args[0], s, base) + " => " + mona_expr(*e.args[1], s, base) + ")";
    case K::Iff:
      return "(" + mona_expr(*e.args[0], s, base) + " <=> " + mona_expr(*e.args[1], s, base) + ")";
    default: break;
  }
  return evaluate(e, p);
}

std::string free_vars(const std::vector<std::string>& atoms) {
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) out += (i ? ", " : "") + atoms[i];
  return out;
}

}  // namespace

std::string emit_mona(FormulaStore& store, LtlfFormula f, const std::string& encoding) {
  std::ostringstream os;
  const auto atoms = atoms_of(f);
  os << "# " << to_string(f) << " (" << encoding << ")\n";
  os << "m2l-str;\n";
  if (!atoms.empty()) os << "var2 " << free_vars(atoms) << ";\n";
  if (encoding == "fol") {
    os << mona_fol(encode_fol(f)) << ";\n";
    return os.str();
  }
  if (encoding == "fol-past") {
    os << mona_fol(encode_fol_past(reverse_to_past(store, f))) << ";\n";
    return os.str();
  }
  if (encoding == "cmso" || encoding == "fussy" || encoding == "sloppy")
    throw ConfigError("compact encodings have no MONA emission");
  const EncodingConfig cfg = parse_config(encoding);
  cfg.validate();
  LtlfFormula g = cfg.norm == NormalForm::Nnf ? to_nnf(store, f) : to_bnf(store, f);
  const MsoEncoding enc = encode_mso(g, cfg, atoms);
  const MonadicSentence& s = enc.sentence;
  std::string quantified;
  for (std::size_t c = s.free_count; c < s.columns.size(); ++c)
    quantified += (c > s.free_count ? ", " : "") + s.columns[c];
  const std::string indent = quantified.empty() ? "" : "  ";
  if (!quantified.empty()) os << "ex2 " << quantified << ":\n";
  os << indent << mona_expr(*s.init, s, "0");
  if (!s.matrix.empty()) {
    os << "\n" << indent << "& (all1 x:\n";
    for (std::size_t i = 0; i < s.matrix.size(); ++i)
      os << indent << (i ? "    & " : "      ") << mona_expr(*s.matrix[i].body, s, "x") << "\n";
    os << indent << ")";
  }
  os << ";\n";
  return os.str();
}

std::map<std::string, std::string> parse_config_file(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

// Command line ----------------------------------------------------------------------------

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> read_formulas(const std::string& path) {
  std::vector<std::string> out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(line);
  }
  return out;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

struct Settings {
  std::string config_path;
  std::size_t state_budget = kDefaultStateBudget;
  std::size_t node_cap = BddManager::kDefaultNodeCap;
  long timeout_ms = 0;
  std::size_t trace_len = 4;
  std::size_t jobs = 1;
  std::size_t width_cap = 16;
  bool explicit_compile = false;

  // Config values apply unless the same option was given on the command line.
  void apply_config(const CLI::App& app) {
    if (config_path.empty()) return;
    for (const auto& [key, value] : parse_config_file(read_file(config_path))) {
      auto set = [&](const char* flag, auto& field) {
        if (app.count(flag) > 0) return;
        try {
          field = static_cast<std::decay_t<decltype(field)>>(std::stoll(value));
        } catch (const std::exception&) {
          throw ConfigError("config key " + key + ": not a number");
        }
      };
      if (key == "state_budget") set("--state-budget", state_budget);
      else if (key == "node_cap") set("--node-cap", node_cap);
      else if (key == "timeout_ms") set("--timeout-ms", timeout_ms);
      else if (key == "trace_len") set("--trace-len", trace_len);
      else if (key == "jobs") set("--jobs", jobs);
      else if (key == "width_cap") set("--width-cap", width_cap);
      else throw ConfigError("unknown config key '" + key + "'");
    }
  }

  PipelineOptions options() const {
    PipelineOptions o;
    o.state_budget = state_budget;
    o.node_cap = node_cap;
    o.timeout = std::chrono::milliseconds(timeout_ms);
    o.explicit_compile = explicit_compile;
    o.width_cap = width_cap;
    return o;
  }
};

void add_common(CLI::App* cmd, Settings& s) {
  cmd->add_option("--config", s.config_path, "key=value file with budget settings");
  cmd->add_option("--state-budget", s.state_budget, "maximum automaton states per stage");
  cmd->add_option("--node-cap", s.node_cap, "maximum BDD nodes per store");
  cmd->add_option("--timeout-ms", s.timeout_ms, "deadline per pipeline run (0 = none)");
  cmd->add_option("--jobs", s.jobs, "worker threads");
  cmd->add_option("--width-cap", s.width_cap, "column cap of the explicit compiler");
  cmd->add_flag("--explicit", s.explicit_compile, "compile through the explicit matrix automaton");
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"LTLf to DFA translation through first-order, second-order and BDD-derived encodings"};
  app.require_subcommand(1);
  Settings settings;

  std::vector<std::string> formulas;
  std::string in_path, out_path, pipeline = "reverse", norm = "bnf", constraint = "fussy",
                                  vars = "full", flavor = "fussy", format = "explicit";
  auto* translate = app.add_subcommand("translate", "emit the minimized DFA of each formula");
  translate->add_option("--formula", formulas, "formula text");
  translate->add_option("--in", in_path, "file with one formula per line");
  translate->add_option("--pipeline", pipeline)
      ->check(CLI::IsMember({"reverse", "mso", "cmso", "fol-emit"}));
  translate->add_option("--norm", norm)->check(CLI::IsMember({"bnf", "nnf"}));
  translate->add_option("--constraint", constraint)->check(CLI::IsMember({"fussy", "sloppy"}));
  translate->add_option("--vars", vars)->check(CLI::IsMember({"full", "lean"}));
  translate->add_option("--flavor", flavor)->check(CLI::IsMember({"fussy", "sloppy"}));
  translate->add_option("--out", out_path);
  translate->add_option("--format", format)->check(CLI::IsMember({"dot", "explicit"}));
  add_common(translate, settings);

  bool inject_fault = false;
  auto* check = app.add_subcommand("check", "cross-validate every pipeline on a corpus");
  check->add_option("--formula", formulas);
  check->add_option("--in", in_path);
  check->add_option("--trace-len", settings.trace_len, "longest trace compared");
  check->add_flag("--inject-fault", inject_fault)->group("");
  add_common(check, settings);

  std::string pattern;
  std::size_t scale = 1;
  auto* bench = app.add_subcommand("bench", "CSV of encoding and automaton sizes");
  bench->add_option("--pattern", pattern)
      ->check(CLI::IsMember({"conj-F", "resp-chain", "u-nest"}));
  bench->add_option("--n", scale, "pattern scale (all sizes 1..n)");
  bench->add_option("--in", in_path);
  bench->add_option("--out", out_path);
  add_common(bench, settings);

  std::string encoding = "fol";
  std::string formula_text;
  auto* mona = app.add_subcommand("emit-mona", "write M2L-STR source for an encoding");
  mona->add_option("--formula", formula_text)->required();
  mona->add_option("--encoding", encoding, "fol, fol-past or an mso variation such as nnf-sloppy-lean");
  mona->add_option("--out", out_path);

  auto* gen = app.add_subcommand("gen", "print pattern formulas");
  gen->add_option("--pattern", pattern)->required()
      ->check(CLI::IsMember({"conj-F", "resp-chain", "u-nest"}));
  gen->add_option("--n", scale);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    auto corpus = [&] {
      std::vector<std::string> all = formulas;
      if (!in_path.empty())
        for (auto& f : read_formulas(in_path)) all.push_back(f);
      if (all.empty()) throw ConfigError("no formulas given (use --formula or --in)");
      return all;
    };

    if (*translate) {
      settings.apply_config(*translate);
      const PipelineOptions opt = settings.options();
      const auto all = corpus();
      std::string out;
      for (const std::string& text : all) {
        FormulaStore store;
        LtlfFormula f = parse_ltlf(store, text);
        if (all.size() > 1) out += "# " + text + "\n";
        if (pipeline == "fol-emit") {
          out += emit_mona(store, f, "fol");
          continue;
        }
        PipelineRun r;
        const auto atoms = atoms_of(f);
        if (pipeline == "reverse") {
          r = run_reverse(store, f, atoms, opt);
        } else if (pipeline == "mso") {
          const EncodingConfig cfg = parse_config(norm + "-" + constraint + "-" + vars);
          cfg.validate();
          r = run_mso(store, f, cfg, atoms, opt);
        } else {
          r = run_cmso(store, f, parse_flavor(flavor), atoms, opt);
        }
        if (!r.ok) throw BudgetExceeded(r.error);
        out += format == "dot" ? to_dot(*r.dfa) : to_explicit(*r.dfa);
      }
      write_output(out_path, out);
      return 0;
    }

    if (*check) {
      settings.apply_config(*check);
      const PipelineOptions opt = settings.options();
      const auto all = corpus();
      std::vector<FormulaReport> reports(all.size());
      parallel_for(all.size(), settings.jobs, [&](std::size_t i) {
        reports[i] = check_formula(all[i], settings.trace_len, opt, inject_fault);
      });
      bool bad = false;
      for (const FormulaReport& rep : reports) {
        std::size_t states = 0, failed = 0;
        for (const PipelineRun& r : rep.runs) {
          if (r.dfa) states = r.dfa->num_states;
          if (!r.ok) ++failed;
        }
        std::cout << rep.formula << ": " << (rep.consistent() ? "consistent" : "MISMATCH")
                  << ", " << states << " states";
        if (rep.empty) std::cout << ", empty";
        if (rep.universal) std::cout << ", valid";
        if (rep.trace_len && rep.trace_len < settings.trace_len) std::cout << ", traces up to length " << rep.trace_len;
        if (failed) std::cout << ", " << failed << " pipeline(s) out of budget";
        std::cout << "\n";
        for (const PipelineRun& r : rep.runs)
          if (!r.ok) std::cout << "  " << r.pipeline << "/" << r.variation << ": " << r.error << "\n";
        for (const std::string& p : rep.problems) std::cout << "  " << p << "\n";
        bad = bad || !rep.consistent();
      }
      return bad ? 1 : 0;
    }

    if (*bench) {
      settings.apply_config(*bench);
      std::vector<std::string> all;
      if (!pattern.empty())
        for (std::size_t n = 1; n <= scale; ++n)
          for (auto& f : gen_patterns(pattern, n)) all.push_back(f);
      if (!in_path.empty())
        for (auto& f : read_formulas(in_path)) all.push_back(f);
      if (all.empty()) throw ConfigError("no formulas given (use --pattern or --in)");
      write_output(out_path, bench_csv(all, settings.options(), settings.jobs));
      return 0;
    }

    if (*mona) {
      FormulaStore store;
      write_output(out_path, emit_mona(store, parse_ltlf(store, formula_text), encoding));
      return 0;
    }

    if (*gen) {
      for (std::size_t n = 1; n <= scale; ++n)
        for (auto& f : gen_patterns(pattern, n)) std::cout << f << "\n";
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace ltlf

#include <doctest.h>

#include <random>

#include "ltlf2dfa/automata.hpp"
#include "ltlf2dfa/errors.hpp"
#include "ltlf2dfa/harness.hpp"
#include "support.hpp"

using namespace ltlf;

namespace {

ExplicitDfa eventually_a() {
  ExplicitDfa d;
  d.alphabet = Alphabet({"a"});
  d.num_states = 2;
  d.delta = {0, 1, 1, 1};
  d.accepting = {false, true};
  return d;
}

ExplicitDfa random_dfa(std::mt19937& rng, const Alphabet& sigma, std::size_t n) {
  ExplicitDfa d;
  d.alphabet = sigma;
  d.num_states = n;
  std::uniform_int_distribution<State> pick(0, static_cast<State>(n - 1));
  for (std::size_t i = 0; i < n * d.letters(); ++i) d.delta.push_back(pick(rng));
  for (std::size_t i = 0; i < n; ++i) d.accepting.push_back(rng() % 3 == 0);
  return d;
}

// Fresh non-accepting start state, so the empty word is outside the language.
ExplicitDfa without_empty_word(ExplicitDfa d) {
  const State fresh = static_cast<State>(d.num_states);
  for (Letter l = 0; l < d.letters(); ++l) d.delta.push_back(d.next(d.initial, l));
  d.accepting.push_back(false);
  d.initial = fresh;
  ++d.num_states;
  return d;
}

ExplicitDfa dfa_of(FormulaStore& s, const std::string& text, const std::vector<std::string>& atoms) {
  return *run_reverse(s, parse_ltlf(s, text), atoms).dfa;
}

}  // namespace

TEST_SUITE("automata") {

TEST_CASE("determinize examples") {
  ExplicitDfa fa = eventually_a();
  CHECK(isomorphic(determinize(as_nfa(fa)), fa));

  ExplicitDfa back = determinize(reverse(fa));
  CHECK(minimize(back).num_states == 2);
  std::vector<Trace> expected;
  for (const Trace& t : bounded_language(fa, 4)) expected.push_back(t.reversed());
  std::sort(expected.begin(), expected.end());
  CHECK(bounded_language(back, 4) == expected);

  Nfa none;
  none.alphabet = Alphabet({"a"});
  ExplicitDfa empty = determinize(none);
  CHECK(empty.num_states == 1);
  CHECK(is_empty(empty));
}

TEST_CASE("determinize budget") {
  std::mt19937 rng(1);
  ExplicitDfa d = random_dfa(rng, Alphabet({"a", "b"}), 30);
  CHECK_THROWS_AS(determinize(reverse(d), 2), BudgetExceeded);
}

TEST_CASE("minimize examples") {
  FormulaStore s;
  ExplicitDfa fa = eventually_a();
  CHECK(isomorphic(minimize(fa), fa));
  CHECK(minimize(fa).num_states == 2);
  CHECK(minimize(dfa_of(s, "p", {"p"})).num_states == 3);
  CHECK(testing::oracle_dfa(s, parse_ltlf(s, "p"), Alphabet({"p"})).num_states == 3);
  CHECK(testing::oracle_dfa(s, parse_ltlf(s, "F a"), Alphabet({"a"})).num_states == 2);
}

TEST_CASE("minimize agrees with reversal-based minimization") {
  std::mt19937 rng(2);
  for (int i = 0; i < 400; ++i) {
    const Alphabet sigma = i % 2 ? Alphabet({"a"}) : Alphabet({"a", "b"});
    ExplicitDfa d = random_dfa(rng, sigma, 1 + i % 9);
    ExplicitDfa m = minimize(d);
    ExplicitDfa oracle = testing::brzozowski(without_empty_word(d));
    REQUIRE(m.num_states == oracle.num_states);
    REQUIRE(isomorphic(m, oracle));
    REQUIRE(equivalent(m, d));
    REQUIRE(isomorphic(minimize(m), m));
    REQUIRE(bounded_language(m, 4) == bounded_language(d, 4));
  }
}

TEST_CASE("reverse examples") {
  FormulaStore s;
  ExplicitDfa all;
  all.alphabet = Alphabet({"a"});
  all.num_states = 1;
  all.delta = {0, 0};
  all.accepting = {true};
  CHECK(isomorphic(determinize(reverse(all)), all));

  ExplicitDfa since = dfa_of(s, "p U q", {"p", "q"});
  std::vector<Trace> expected;
  for (const Trace& t : bounded_language(parse_ltlf(s, "p U q"), since.alphabet, 4))
    expected.push_back(t.reversed());
  std::sort(expected.begin(), expected.end());
  CHECK(bounded_language(determinize(reverse(since)), 4) == expected);

  std::mt19937 rng(3);
  for (int i = 0; i < 100; ++i) {
    ExplicitDfa d = random_dfa(rng, Alphabet({"a", "b"}), 1 + i % 7);
    ExplicitDfa twice = minimize(determinize(reverse(determinize(reverse(d)))));
    REQUIRE(bounded_language(twice, 4) == bounded_language(minimize(d), 4));
  }
}

TEST_CASE("equivalence, isomorphism and emptiness") {
  FormulaStore s;
  ExplicitDfa fa = eventually_a();
  CHECK(isomorphic(fa, fa));
  CHECK(is_empty(dfa_of(s, "a & !a", {"a"})));
  CHECK(is_universal(dfa_of(s, "a | !a", {"a"})));
  CHECK_FALSE(is_empty(fa));
  CHECK(is_empty(complement(dfa_of(s, "true", {"a"}))));

  LtlfFormula g = parse_ltlf(s, "G(a -> X b)");
  ExplicitDfa p1 = *run_reverse(s, g, {"a", "b"}).dfa;
  ExplicitDfa p2 = *run_mso(s, g, {NormalForm::Nnf, Constraint::Sloppy, Variables::Lean}, {"a", "b"}).dfa;
  CHECK(equivalent(p1, p2));

  ExplicitDfa other = dfa_of(s, "G a", {"a"});
  CHECK_THROWS_AS(equivalent(other, dfa_of(s, "a", {"a", "b"})), Error);
}

TEST_CASE("equivalence matches isomorphism of minimal automata") {
  std::mt19937 rng(4);
  for (int i = 0; i < 400; ++i) {
    ExplicitDfa a = random_dfa(rng, Alphabet({"a"}), 1 + i % 4);
    ExplicitDfa b = random_dfa(rng, Alphabet({"a"}), 1 + (i / 4) % 4);
    REQUIRE(equivalent(a, b) == isomorphic(minimize(a), minimize(b)));
  }
}

TEST_CASE("empty word is rejected") {
  ExplicitDfa all;
  all.alphabet = Alphabet({"a"});
  all.num_states = 1;
  all.delta = {0, 0};
  all.accepting = {true};
  CHECK_FALSE(accepts(all, Trace{all.alphabet, {}}));
  CHECK(accepts(all, Trace{all.alphabet, {0}}));
  CHECK(minimize(all).num_states == 2);
}

TEST_CASE("explicit format round trip") {
  FormulaStore s;
  ExplicitDfa d = dfa_of(s, "a U b", {"a", "b"});
  const std::string text = to_explicit(d);
  CHECK(text.rfind("dfa " + std::to_string(d.num_states) + " 2 0", 0) == 0);
  CHECK(to_explicit(parse_explicit(d.alphabet, text)) == text);
  CHECK_THROWS_AS(parse_explicit(d.alphabet, "dfa 1 2 0\nacc:\n0 11 5\n"), Error);
  CHECK(to_dot(d).find("digraph") != std::string::npos);
}

TEST_CASE("canonical numbering is breadth first") {
  std::mt19937 rng(5);
  for (int i = 0; i < 100; ++i) {
    ExplicitDfa d = canonicalize(random_dfa(rng, Alphabet({"a", "b"}), 6));
    CHECK(d.initial == 0);
    State seen = 0;
    for (State q = 0; q < d.num_states; ++q)
      for (Letter l = 0; l < d.letters(); ++l) {
        const State t = d.next(q, l);
        REQUIRE(t <= seen + 1);
        seen = std::max(seen, t);
      }
  }
}

}

#include <doctest.h>

#include "ltlf2dfa/bdd.hpp"
#include "ltlf2dfa/errors.hpp"
#include "support.hpp"

using namespace ltlf;

TEST_SUITE("bdd") {

TEST_CASE("apply examples") {
  BddManager m(3);
  const BddRef v = m.var(0);
  CHECK(m.conj(v, m.negate(v)) == m.zero());
  CHECK(m.disj(v, m.negate(v)) == m.one());
  CHECK(m.ite(v, m.one(), m.zero()) == v);
  CHECK(m.compose(v, 0, m.var(2)) == m.var(2));
  CHECK(m.restrict(m.conj(v, m.var(1)), 0, true) == m.var(1));
  CHECK(m.nvar(1) == m.negate(m.var(1)));
}

TEST_CASE("nodes are ordered, reduced and unique") {
  BddManager m(4);
  const BddRef f = m.disj(m.conj(m.var(0), m.var(2)), m.conj(m.var(1), m.var(3)));
  CHECK(m.check_invariants(f));
  CHECK(m.make(1, f, f) == f);
  const BddRef n = m.make(3, m.zero(), m.one());
  CHECK(n == m.var(3));
  CHECK(m.support(f) == std::vector<unsigned>{0, 1, 2, 3});
  CHECK(m.count_nodes({f}) == 6);
}

TEST_CASE("quantification and renaming") {
  BddManager m(6);
  const BddRef f = m.conj(m.var(0), m.exclusive_or(m.var(1), m.var(2)));
  CHECK(m.exists(f, {false, true, false, false, false, false}) == m.var(0));
  CHECK(m.exists(f, {true, true, true, false, false, false}) == m.one());
  CHECK(m.and_exists(m.var(1), m.nvar(1), {false, true, false, false, false, false}) == m.zero());
  const BddRef g = m.rename_monotone(f, {3, 4, 5, 5, 5, 5});
  CHECK(g == m.conj(m.var(3), m.exclusive_or(m.var(4), m.var(5))));
}

TEST_CASE("simultaneous substitution") {
  BddManager m(3);
  const BddRef f = m.conj(m.var(0), m.negate(m.var(1)));
  std::vector<BddRef> sub{m.var(1), m.var(0), BddManager::kNoSubstitution};
  CHECK(m.vector_compose(f, sub) == m.conj(m.var(1), m.negate(m.var(0))));
}

TEST_CASE("garbage collection keeps functions") {
  BddManager m(5);
  BddRef keep = m.var(0);
  for (unsigned i = 1; i < 5; ++i) keep = m.exclusive_or(keep, m.var(i));
  for (int i = 0; i < 50; ++i) m.conj(m.var(i % 5), m.var((i + 2) % 5));
  std::vector<bool> assignment(5);
  auto out = m.collect_garbage({keep});
  CHECK(m.size() == 2 + 9);
  CHECK(m.check_invariants(out[0]));
  for (unsigned a = 0; a < 32; ++a) {
    int parity = 0;
    for (unsigned v = 0; v < 5; ++v) {
      assignment[v] = (a >> v) & 1;
      parity ^= assignment[v];
    }
    CHECK(m.eval(out[0], assignment) == (parity == 1));
  }
}

TEST_CASE("node cap") {
  BddManager m(16, 40);
  BddRef f = m.zero();
  CHECK_THROWS_AS(
      [&] {
        for (unsigned i = 0; i < 8; ++i) f = m.disj(f, m.conj(m.var(i), m.var(i + 8)));
      }(),
      BudgetExceeded);
}

TEST_CASE("equal functions share a root") {
  testing::BddFuzzer fuzz(6, 99);
  for (int i = 0; i < 20000; ++i) {
    const std::string why = fuzz.round();
    REQUIRE_MESSAGE(why.empty(), why);
  }
}

TEST_CASE("dot dump") {
  BddManager m(2);
  const std::string dot = m.to_dot({m.conj(m.var(0), m.var(1))}, {"x", "p"});
  CHECK(dot.find("style=dashed") != std::string::npos);
  CHECK(dot.find("\"x\"") != std::string::npos);
}

}

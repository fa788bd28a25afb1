#include "doctest.h"
#include "fel/axioms.hpp"
#include "fel/error.hpp"
#include "fel/scl.hpp"
#include "fel/semantics.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace fel;
using testing::E;
using testing::leafF;
using testing::leafT;
using testing::N;

namespace {

SclExpr sa(const char* n) { return SclExpr::atom(Atom(n)); }

// Random short-circuit term over a, b, c.
SclExpr random_scl(std::mt19937_64& rng, int budget) {
  if (budget == 0) {
    switch (rng() % 5) {
      case 0: return SclExpr::top();
      case 1: return SclExpr::bottom();
      case 2: return sa("a");
      case 3: return sa("b");
      default: return sa("c");
    }
  }
  switch (rng() % 3) {
    case 0: return SclExpr::negation(random_scl(rng, budget - 1));
    case 1: return SclExpr::sc_and(random_scl(rng, budget / 2), random_scl(rng, budget - 1 - budget / 2));
    default: return SclExpr::sc_or(random_scl(rng, budget / 2), random_scl(rng, budget - 1 - budget / 2));
  }
}

}  // namespace

TEST_SUITE("scl") {
  TEST_CASE("se examples") {
    CHECK(se(SclExpr::sc_and(sa("a"), sa("b"))) == N("a", N("b", leafT(), leafF()), leafF()));
    CHECK(se(sa("a")) == N("a", leafT(), leafF()));
    CHECK(se(SclExpr::sc_or(sa("a"), sa("b"))) == N("a", leafT(), N("b", leafT(), leafF())));
    CHECK(se(SclExpr::negation(sa("a"))) == N("a", leafF(), leafT()));
    CHECK(se(SclExpr::top()) == leafT());
  }

  TEST_CASE("se matches the short-circuit interpreter") {
    std::mt19937_64 rng(81);
    for (int i = 0; i < 3000; ++i) {
      SclExpr p = random_scl(rng, static_cast<int>(rng() % 9));
      REQUIRE(se(p) == oracle::se(p));
    }
  }

  TEST_CASE("translate_t") {
    CHECK(translate_t(E("a & b")) ==
          SclExpr::sc_and(SclExpr::sc_or(sa("a"), SclExpr::sc_and(sa("b"), SclExpr::bottom())), sa("b")));
    CHECK(translate_t(E("a | b")) ==
          SclExpr::sc_or(SclExpr::sc_and(sa("a"), SclExpr::sc_or(sa("b"), SclExpr::top())), sa("b")));
    CHECK(translate_t(E("a")) == sa("a"));
    CHECK(translate_t(E("!a")) == SclExpr::negation(sa("a")));
    CHECK(translate_t(E("T")) == SclExpr::top());
    CHECK_THROWS_AS(translate_t(E("a & U")), PreconditionError);
    CHECK(print(translate_t(E("a & b"))) == "(a || b && F) && b");
  }

  TEST_CASE("bridge examples") {
    CHECK(bridge_check(E("a & b")));
    CHECK(bridge_check(E("!(b | !a)")));
    CHECK(bridge_check(E("T")));
  }

  TEST_CASE("bridge on all small expressions") {
    for (const Expr& p : testing::all_exprs(testing::u_free_leaves_ab(), 4)) REQUIRE(fe(p) == se(translate_t(p)));
    for (const Expr& p : testing::random_exprs(1000, 82, false, 10)) REQUIRE(bridge_check(p));
  }

  TEST_CASE("static reading of translations matches SFEL") {
    auto exprs = testing::random_exprs(200, 83, false, 4);
    AtomString beta = AtomString::parse("a,b,c");
    for (std::size_t i = 0; i < exprs.size(); ++i)
      for (std::size_t j = i; j < exprs.size(); j += 5) {
        bool static_eq = sfe(beta, exprs[i]) == sfe(beta, exprs[j]);
        bool scl_eq = sse(beta, translate_t(exprs[i])) == sse(beta, translate_t(exprs[j]));
        REQUIRE(static_eq == scl_eq);
      }
  }

  TEST_CASE("identify_full") {
    CHECK(identify_full(SclExpr::sc_and(sa("a"), SclExpr::negation(sa("b")))) == E("a & !b"));
    CHECK(identify_full(SclExpr::sc_or(SclExpr::top(), sa("c"))) == E("T | c"));
  }

  TEST_CASE("short-circuit axioms hold statically") {
    CHECK(check_set(Logic::sfel(), axiom_set("eqsscl"), Exhaustive{atoms_named({"a", "b"}), 3}).all_valid());
  }

  TEST_CASE("printing") {
    CHECK(print(SclExpr::sc_or(SclExpr::sc_and(sa("a"), sa("b")), sa("c"))) == "a && b || c");
    CHECK(print(SclExpr::sc_and(sa("a"), SclExpr::sc_or(sa("b"), sa("c")))) == "a && (b || c)");
    CHECK(print(SclExpr::negation(SclExpr::sc_and(sa("a"), sa("b")))) == "!(a && b)");
    CHECK(print(SclExpr::sc_or(SclExpr::sc_and(sa("a"), sa("b")), sa("c")), PrintOptions{true}) == "(a && b) || c");
  }
}

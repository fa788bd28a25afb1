#include "doctest.h"
#include "fel/error.hpp"
#include "fel/fnf.hpp"
#include "fel/invert.hpp"
#include "fel/semantics.hpp"
#include "support.hpp"

using namespace fel;
using testing::E;
using testing::L;
using testing::leafF;
using testing::leafT;
using testing::N;

namespace {

bool contains(const std::vector<Decomposition>& ds, const Decomposition& d) {
  return std::find(ds.begin(), ds.end(), d) != ds.end();
}

}  // namespace

TEST_SUITE("invert") {
  TEST_CASE("candidate decompositions") {
    EvalTree ab = fe(E("a & b"));
    Decomposition expected{N("a", L(Leaf::D1), L(Leaf::D2)), N("b", leafT(), leafF())};
    CHECK(contains(find_ccd(ab), expected));
    CHECK(find_cdd(ab).empty());
    CHECK(find_ccd(leafT()).empty());
    CHECK(find_cdd(leafT()).empty());
    for (const Decomposition& d : find_ccd(ab)) CHECK(reassemble_conjunction(d) == ab);
  }

  TEST_CASE("cd and dd") {
    Decomposition expected{N("a", L(Leaf::D1), L(Leaf::D2)), N("b", leafT(), leafF())};
    CHECK(cd(fe(E("(a & T) & (b & T)"))) == expected);
    EvalTree disj = fe(E("(a & T) | (b & T)"));
    CHECK(dd(disj) == expected);
    CHECK_THROWS_AS(cd(disj), NoDecomposition);
    CHECK_THROWS_AS(cd(N("a", leafT(), leafF())), NoDecomposition);
    CHECK(reassemble_disjunction(dd(disj)) == disj);
  }

  TEST_CASE("tsd") {
    CHECK(tsd(fe(E("T & (a & T)"))) == Decomposition{L(Leaf::D), N("a", leafT(), leafF())});
    CHECK(tsd(fe(E("(c | T) & (a & T)"))) == Decomposition{N("c", L(Leaf::D), L(Leaf::D)), N("a", leafT(), leafF())});
    CHECK_THROWS_AS(tsd(N("a", leafT(), leafT())), NoDecomposition);
  }

  TEST_CASE("g examples") {
    CHECK(g(N("a", leafT(), leafT())) == E("a | T"));
    CHECK(g(fe(E("T & (a & T)"))) == E("T & (a & T)"));
    CHECK(g(fe(E("T & ((a & T) & (b & T))"))) == E("T & ((a & T) & (b & T))"));
    CHECK(g(leafT()) == E("T"));
    CHECK(g(leafF()) == E("F"));
    CHECK(g(N("a", leafF(), leafF())) == E("a & F"));
  }

  TEST_CASE("g rejects trees outside the image") {
    CHECK_THROWS_AS(g(L(Leaf::U)), NotInImage);
    // Memorising trees need not be full-evaluation images.
    CHECK_THROWS_AS(g(N("a", N("b", leafT(), leafF()), N("c", leafT(), leafF()))), NotInImage);
    CHECK_THROWS_AS(g(N("a", leafT(), N("b", leafT(), leafF()))), NotInImage);
  }

  TEST_CASE("round trip and decomposition properties") {
    auto pool = enumerate_fnf(atoms_named({"a", "b", "c"}), 9);
    REQUIRE(pool.size() > 200);
    for (const Expr& p : pool) {
      CAPTURE(p);
      EvalTree t = fe(p);
      REQUIRE(g(t) == p);
      for (const Decomposition& d : find_ccd(t)) REQUIRE(reassemble_conjunction(d) == t);
      for (const Decomposition& d : find_cdd(t)) REQUIRE(reassemble_disjunction(d) == t);
      if (classify(p) == FnfCategory::TStarTerm) {
        Decomposition d = tsd(t);
        REQUIRE(reassemble_tstar(d) == t);
        REQUIRE_FALSE(d.context.leaf_kinds().intersects(LeafSet{Leaf::T, Leaf::F}));
        REQUIRE(d.core == fe(p.right()));
        REQUIRE_FALSE(has_nontrivial_decomposition(d.core));
      }
    }
  }

  TEST_CASE("star terms decompose as predicted") {
    std::function<void(const Expr&)> visit = [&](const Expr& e) {
      FnfCategory c = classify(e);
      if (c == FnfCategory::StarConj) {
        Decomposition d = cd(fe(e));
        REQUIRE(d.core == fe(e.right()));
        REQUIRE(d.context == replace_leaves(fe(e.left()), LeafMap().set(Leaf::T, L(Leaf::D1)).set(Leaf::F, L(Leaf::D2))));
        REQUIRE_THROWS_AS(dd(fe(e)), NoDecomposition);
      } else if (c == FnfCategory::StarDisj) {
        Decomposition d = dd(fe(e));
        REQUIRE(d.core == fe(e.right()));
        REQUIRE_THROWS_AS(cd(fe(e)), NoDecomposition);
      }
      if (is_star_term(e)) REQUIRE_FALSE(has_nontrivial_decomposition(fe(e)));
      if (e.is_binary()) {
        visit(e.left());
        visit(e.right());
      }
    };
    for (const Expr& p : enumerate_fnf(atoms_named({"a", "b"}), 11)) visit(p);
  }

  TEST_CASE("g inverts fe on normalised expressions") {
    for (const Expr& p : testing::random_exprs(800, 61, false, 7)) {
      Expr nf = normalize_ffel(p);
      REQUIRE(g(fe(p)) == nf);
    }
  }
}

#include <unordered_map>

#include "doctest.h"
#include "fel/error.hpp"
#include "fel/semantics.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace fel;
using testing::E;
using testing::L;
using testing::leafF;
using testing::leafT;
using testing::leafU;
using testing::N;

namespace {

std::vector<Expr> with_u_leaves() { return {E("a"), E("b"), E("T"), E("F"), E("U")}; }

const std::vector<Logic>& all_logics() {
  static const std::vector<Logic> logics{Logic::ffel(),   Logic::ffelu(), Logic::mfel(), Logic::mfelu(),
                                         Logic::clfel2(), Logic::clfel(),  Logic::sfel()};
  return logics;
}

}  // namespace

TEST_SUITE("semantics") {
  TEST_CASE("fe examples") {
    CHECK(fe(E("a")) == N("a", leafT(), leafF()));
    EvalTree worked = N("b", N("a", leafF(), leafF()), N("a", leafT(), leafF()));
    CHECK(fe(E("!b & a")) == worked);
    CHECK(fe(E("!(b | !a)")) == worked);
    CHECK(fe(E("T")) == leafT());
    CHECK(fe(E("a & b | c")) == oracle::fe(E("a & b | c")));
    CHECK_THROWS_AS(fe(E("a & U")), PreconditionError);
  }

  TEST_CASE("fe_u examples") {
    CHECK(fe_u(E("a & U")) == N("a", leafU(), leafU()));
    CHECK(fe_u(E("(a | T) & b")) == N("a", N("b", leafT(), leafF()), N("b", leafT(), leafF())));
    CHECK(fe_u(E("T")) == leafT());
    CHECK(fe_u(E("U & a")) == leafU());
    CHECK(fe_u(E("!U")) == leafU());
  }

  TEST_CASE("memo examples") {
    CHECK(memo(fe(E("a & a"))) == N("a", leafT(), leafF()));
    CHECK(memo(fe(E("a | !a"))) == N("a", leafT(), leafT()));
    CHECK(memo(fe(E("(a & b) | (!a & !b)"))) == N("a", N("b", leafT(), leafF()), N("b", leafF(), leafT())));
    CHECK(mfe(E("a & b")) == N("a", N("b", leafT(), leafF()), N("b", leafF(), leafF())));
    CHECK(mfe_u(E("b & (U | T)")) == N("b", leafU(), leafU()));
    CHECK(mfe_u(E("b & (U | T)")) == fe_u(E("b & U")));
    CHECK(mfe_u(E("U")) == leafU());
    CHECK_THROWS_AS(memo(L(Leaf::D)), PreconditionError);
  }

  TEST_CASE("la and ra prune to one side") {
    Atom a("a");
    EvalTree x = N("b", N("a", leafT(), leafF()), N("a", leafF(), N("c", leafT(), leafF())));
    CHECK(la(a, x) == N("b", leafT(), leafF()));
    CHECK(ra(a, x) == N("b", leafF(), N("c", leafT(), leafF())));
    CHECK(la(a, leafU()) == leafU());
  }

  TEST_CASE("clfe and sfe examples") {
    CHECK(clfe(E("b & a")) == mfe(E("a & b")));
    CHECK(clfe(E("b | a")) == mfe(E("a | b")));
    CHECK(clfe(E("(b | a) & b")) == mfe(E("(a | T) & b")));
    CHECK(clfe(E("b & (a | b)")) == mfe(E("(a | T) & b")));
    CHECK(clfe_u(E("a & U")) == leafU());
    CHECK(clfe_u(E("a & b")) == clfe(E("a & b")));
    AtomString ab = AtomString::parse("a,b");
    EvalTree all_t = N("a", N("b", leafT(), leafT()), N("b", leafT(), leafT()));
    CHECK(sfe(ab, E("T")) == all_t);
    CHECK(sfe(ab, E("!b | b")) == all_t);
    CHECK(sfe(ab, E("b | T")) == all_t);
    EvalTree just_a = N("a", N("b", leafT(), leafT()), N("b", leafF(), leafF()));
    CHECK(sfe(ab, E("a")) == just_a);
    CHECK(sfe(ab, E("b & F | a")) == just_a);
    CHECK(sfe(ab, E("(b & a) | (!b & a)")) == just_a);
    CHECK(sfe(ab, E("b")) == N("a", N("b", leafT(), leafF()), N("b", leafT(), leafF())));
    CHECK_THROWS_AS(sfe(ab, E("c")), PreconditionError);
    CHECK_THROWS_AS(sfe(ab, E("a & U")), PreconditionError);
  }

  TEST_CASE("equiv examples") {
    CHECK_FALSE(equiv(Logic::ffel(), E("a & a"), E("a")).equivalent);
    CHECK(equiv(Logic::mfel(), E("a & a"), E("a")).equivalent);
    CHECK(equiv(Logic::clfel2(), E("a & b"), E("b & a")).equivalent);
    CHECK_FALSE(equiv(Logic::mfel(), E("a & b"), E("b & a")).equivalent);
    CHECK(equiv(Logic::sfel(AtomString::parse("a")), E("a & F"), E("F")).equivalent);
    CHECK_FALSE(equiv(Logic::clfel2(), E("a & F"), E("F")).equivalent);
    CHECK(equiv(Logic::sfel(), E("a & F"), E("F")).equivalent);
    Equivalence e = equiv(Logic::ffel(), E("a & a"), E("a"));
    CHECK(e.left == fe(E("a & a")));
    CHECK(e.right == fe(E("a")));
    CHECK_THROWS_AS(equiv(Logic::mfel(), E("U"), E("a")), PreconditionError);
    CHECK_THROWS_AS(equiv(Logic::sfel(AtomString::parse("a")), E("b"), E("a")), PreconditionError);
  }

  TEST_CASE("logic names") {
    for (const char* name : {"ffel", "ffelu", "mfel", "mfelu", "clfel2", "clfel", "sfel"})
      CHECK(Logic::from_name(name).name() == name);
    CHECK_THROWS_AS(Logic::from_name("bogus"), PreconditionError);
    CHECK(Logic::ffelu().admits_u());
    CHECK(Logic::mfelu().admits_u());
    CHECK(Logic::clfel().admits_u());
    CHECK_FALSE(Logic::ffel().admits_u());
    CHECK_FALSE(Logic::sfel().admits_u());
  }

  TEST_CASE("fe matches the path interpreter exhaustively") {
    for (const Expr& p : testing::all_exprs(testing::u_free_leaves_ab(), 4)) REQUIRE(fe(p) == oracle::fe(p));
    for (const Expr& p : testing::all_exprs(with_u_leaves(), 3)) REQUIRE(fe_u(p) == oracle::fe(p));
  }

  TEST_CASE("fe matches the path interpreter on random input") {
    for (const Expr& p : testing::random_exprs(2000, 31, false, 8)) REQUIRE(fe(p) == oracle::fe(p));
    for (const Expr& p : testing::random_exprs(2000, 32, true, 8)) REQUIRE(fe_u(p) == oracle::fe(p));
  }

  TEST_CASE("continuation evaluation equals leaf replacement") {
    std::function<EvalTree(const Expr&)> by_replacement = [&](const Expr& p) -> EvalTree {
      switch (p.op()) {
        case Op::True: return leafT();
        case Op::False: return leafF();
        case Op::Undef: return leafU();
        case Op::Atom: return EvalTree::node(p.atom(), leafT(), leafF());
        case Op::Not: return tree_not(by_replacement(p.operand()));
        case Op::And: return tree_and(by_replacement(p.left()), by_replacement(p.right()));
        case Op::Or: return tree_or(by_replacement(p.left()), by_replacement(p.right()));
      }
      return leafU();
    };
    for (const Expr& p : testing::random_exprs(3000, 33, true, 10)) REQUIRE(fe_u(p) == by_replacement(p));
  }

  TEST_CASE("fe_u_equals agrees with building the tree") {
    auto exprs = testing::random_exprs(300, 34, true, 5);
    std::vector<EvalTree> trees;
    for (const Expr& p : exprs) trees.push_back(fe_u(p));
    for (std::size_t i = 0; i < exprs.size(); ++i)
      for (std::size_t j = 0; j < trees.size(); j += 3) REQUIRE(fe_u_equals(exprs[i], trees[j]) == (fe_u(exprs[i]) == trees[j]));
  }

  TEST_CASE("mfe matches the memorising interpreter") {
    for (const Expr& p : testing::all_exprs(testing::u_free_leaves_ab(), 4)) REQUIRE(mfe(p) == oracle::mfe(p));
    for (const Expr& p : testing::random_exprs(2000, 35, false, 8)) REQUIRE(mfe(p) == oracle::mfe(p));
    for (const Expr& p : testing::random_exprs(2000, 36, true, 8)) REQUIRE(mfe_u(p) == oracle::mfe(p));
  }

  TEST_CASE("clfe and sfe match truth tables") {
    for (const Expr& p : testing::random_exprs(2000, 37, false, 8)) {
      REQUIRE(clfe(p) == oracle::clfe(p));
      std::vector<Atom> beta{Atom("a"), Atom("b"), Atom("c"), Atom("d")};
      REQUIRE(sfe(AtomString(beta), p) == oracle::sfe(beta, p));
    }
    for (const Expr& p : testing::random_exprs(1000, 38, true, 6)) REQUIRE(clfe_u(p) == oracle::clfe_u(p));
  }

  TEST_CASE("fe paths list the atom occurrences") {
    for (const Expr& p : testing::random_exprs(1000, 39, false, 8)) {
      auto occ = oracle::occurrences(p);
      for (const auto& path : oracle::paths(fe(p))) REQUIRE(path == occ);
    }
  }

  TEST_CASE("memorisation properties") {
    for (const Expr& p : testing::random_exprs(2000, 40, false, 8)) {
      EvalTree m = mfe(p);
      REQUIRE(memo(m) == m);
      REQUIRE_FALSE(has_repeated_atom_on_some_path(m));
      REQUIRE(uniform_path_labels(m) == str_of(p));
    }
  }

  TEST_CASE("U absorption") {
    for (const Expr& p : testing::random_exprs(2000, 41, true, 6)) {
      if (!p.has_u()) continue;
      EvalTree t = fe_u(p);
      REQUIRE(t.leaf_kinds() == LeafSet{Leaf::U});
      REQUIRE(uniform_path_labels(t).has_value());
    }
  }

  TEST_CASE("each logic is a congruence on samples") {
    // Pairs drawn from a small pool so that equivalent pairs actually occur.
    for (const Logic& logic : all_logics()) {
      auto pool = testing::all_exprs(logic.admits_u() ? with_u_leaves() : testing::u_free_leaves_ab(), 2);
      std::unordered_map<EvalTree, std::vector<Expr>> classes;
      for (const Expr& p : pool) classes[evaluate(logic, p)].push_back(p);
      std::vector<std::pair<Expr, Expr>> eq_pairs;
      for (auto& [tree, members] : classes)
        for (std::size_t i = 0; i + 1 < members.size(); ++i) eq_pairs.emplace_back(members[i], members[i + 1]);
      REQUIRE(eq_pairs.size() > 5);
      std::mt19937_64 rng(42);
      for (int n = 0; n < 3000; ++n) {
        auto [p, p2] = eq_pairs[rng() % eq_pairs.size()];
        auto [q, q2] = eq_pairs[rng() % eq_pairs.size()];
        CAPTURE(logic.name());
        CAPTURE(p);
        CAPTURE(q);
        REQUIRE(equiv(logic, !p, !p2).equivalent);
        REQUIRE(equiv(logic, p & q, p2 & q2).equivalent);
        REQUIRE(equiv(logic, p | q, p2 | q2).equivalent);
      }
    }
  }

  TEST_CASE("hierarchy and alphabet stability") {
    auto pool = testing::all_exprs(testing::u_free_leaves_ab(), 2);
    for (std::size_t i = 0; i < pool.size(); ++i)
      for (std::size_t j = 0; j < pool.size(); ++j) {
        const Expr& p = pool[i];
        const Expr& q = pool[j];
        bool f = equiv(Logic::ffel(), p, q).equivalent;
        bool m = equiv(Logic::mfel(), p, q).equivalent;
        bool c = equiv(Logic::clfel2(), p, q).equivalent;
        bool s = equiv(Logic::sfel(), p, q).equivalent;
        REQUIRE((!f || m));
        REQUIRE((!m || c));
        REQUIRE((!c || s));
        REQUIRE(equiv(Logic::sfel(AtomString::parse("a,b,z")), p, q).equivalent == s);
      }
  }
}

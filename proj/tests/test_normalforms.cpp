#include <set>
#include <unordered_map>

#include "doctest.h"
#include "fel/error.hpp"
#include "fel/fnf.hpp"
#include "fel/normalforms.hpp"
#include "fel/semantics.hpp"
#include "support.hpp"

using namespace fel;
using testing::E;

namespace {

AtomString S(const char* text) { return AtomString::parse(text); }
Expr A(const char* name) { return Expr::atom(name); }

bool mfel_eq(const Expr& p, const Expr& q) { return equiv(Logic::mfel(), p, q).equivalent; }

}  // namespace

TEST_SUITE("normalforms") {
  TEST_CASE("h and the special forms") {
    CHECK(h(A("a"), E("T"), E("F")) == E("(a & T) | (!a & F)"));
    CHECK(mfel_eq(h(A("a"), E("T"), E("F")), A("a")));
    CHECK(mfel_eq(h(A("a"), E("F"), E("T")), E("!a")));
    Expr ub = u_sigma(S("b"));
    CHECK(equiv(Logic::mfelu(), h(A("a"), ub, ub), u_sigma(S("a,b"))).equivalent);
    CHECK(f_tilde_sigma(S("a,b")) == E("a & (b & F)"));
    CHECK(f_tilde_sigma({}) == E("F"));
    CHECK(t_sigma(S("a")) == E("(a & T) | (!a & T)"));
    CHECK(t_sigma({}) == E("T"));
    CHECK(f_sigma({}) == E("F"));
    CHECK(mfel_eq(f_tilde_sigma(S("a,b")), f_sigma(S("a,b"))));
    CHECK(mfel_eq(f_tilde_sigma(S("c,a,b")), f_sigma(S("c,a,b"))));
    auto m = match_h(h(A("a"), E("T"), E("b")));
    REQUIRE(m.has_value());
    CHECK(m->atom == Atom("a"));
    CHECK(m->if_true == E("T"));
    CHECK(m->if_false == E("b"));
    CHECK_FALSE(match_h(E("a & T")).has_value());
  }

  TEST_CASE("normalize_mfel examples") {
    SigmaNormalForm a = normalize_mfel(A("a"));
    CHECK(a.sigma == S("a"));
    CHECK(a.body == E("(a & T) | (!a & F)"));
    Expr hb_tf = h(A("b"), E("T"), E("F")), hb_ff = h(A("b"), E("F"), E("F"));
    CHECK(normalize_mfel(E("a & b")).body == h(A("a"), hb_tf, hb_ff));
    SigmaNormalForm t = normalize_mfel(E("T"));
    CHECK(t.sigma.empty());
    CHECK(t.body == E("T"));
    CHECK_THROWS_AS(normalize_mfel(E("U")), PreconditionError);
  }

  TEST_CASE("normalize_mfelu examples") {
    CHECK(normalize_mfelu(E("a | U")).body == E("a & U"));
    CHECK(normalize_mfelu(E("a & b")) == normalize_mfel(E("a & b")));
    CHECK(normalize_mfelu(E("U")).body == E("U"));
    SigmaNormalForm r = normalize_mfelu(E("a & (b & (a & U))"));
    CHECK(r.body == E("a & (b & U)"));
    CHECK(r.sigma == S("a,b"));
  }

  TEST_CASE("normalize_clfel examples") {
    CHECK(normalize_clfel2(E("b & a")) == normalize_clfel2(E("a & b")));
    CHECK(normalize_clfel2(E("(b | a) & b")) == normalize_clfel2(E("(a | T) & b")));
    CHECK(normalize_clfel2(E("b & a")).sigma == S("a,b"));
    CHECK(normalize_clfelu(E("U & a")).body == E("U"));
    CHECK(normalize_clfelu(E("b & a")) == normalize_clfel2(E("b & a")));
    CHECK_THROWS_AS(normalize_clfel2(E("U & a")), PreconditionError);
  }

  TEST_CASE("normal forms are sound, well formed, and unique") {
    std::unordered_map<EvalTree, Expr> m_forms, c_forms;
    for (const Expr& p : testing::all_exprs(testing::u_free_leaves_ab(), 4)) {
      CAPTURE(p);
      SigmaNormalForm m = normalize_mfel(p);
      REQUIRE(m.sigma == str_of(p));
      REQUIRE(is_sigma_normal_form(m.body, m.sigma));
      REQUIRE(mfe(m.body) == mfe(p));
      auto [it, fresh] = m_forms.emplace(mfe(p), m.body);
      REQUIRE(it->second == m.body);

      SigmaNormalForm c = normalize_clfel2(p);
      REQUIRE(c.sigma == sorted_alphabet(p));
      REQUIRE(is_sigma_normal_form(c.body, c.sigma));
      REQUIRE(clfe(c.body) == clfe(p));
      auto [jt, fresh2] = c_forms.emplace(clfe(p), c.body);
      REQUIRE(jt->second == c.body);
    }
  }

  TEST_CASE("U normal forms") {
    for (const Expr& p : testing::random_exprs(1500, 71, true, 6)) {
      SigmaNormalForm m = normalize_mfelu(p);
      REQUIRE(mfe_u(m.body) == mfe_u(p));
      if (p.has_u()) {
        REQUIRE(m.body == u_sigma(m.sigma));
        REQUIRE(m.sigma.repetition_free());
        REQUIRE(normalize_clfelu(p).body == E("U"));
      }
    }
  }

  TEST_CASE("permute_sigma_nf") {
    Expr body = h(A("a"), h(A("b"), E("T"), E("F")), h(A("b"), E("F"), E("T")));
    SigmaNormalForm swapped = permute_sigma_nf({S("a,b"), body}, S("b,a"));
    CHECK(swapped.sigma == S("b,a"));
    CHECK(swapped.body == h(A("b"), h(A("a"), E("T"), E("F")), h(A("a"), E("F"), E("T"))));
    SigmaNormalForm a = normalize_mfel(A("a"));
    CHECK(permute_sigma_nf(a, S("a")) == a);
    Expr body2 = h(A("a"), h(A("b"), E("T"), E("T")), h(A("b"), E("F"), E("F")));
    CHECK(permute_sigma_nf({S("a,b"), body2}, S("b,a")).body ==
          h(A("b"), h(A("a"), E("T"), E("F")), h(A("a"), E("T"), E("F"))));
    CHECK_THROWS_AS(permute_sigma_nf(a, S("b")), PreconditionError);
  }

  TEST_CASE("permutations preserve the static tree") {
    for (const SigmaNormalForm& nf : enumerate_sigma_nf(S("a,b,c"))) {
      for (const char* target : {"c,b,a", "b,c,a", "a,c,b"}) {
        SigmaNormalForm p = permute_sigma_nf(nf, S(target));
        REQUIRE(is_sigma_normal_form(p.body, p.sigma));
        REQUIRE(clfe(p.body) == clfe(nf.body));
      }
    }
  }

  TEST_CASE("enumeration counts and distinctness") {
    std::size_t expected[] = {2, 4, 16, 256};
    const char* sigmas[] = {"", "a", "a,b", "a,b,c"};
    for (int n = 0; n < 4; ++n) {
      auto forms = enumerate_sigma_nf(S(sigmas[n]));
      REQUIRE(forms.size() == expected[n]);
      REQUIRE(count_sigma_nf(S(sigmas[n])) == expected[n]);
      std::unordered_map<EvalTree, int> trees;
      for (const SigmaNormalForm& f : forms) {
        REQUIRE(is_sigma_normal_form(f.body, f.sigma));
        REQUIRE(++trees[mfe(f.body)] == 1);
      }
    }
    CHECK(enumerate_sigma_nf({}).front().body == E("T"));
    CHECK(enumerate_sigma_nf({}).back().body == E("F"));
    CHECK(count_sigma_nf(S("a,b,c,d")) == 65536);
    CHECK_THROWS_AS(enumerate_sigma_nf(S("a,b,c,d,e")), PreconditionError);
    CHECK_THROWS_AS(enumerate_sigma_nf(S("a,a")), PreconditionError);
  }

  TEST_CASE("laws on enumerated forms") {
    for (const char* s : {"", "a", "a,b"}) {
      AtomString sigma = S(s);
      Expr fs = f_sigma(sigma), ts = t_sigma(sigma), us = u_sigma(sigma);
      for (const SigmaNormalForm& nf : enumerate_sigma_nf(sigma)) {
        const Expr& p = nf.body;
        REQUIRE(mfel_eq(p | fs, p));
        REQUIRE(mfel_eq(p & ts, p));
        REQUIRE(mfel_eq(p & E("F"), fs));
        REQUIRE(mfel_eq(p | E("T"), ts));
        REQUIRE(equiv(Logic::mfelu(), p | us, us).equivalent);
        REQUIRE(equiv(Logic::mfelu(), p & E("U"), us).equivalent);
      }
    }
  }

  TEST_CASE("h composition and swap on random instances") {
    auto xs = testing::random_exprs(600, 72, false, 3);
    std::mt19937_64 rng(73);
    auto pick = [&] { return xs[rng() % xs.size()]; };
    for (int i = 0; i < 1500; ++i) {
      Expr x = pick(), y = pick(), z = pick(), u = pick(), v = pick(), w = pick();
      REQUIRE(mfel_eq(h(x, y, z) & w, h(x, (y | (z & E("F"))) & w, z & w)));
      REQUIRE(mfel_eq(h(x, y, z) | w, h(x, (y & (z | E("T"))) | w, z | w)));
      REQUIRE(mfel_eq(!h(x, y, z), h(x, !y, !z)));
      REQUIRE(clfe(h(x, h(y, z, u), h(y, v, w))) == clfe(h(y, h(x, z, v), h(x, u, w))));
    }
  }

  TEST_CASE("read_back") {
    CHECK(read_back(mfe(E("a & b"))) == normalize_mfel(E("a & b")).body);
    CHECK(read_back(testing::leafT()) == E("T"));
  }
}

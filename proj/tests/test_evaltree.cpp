#include <algorithm>

#include "doctest.h"
#include "fel/error.hpp"
#include "fel/evaltree.hpp"
#include "fel/semantics.hpp"
#include "support.hpp"

using namespace fel;
using testing::leafF;
using testing::leafT;
using testing::leafU;
using testing::N;

namespace {

// Random tree over a, b, c with leaves drawn from kinds.
EvalTree random_tree(std::mt19937_64& rng, int depth, const std::vector<Leaf>& kinds) {
  std::uniform_int_distribution<int> coin(0, 2);
  if (depth == 0 || coin(rng) == 0) return EvalTree::leaf(kinds[rng() % kinds.size()]);
  static const char* names[] = {"a", "b", "c"};
  return EvalTree::node(Atom(names[rng() % 3]), random_tree(rng, depth - 1, kinds), random_tree(rng, depth - 1, kinds));
}

std::uint32_t naive_depth(const EvalTree& x) {
  return x.is_leaf() ? 0 : 1 + std::max(naive_depth(x.left()), naive_depth(x.right()));
}

}  // namespace

TEST_SUITE("evaltree") {
  TEST_CASE("replace_leaves examples") {
    EvalTree y = N("b", leafT(), leafF());
    CHECK(replace_leaf(leafT(), Leaf::T, y) == y);
    CHECK(replace_leaves(N("a", leafF(), leafT()), LeafMap().set(Leaf::T, leafF()).set(Leaf::F, leafT())) ==
          N("a", leafT(), leafF()));
    CHECK(replace_leaf(leafF(), Leaf::T, y) == leafF());
    // Simultaneous: the image of T is not rewritten again by F -> T.
    CHECK(replace_leaves(N("a", leafT(), leafF()), LeafMap().set(Leaf::T, leafF()).set(Leaf::F, leafT())) ==
          N("a", leafF(), leafT()));
  }

  TEST_CASE("replacement composes") {
    std::mt19937_64 rng(21);
    std::vector<Leaf> tf{Leaf::T, Leaf::F};
    for (int i = 0; i < 500; ++i) {
      EvalTree x = random_tree(rng, 4, tf), y1 = random_tree(rng, 3, tf), z1 = random_tree(rng, 3, tf),
               y2 = random_tree(rng, 3, tf), z2 = random_tree(rng, 3, tf);
      LeafMap m2 = LeafMap().set(Leaf::T, y2).set(Leaf::F, z2);
      EvalTree lhs = replace_leaves(replace_leaves(x, LeafMap().set(Leaf::T, y1).set(Leaf::F, z1)), m2);
      EvalTree rhs = replace_leaves(x, LeafMap().set(Leaf::T, replace_leaves(y1, m2)).set(Leaf::F, replace_leaves(z1, m2)));
      CHECK(lhs == rhs);
    }
  }

  TEST_CASE("empty map is identity and depth is bounded") {
    std::mt19937_64 rng(22);
    std::vector<Leaf> all{Leaf::T, Leaf::F, Leaf::U, Leaf::D};
    for (int i = 0; i < 500; ++i) {
      EvalTree x = random_tree(rng, 5, all), y = random_tree(rng, 3, all), z = random_tree(rng, 3, all);
      CHECK(replace_leaves(x, LeafMap()) == x);
      EvalTree r = replace_leaves(x, LeafMap().set(Leaf::T, y).set(Leaf::D, z));
      CHECK(depth(r) <= depth(x) + std::max(depth(y), depth(z)));
      CHECK(depth(r) == naive_depth(r));
    }
  }

  TEST_CASE("depth and leaf kinds") {
    CHECK(depth(leafF()) == 0);
    CHECK(depth(N("a", leafT(), leafF())) == 1);
    CHECK(depth(N("b", N("a", leafT(), leafF()), leafF())) == 2);
    CHECK(leaf_kinds(N("a", leafT(), leafT())) == LeafSet{Leaf::T});
    CHECK(leaf_kinds(N("a", leafT(), leafF())) == LeafSet{Leaf::T, Leaf::F});
    CHECK(leaf_kinds(leafU()) == LeafSet{Leaf::U});
    CHECK(N("a", N("b", leafT(), leafF()), leafF()).leaf_count() == 3);
  }

  TEST_CASE("equality is structural") {
    CHECK(N("a", leafT(), leafF()) == N("a", leafT(), leafF()));
    CHECK_FALSE(N("a", leafT(), leafF()) == N("a", leafF(), leafT()));
    CHECK_FALSE(N("a", leafT(), leafF()) == N("b", leafT(), leafF()));
    CHECK_FALSE(leafT() == leafU());
    // Shared and unshared constructions are indistinguishable.
    EvalTree s = N("b", leafT(), leafF());
    EvalTree shared = N("a", s, s);
    EvalTree plain = N("a", N("b", leafT(), leafF()), N("b", leafT(), leafF()));
    CHECK(shared == plain);
    CHECK(shared.hash() == plain.hash());
  }

  TEST_CASE("json rendering") {
    CHECK(render(leafT(), TreeFormat::Json) == R"({"leaf":"T"})");
    CHECK(render(N("a", leafT(), leafF()), TreeFormat::Json) ==
          R"({"atom":"a","left":{"leaf":"T"},"right":{"leaf":"F"}})");
    CHECK(tree_from_json(R"({"atom":"a","left":{"leaf":"T"},"right":{"leaf":"U"}})") == N("a", leafT(), leafU()));
    CHECK_THROWS_AS(tree_from_json(R"({"leaf":"X"})"), PreconditionError);
    CHECK_THROWS_AS(tree_from_json(R"({"atom":"a","left":{"leaf":"T"}})"), PreconditionError);
    CHECK_THROWS(tree_from_json("not json"));
  }

  TEST_CASE("json round trip") {
    std::mt19937_64 rng(23);
    std::vector<Leaf> all{Leaf::T, Leaf::F, Leaf::U, Leaf::D, Leaf::D1, Leaf::D2};
    for (int i = 0; i < 500; ++i) {
      EvalTree x = random_tree(rng, 6, all);
      CHECK(tree_from_json(render(x, TreeFormat::Json)) == x);
    }
  }

  TEST_CASE("dot rendering") {
    std::string dot = render(N("a", leafT(), leafF()), TreeFormat::Dot);
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(std::count(dot.begin(), dot.end(), '\n') == 7);
    CHECK(dot.find("n0 -> n1 [label=\"L\"]") != std::string::npos);
    CHECK(dot.find("n0 -> n2 [label=\"R\"]") != std::string::npos);
    std::string with_u = render(N("a", leafT(), leafF()), TreeFormat::Dot, RenderOptions{true});
    CHECK(with_u.find("[label=\"M\"]") != std::string::npos);
  }

  TEST_CASE("renderings are injective on samples") {
    std::mt19937_64 rng(24);
    std::vector<Leaf> all{Leaf::T, Leaf::F, Leaf::U};
    std::vector<EvalTree> trees;
    for (int i = 0; i < 300; ++i) trees.push_back(random_tree(rng, 4, all));
    for (std::size_t i = 0; i < trees.size(); ++i)
      for (std::size_t j = i + 1; j < trees.size(); ++j)
        for (TreeFormat f : {TreeFormat::Ascii, TreeFormat::Dot, TreeFormat::Json})
          CHECK((render(trees[i], f) == render(trees[j], f)) == (trees[i] == trees[j]));
  }

  TEST_CASE("ascii rendering") {
    CHECK(render(N("a", leafT(), leafF()), TreeFormat::Ascii) == "a\n  L: T\n  R: F\n");
    CHECK(render(N("a", leafT(), leafF()), TreeFormat::Ascii, RenderOptions{true}) == "a\n  L: T\n  M: U\n  R: F\n");
  }

  TEST_CASE("path helpers") {
    EvalTree perfect = N("a", N("b", leafT(), leafF()), N("b", leafF(), leafF()));
    CHECK(uniform_path_labels(perfect) == AtomString{Atom("a"), Atom("b")});
    CHECK_FALSE(uniform_path_labels(N("a", N("b", leafT(), leafF()), leafF())).has_value());
    CHECK(uniform_path_labels(leafT()) == AtomString{});
    CHECK(has_repeated_atom_on_some_path(N("a", N("a", leafT(), leafF()), leafF())));
    CHECK_FALSE(has_repeated_atom_on_some_path(perfect));
  }

  TEST_CASE("leaf names") {
    for (Leaf k : {Leaf::T, Leaf::F, Leaf::U, Leaf::D, Leaf::D1, Leaf::D2}) CHECK(leaf_from_name(leaf_name(k)) == k);
    CHECK_FALSE(leaf_from_name("Q").has_value());
  }
}

#pragma once

#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "fel/evaltree.hpp"
#include "fel/expr.hpp"
#include "fel/generate.hpp"

namespace testing {

inline fel::Expr E(const char* text) { return fel::parse(text); }

inline fel::EvalTree L(fel::Leaf k) { return fel::EvalTree::leaf(k); }
inline fel::EvalTree leafT() { return L(fel::Leaf::T); }
inline fel::EvalTree leafF() { return L(fel::Leaf::F); }
inline fel::EvalTree leafU() { return L(fel::Leaf::U); }

inline fel::EvalTree N(const char* atom, fel::EvalTree left, fel::EvalTree right) {
  return fel::EvalTree::node(fel::Atom(atom), std::move(left), std::move(right));
}

inline std::string json(const fel::EvalTree& t) { return fel::render(t, fel::TreeFormat::Json); }

// Random expressions over a, b, c with a fixed seed per call site.
inline std::vector<fel::Expr> random_exprs(std::size_t n, std::uint64_t seed, bool allow_u = false,
                                           unsigned max_connectives = 6) {
  std::mt19937_64 rng(seed);
  fel::GenOptions opts{fel::atoms_named({"a", "b", "c"}), max_connectives, allow_u};
  std::vector<fel::Expr> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(fel::random_expr(rng, opts));
  return out;
}

// Every expression over the leaves with at most max_connectives connectives.
inline std::vector<fel::Expr> all_exprs(const std::vector<fel::Expr>& leaves, unsigned max_connectives) {
  std::vector<fel::Expr> out;
  for (auto& level : fel::exprs_by_connectives(leaves, max_connectives)) out.insert(out.end(), level.begin(), level.end());
  return out;
}

inline std::vector<fel::Expr> u_free_leaves_ab() { return {E("a"), E("b"), E("T"), E("F")}; }

}  // namespace testing

namespace doctest {
template <>
struct StringMaker<fel::Expr> {
  static String convert(const fel::Expr& e) { return fel::print(e).c_str(); }
};
template <>
struct StringMaker<fel::EvalTree> {
  static String convert(const fel::EvalTree& t) { return testing::json(t).c_str(); }
};
template <>
struct StringMaker<fel::AtomString> {
  static String convert(const fel::AtomString& s) { return ("[" + s.to_string() + "]").c_str(); }
};
}  // namespace doctest

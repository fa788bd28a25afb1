#pragma once

#include <random>
#include <vector>

#include "fel/atom.hpp"
#include "fel/expr.hpp"

namespace fel {

struct GenOptions {
  std::vector<Atom> atoms;
  unsigned max_connectives = 6;
  bool allow_u = false;
};

// Connective count uniform in [0, max_connectives]; shape, operators and
// leaves uniform at each step.
Expr random_expr(std::mt19937_64& rng, const GenOptions& opts);

// result[n] holds every expression with exactly n connectives built from the
// given leaves.
std::vector<std::vector<Expr>> exprs_by_connectives(const std::vector<Expr>& leaves, unsigned max_connectives);

// Every normal-form term of FFEL over the atoms with at most max_size nodes.
std::vector<Expr> enumerate_fnf(const std::vector<Atom>& atoms, unsigned max_size);

std::vector<Atom> atoms_named(std::initializer_list<const char*> names);

}  // namespace fel

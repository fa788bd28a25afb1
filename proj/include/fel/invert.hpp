#pragma once

#include <vector>

#include "fel/evaltree.hpp"
#include "fel/expr.hpp"

namespace fel {

struct Decomposition {
  EvalTree context;  // placeholder leaves D, or D1 and D2
  EvalTree core;

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

// context[D1 -> core, D2 -> core[T -> F]]
EvalTree reassemble_conjunction(const Decomposition& d);
// context[D1 -> core[F -> T], D2 -> core]
EvalTree reassemble_disjunction(const Decomposition& d);
// context[D -> core]
EvalTree reassemble_tstar(const Decomposition& d);

// All candidate decompositions, one per distinct core, in preorder of the
// core's first occurrence.
std::vector<Decomposition> find_ccd(const EvalTree& x);
std::vector<Decomposition> find_cdd(const EvalTree& x);

// The candidate with minimal core depth. NoDecomposition when there is none,
// NotInImage when the minimum is not unique.
Decomposition cd(const EvalTree& x);
Decomposition dd(const EvalTree& x);
Decomposition tsd(const EvalTree& x);

// True when x = V[D -> W] for some V != D that contains D and no T or F.
bool has_nontrivial_decomposition(const EvalTree& x);

Expr g_t(const EvalTree& x);
Expr g_f(const EvalTree& x);
Expr g_ell(const EvalTree& x);
Expr g_star(const EvalTree& x);
// Inverse of fe on images of normal forms; NotInImage elsewhere.
Expr g(const EvalTree& x);

}  // namespace fel

#pragma once

#include <string_view>

#include "fel/atom.hpp"
#include "fel/expr.hpp"

namespace fel {

// Grammar of normal forms for FFEL:
//   fnf   ::= tterm | fterm | tterm & star
//   star  ::= conj | disj
//   conj  ::= lterm | star & disj
//   disj  ::= lterm | star "|" conj
//   lterm ::= a & tterm | !a & tterm
//   tterm ::= T | a "|" tterm
//   fterm ::= F | a & fterm
enum class FnfCategory { TTerm, FTerm, LTerm, StarConj, StarDisj, TStarTerm, NotFnf };

std::string_view category_name(FnfCategory c) noexcept;

FnfCategory classify(const Expr& e);
// TTerm, FTerm or TStarTerm.
bool is_fnf(const Expr& e);
bool is_star_term(const Expr& e);

Expr fnf_negate(const Expr& e);
Expr fnf_and(const Expr& p, const Expr& q);
Expr normalize_ffel(const Expr& p);

// a1 & (a2 & ... & U)
Expr u_sigma(const AtomString& sigma);
Expr normalize_ffelu(const Expr& p);

}  // namespace fel
